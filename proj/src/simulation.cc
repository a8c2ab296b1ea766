// Copyright 2026 The ldpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpd/simulation.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <spdlog/spdlog.h>

#include "ldpd/errors.h"
#include "ldpd/format.h"
#include "ldpd/kde.h"
#include "ldpd/pde.h"
#include "ldpd/privacy.h"
#include "ldpd/random.h"

namespace ldpd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string EstimatorLabel(const ExperimentGrid& grid) {
  std::string label = grid.estimator == EstimatorKind::kKde ? "kde" : "pde";
  switch (grid.tuning) {
    case TuningMode::kFixed: label += "-fixed"; break;
    case TuningMode::kOracle: label += "-oracle"; break;
    case TuningMode::kAdaptive: label += "-adaptive"; break;
  }
  if (!grid.private_release) label += "-nonprivate";
  return label;
}

struct CellPlan {
  std::size_t index = 0;
  std::size_t n = 0;
  double alpha = kNaN;
  // Fixed bandwidth or dimension; NaN until resolved for oracle cells.
  double tuning = kNaN;
};

std::vector<CellPlan> PlanCells(const ExperimentGrid& grid) {
  std::vector<double> alphas = grid.alphas;
  if (!grid.private_release) alphas = {kNaN};
  std::vector<double> tunings = {kNaN};
  if (grid.tuning == TuningMode::kFixed) tunings = grid.tuning_values;
  std::vector<CellPlan> plan;
  for (double alpha : alphas) {
    for (std::size_t n : grid.ns) {
      for (double tuning : tunings) {
        plan.push_back({plan.size(), n, alpha, tuning});
      }
    }
  }
  return plan;
}

double OracleTuning(const ExperimentGrid& grid, std::size_t n, double alpha) {
  const double beta = grid.density.smoothness_beta();
  const double nn = static_cast<double>(n);
  if (grid.estimator == EstimatorKind::kKde) {
    if (grid.private_release) return KdeOracleBandwidth(beta, nn, alpha);
    return std::min(std::pow(nn, -1.0 / (2.0 * beta + 1.0)),
                    std::nextafter(1.0, 0.0));
  }
  if (grid.private_release) {
    return static_cast<double>(PdeOracleDimension(beta, nn, alpha));
  }
  return std::max(1.0, std::round(std::pow(nn, 1.0 / (2.0 * beta + 1.0))));
}

TuningCollection BuildCollection(const ExperimentGrid& grid, std::size_t n) {
  const CollectionSpec& spec = grid.collection;
  const bool kde = grid.estimator == EstimatorKind::kKde;
  switch (spec.type) {
    case CollectionSpec::Type::kHarmonic: return TuningCollection::Harmonic(n);
    case CollectionSpec::Type::kDyadic: return TuningCollection::Dyadic(n);
    case CollectionSpec::Type::kAll: return TuningCollection::AllDimensions(n);
    case CollectionSpec::Type::kExplicit: break;
  }
  if (kde) return TuningCollection::Bandwidths(spec.values, n);
  std::vector<std::size_t> dims;
  for (double v : spec.values) dims.push_back(static_cast<std::size_t>(v));
  return TuningCollection::Dimensions(std::move(dims), n);
}

LocalStatistic BuildStatistic(const ExperimentGrid& grid, std::size_t d_max) {
  if (grid.estimator == EstimatorKind::kKde) return LocalStatistic(grid.kernel, grid.t);
  return LocalStatistic(Basis(grid.basis, d_max), grid.t);
}

struct Replicate {
  double error = 0.0;
  double nonprivate_error = 0.0;
  double chosen = 0.0;
  std::vector<double> v_hats;
  std::optional<SelectorTrace> trace;
};

// Everything a worker needs to run one replication of one cell.
struct CellContext {
  const ExperimentGrid* grid = nullptr;
  CellPlan plan;
  double target = 0.0;
  std::optional<KdeConfig> kde;
  std::optional<PdeConfig> pde;
  std::optional<TuningCollection> coll;
  std::optional<LocalStatistic> stat;
};

Replicate RunReplication(const CellContext& ctx, std::size_t r,
                         std::vector<double>& xs, std::vector<PrivateRelease>& zs) {
  const ExperimentGrid& grid = *ctx.grid;
  Rng rng(StreamSeed(grid.seed, ctx.plan.index, r));
  xs.resize(ctx.plan.n);
  grid.density.SampleInto(xs, rng);
  Replicate out;

  if (ctx.coll) {
    const ReleaseMatrix matrix = ReleaseAll(xs, *ctx.coll, *ctx.stat, ctx.plan.alpha, rng);
    SelectorTrace trace = Select(matrix, *ctx.coll, *ctx.stat, grid.constants);
    out.error = trace.estimate() - ctx.target;
    out.nonprivate_error = kNaN;
    out.chosen = trace.chosen_value();
    for (const TraceEntry& e : trace.entries) out.v_hats.push_back(e.v_hat);
    if (r < grid.traces_per_cell) out.trace = std::move(trace);
    return out;
  }

  double clean = 0.0;
  if (ctx.kde) {
    for (double x : xs) clean += KdeStatistic(*ctx.kde, x);
  } else {
    for (double x : xs) clean += PdeStatistic(*ctx.pde, x);
  }
  clean /= static_cast<double>(xs.size());
  out.nonprivate_error = clean - ctx.target;
  out.chosen = ctx.plan.tuning;
  if (!grid.private_release) {
    out.error = out.nonprivate_error;
    return out;
  }
  zs.clear();
  for (double x : xs) {
    zs.push_back(ctx.kde ? KdeRelease(x, *ctx.kde, rng) : PdeRelease(x, *ctx.pde, rng));
  }
  out.error = (ctx.kde ? KdePrivate(zs) : PdePrivate(zs)) - ctx.target;
  return out;
}

std::vector<Replicate> RunCell(const CellContext& ctx, std::size_t reps,
                               std::size_t jobs) {
  std::vector<Replicate> results(reps);
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, reps));
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::size_t> failed_at(workers, 0);
  auto work = [&](std::size_t w) {
    std::vector<double> xs;
    std::vector<PrivateRelease> zs;
    for (std::size_t r = w; r < reps; r += workers) {
      try {
        results[r] = RunReplication(ctx, r, xs, zs);
      } catch (...) {
        failures[w] = std::current_exception();
        failed_at[w] = r;
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (std::thread& th : threads) th.join();
  }
  for (std::size_t w = 0; w < workers; ++w) {
    if (!failures[w]) continue;
    std::ostringstream msg;
    msg << "cell " << ctx.plan.index << " (n = " << ctx.plan.n
        << ", alpha = " << ctx.plan.alpha << ") aborted at replication "
        << failed_at[w] << ": ";
    try {
      std::rethrow_exception(failures[w]);
    } catch (const std::exception& e) {
      msg << e.what();
    }
    throw SimulationError(msg.str());
  }
  return results;
}

struct Moments {
  double mean = 0.0;
  double mse = 0.0;
  double var = 0.0;
  double se_of_square = 0.0;
};

Moments Summarize(const std::vector<double>& errors) {
  Moments m;
  const double r = static_cast<double>(errors.size());
  for (double e : errors) {
    m.mean += e;
    m.mse += e * e;
  }
  m.mean /= r;
  m.mse /= r;
  double centred = 0.0, sq_dev = 0.0;
  for (double e : errors) {
    centred += (e - m.mean) * (e - m.mean);
    sq_dev += (e * e - m.mse) * (e * e - m.mse);
  }
  m.var = centred / r;
  m.se_of_square = errors.size() > 1 ? std::sqrt(sq_dev / (r - 1.0) / r) : 0.0;
  return m;
}

CellResult RunPlannedCell(const ExperimentGrid& grid, const CellPlan& planned,
                          const RunOptions& options) {
  CellPlan plan = planned;
  CellContext ctx;
  ctx.grid = &grid;
  ctx.target = grid.density(grid.t);
  const double nn = static_cast<double>(plan.n);
  const TestDensity& f = grid.density;

  CellResult cell;
  cell.cell = plan.index;
  cell.density = f.name();
  cell.estimator = EstimatorLabel(grid);
  cell.n = plan.n;
  cell.alpha = plan.alpha;
  cell.replications = grid.replications;

  double bound = 0.0;
  if (grid.tuning == TuningMode::kAdaptive) {
    ctx.coll = BuildCollection(grid, plan.n);
    const std::size_t d_max =
        ctx.coll->kind() == CollectionKind::kDimensions
            ? std::max(plan.n, ctx.coll->dimensions().back())
            : plan.n;
    ctx.stat = BuildStatistic(grid, d_max);
    const double c = grid.oracle_constant >= 0.0 ? grid.oracle_constant
                                                 : DefaultOracleConstant(*ctx.stat);
    const OracleRhs rhs =
        ComputeOracleRhs(f, *ctx.coll, plan.alpha, *ctx.stat, c, grid.constants);
    bound = rhs.value;
    cell.collection = ctx.coll->values();
    for (const VarianceTerms& v : rhs.variance) cell.v_theory.push_back(v.total);
  } else {
    if (grid.tuning == TuningMode::kOracle) {
      plan.tuning = OracleTuning(grid, plan.n, plan.alpha);
    }
    const PrivacyBudget budget(grid.private_release ? plan.alpha : 0.5);
    if (grid.estimator == EstimatorKind::kKde) {
      ctx.kde = KdeConfig{grid.t, plan.tuning, grid.kernel, budget};
      ctx.kde->Validate();
      if (grid.private_release) {
        bound = KdeRiskBound(f, *ctx.kde, plan.n);
        cell.noise_scale_b = SensitivityKde(grid.kernel, plan.tuning) / plan.alpha;
      } else {
        const double bias = SmoothedValue(f, grid.kernel, plan.tuning, grid.t) - ctx.target;
        bound = bias * bias + f.sup_norm() * grid.kernel.l2_norm_sq() / (nn * plan.tuning);
      }
    } else {
      const auto d = static_cast<std::size_t>(plan.tuning);
      ctx.pde = PdeConfig{grid.t, d, Basis(grid.basis, std::max(plan.n, d)), budget};
      ctx.pde->Validate();
      if (grid.private_release) {
        bound = PdeRiskBound(f, *ctx.pde, plan.n);
        cell.noise_scale_b = SensitivityPde(ctx.pde->basis, d) / plan.alpha;
      } else {
        const double bias = ProjectedValue(f, ctx.pde->basis, d, grid.t) - ctx.target;
        bound = bias * bias + f.sup_norm() * ctx.pde->basis.phi0() * static_cast<double>(d) / nn;
      }
    }
  }
  ctx.plan = plan;
  cell.bound = bound;

  const std::vector<Replicate> reps = RunCell(ctx, grid.replications, options.jobs);
  std::vector<double> errors, clean_errors;
  double chosen_sum = 0.0;
  for (const Replicate& rep : reps) {
    errors.push_back(rep.error);
    clean_errors.push_back(rep.nonprivate_error);
    chosen_sum += rep.chosen;
  }
  const Moments m = Summarize(errors);
  cell.mse = m.mse;
  cell.se = m.se_of_square;
  cell.bias2 = m.mean * m.mean;
  cell.var = m.var;
  cell.tuning = grid.tuning == TuningMode::kAdaptive
                    ? chosen_sum / static_cast<double>(reps.size())
                    : plan.tuning;
  if (grid.tuning == TuningMode::kAdaptive) {
    cell.nonprivate_mse = kNaN;
    cell.nonprivate_var = kNaN;
    const std::size_t m_coll = cell.collection.size();
    for (std::size_t v = 0; v < m_coll; ++v) {
      std::vector<double> column;
      for (const Replicate& rep : reps) column.push_back(rep.v_hats[v]);
      double mean = std::accumulate(column.begin(), column.end(), 0.0) /
                    static_cast<double>(column.size());
      double ss = 0.0;
      for (double x : column) ss += (x - mean) * (x - mean);
      const double r = static_cast<double>(column.size());
      cell.mean_v_hat.push_back(mean);
      cell.se_v_hat.push_back(std::sqrt(ss / (r - 1.0) / r));
    }
    for (const Replicate& rep : reps) {
      if (rep.trace) cell.traces.push_back(*rep.trace);
    }
    for (SelectorTrace& trace : cell.traces) trace.oracle_rhs = bound;
  } else {
    const Moments clean = Summarize(clean_errors);
    cell.nonprivate_mse = clean.mse;
    cell.nonprivate_var = clean.var;
  }
  return cell;
}

}  // namespace

double DefaultOracleConstant(const LocalStatistic& stat) {
  // Calibration output: data/oracle_constant_calibration.csv. Every reference
  // cell already satisfied the bound with C = 0.
  (void)stat;
  return 0.0;
}

void ExperimentGrid::Validate() const {
  if (replications < 100) throw ConfigError("replications", "must be at least 100");
  if (ns.empty()) throw ConfigError("n", "at least one sample size is required");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::string key = "n[" + std::to_string(i) + "]";
    if (ns[i] < 2) throw ConfigError(key, "sample sizes must be at least 2");
    if (i > 0 && ns[i] <= ns[i - 1]) {
      throw ConfigError(key, "sample sizes must be strictly increasing");
    }
  }
  if (private_release) {
    if (alphas.empty()) throw ConfigError("alpha", "at least one privacy level is required");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) {
        throw ConfigError("alpha[" + std::to_string(i) + "]",
                          "privacy level alpha must lie in (0, 1), got " +
                              FormatDouble(alphas[i]));
      }
    }
  } else if (tuning == TuningMode::kAdaptive) {
    throw ConfigError("estimator.private", "adaptive selection needs private releases");
  }
  if (!std::isfinite(t)) throw ConfigError("t", "must be finite");
  if (estimator == EstimatorKind::kPde) {
    if (!density.supported_on_unit_interval()) {
      throw ConfigError("density", "projection estimators need a density on [0, 1]");
    }
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t", "must lie in [0, 1] for pde");
  }
  if (tuning == TuningMode::kFixed) {
    if (tuning_values.empty()) {
      throw ConfigError("estimator.values", "fixed tuning needs at least one value");
    }
    for (std::size_t i = 0; i < tuning_values.size(); ++i) {
      const double v = tuning_values[i];
      const std::string key = "estimator.values[" + std::to_string(i) + "]";
      if (estimator == EstimatorKind::kKde && !(v > 0.0 && v <= 1.0)) {
        throw ConfigError(key, "bandwidth must lie in (0, 1]");
      }
      if (estimator == EstimatorKind::kPde && !(v >= 1.0 && v == std::floor(v))) {
        throw ConfigError(key, "dimension must be a positive integer");
      }
    }
  }
  if (tuning == TuningMode::kAdaptive) {
    const bool kde = estimator == EstimatorKind::kKde;
    switch (collection.type) {
      case CollectionSpec::Type::kHarmonic:
      case CollectionSpec::Type::kDyadic:
        if (!kde) throw ConfigError("estimator.collection.type", "bandwidth collections need kde");
        break;
      case CollectionSpec::Type::kAll:
        if (kde) throw ConfigError("estimator.collection.type", "dimension collections need pde");
        break;
      case CollectionSpec::Type::kExplicit:
        if (collection.values.empty()) {
          throw ConfigError("estimator.collection.values", "must not be empty");
        }
        for (double v : collection.values) {
          if (!kde && !(v >= 1.0 && v == std::floor(v))) {
            throw ConfigError("estimator.collection.values",
                              "dimensions must be positive integers");
          }
          if (kde && !(v > 0.0 && v < 1.0)) {
            throw ConfigError("estimator.collection.values",
                              "bandwidths must lie in (0, 1)");
          }
        }
        break;
    }
    if (!(constants.c1 > 0.0 && constants.c2 > 0.0 && constants.scale > 0.0)) {
      throw ConfigError("selector", "c1, c2 and scale must be positive");
    }
  }
}

RiskReport McRisk(const ExperimentGrid& grid, const RunOptions& options) {
  grid.Validate();
  RiskReport report;
  for (const CellPlan& plan : PlanCells(grid)) {
    spdlog::debug("cell {}: n = {}, alpha = {}", plan.index, plan.n, plan.alpha);
    report.cells.push_back(RunPlannedCell(grid, plan, options));
  }

  if (grid.tuning == TuningMode::kFixed) return report;
  const double beta = grid.density.smoothness_beta();
  const double theory = grid.private_release ? -2.0 * beta / (2.0 * beta + 2.0)
                                             : -2.0 * beta / (2.0 * beta + 1.0);
  std::vector<double> alphas;
  for (const CellResult& c : report.cells) {
    if (std::find_if(alphas.begin(), alphas.end(), [&](double a) {
          return a == c.alpha || (std::isnan(a) && std::isnan(c.alpha));
        }) == alphas.end()) {
      alphas.push_back(c.alpha);
    }
  }
  for (double alpha : alphas) {
    std::vector<double> ns, mses;
    for (const CellResult& c : report.cells) {
      if (c.alpha == alpha || (std::isnan(alpha) && std::isnan(c.alpha))) {
        ns.push_back(static_cast<double>(c.n));
        mses.push_back(c.mse);
      }
    }
    if (ns.size() < 4) continue;
    RateFit fit = FitRate(ns, mses);
    fit.series = EstimatorLabel(grid);
    if (grid.private_release) fit.series += ":alpha=" + FormatDouble(alpha);
    fit.theory_slope = theory;
    report.rates.push_back(fit);
  }
  return report;
}

RateFit FitRate(std::span<const double> ns, std::span<const double> mses) {
  if (ns.size() != mses.size()) throw DomainError("ns and mses differ in length");
  if (ns.size() < 4) throw DomainError("rate fits need at least 4 points");
  const std::size_t k = ns.size();
  std::vector<double> x(k), y(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(ns[i] > 0.0)) throw DomainError("sample sizes must be positive");
    if (!(mses[i] > 0.0)) throw DomainError("rate fits need positive mses");
    x[i] = std::log(ns[i]);
    y[i] = std::log(mses[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(k);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(k);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("rate fits need distinct sample sizes");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  const double dof = static_cast<double>(k - 2);
  const double se = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(dist, 0.975);
  fit.ci_lo = fit.slope - q * se;
  fit.ci_hi = fit.slope + q * se;
  fit.theory_slope = kNaN;
  return fit;
}

void WriteRiskCsv(std::ostream& out, const RiskReport& report) {
  out << "density,estimator,n,alpha,tuning,mse,se,bound,bias2,var\n";
  for (const CellResult& c : report.cells) {
    out << c.density << ',' << c.estimator << ',' << c.n << ','
        << FormatDouble(c.alpha) << ',' << FormatDouble(c.tuning) << ','
        << FormatDouble(c.mse) << ',' << FormatDouble(c.se) << ','
        << FormatDouble(c.bound) << ',' << FormatDouble(c.bias2) << ','
        << FormatDouble(c.var) << '\n';
  }
}

void WriteRateCsv(std::ostream& out, const RiskReport& report) {
  out << "series,slope,ci_lo,ci_hi,theory_slope\n";
  for (const RateFit& r : report.rates) {
    out << r.series << ',' << FormatDouble(r.slope) << ',' << FormatDouble(r.ci_lo)
        << ',' << FormatDouble(r.ci_hi) << ',' << FormatDouble(r.theory_slope)
        << '\n';
  }
}

void WriteTracesCsv(std::ostream& out, const RiskReport& report) {
  out << "cell,n,alpha,trace,value,estimate,sigma_hat_sq,v_hat,a_hat,chosen\n";
  for (const CellResult& c : report.cells) {
    for (std::size_t k = 0; k < c.traces.size(); ++k) {
      std::ostringstream body;
      WriteTraceCsv(body, c.traces[k], /*header=*/false);
      std::istringstream lines(body.str());
      std::string line;
      while (std::getline(lines, line)) {
        out << c.cell << ',' << c.n << ',' << FormatDouble(c.alpha) << ',' << k
            << ',' << line << '\n';
      }
    }
  }
}

std::vector<CalibrationRow> CalibrateOracleConstant(
    std::span<const ExperimentGrid> grids, const RunOptions& options) {
  std::vector<CalibrationRow> rows;
  for (const ExperimentGrid& source : grids) {
    if (source.tuning != TuningMode::kAdaptive) {
      throw ConfigError("estimator.tuning", "calibration needs adaptive grids");
    }
    ExperimentGrid grid = source;
    grid.oracle_constant = 0.0;
    const RiskReport report = McRisk(grid, options);
    for (const CellResult& c : report.cells) {
      const TuningCollection coll = BuildCollection(grid, c.n);
      const std::size_t d_max = coll.kind() == CollectionKind::kDimensions
                                    ? std::max(c.n, coll.dimensions().back())
                                    : c.n;
      const LocalStatistic stat = BuildStatistic(grid, d_max);
      CalibrationRow row;
      row.density = c.density;
      row.estimator = c.estimator + "/" +
                      (stat.is_kernel() ? std::string(grid.kernel.name())
                                        : std::string(Basis(grid.basis, 1).name()));
      row.n = c.n;
      row.alpha = c.alpha;
      row.mse = c.mse;
      row.se = c.se;
      row.rhs_without_c = c.bound;
      const double excess = c.mse + 3.0 * c.se - c.bound;
      const double nn = static_cast<double>(c.n);
      row.required_c =
          std::max(0.0, excess) * nn * c.alpha * c.alpha / stat.ConstantFactor();
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ExperimentGrid> CalibrationReferenceGrids(std::size_t replications,
                                                      std::uint64_t seed) {
  const std::vector<TestDensity> densities = {
      TestDensity::Uniform(),
      TestDensity(Triangular{0.0, 0.5, 1.0}),
      TestDensity(BetaMixture{{0.5, 0.5}, {2.0, 5.0}, {5.0, 2.0}}),
  };
  std::vector<ExperimentGrid> grids;
  auto base = [&](const TestDensity& f) {
    ExperimentGrid g;
    g.density = f;
    g.tuning = TuningMode::kAdaptive;
    g.ns = {200, 1000};
    g.alphas = {0.5, 0.9};
    g.replications = replications;
    g.seed = seed + grids.size();
    g.oracle_constant = 0.0;
    g.traces_per_cell = 0;
    return g;
  };
  for (const TestDensity& f : densities) {
    for (KernelFamily k : {KernelFamily::kRectangular, KernelFamily::kTriangular,
                           KernelFamily::kEpanechnikov}) {
      ExperimentGrid g = base(f);
      g.estimator = EstimatorKind::kKde;
      g.kernel = Kernel(k);
      g.collection.type = CollectionSpec::Type::kDyadic;
      grids.push_back(g);
    }
    for (BasisFamily b : {BasisFamily::kTrigonometric, BasisFamily::kHistogram}) {
      ExperimentGrid g = base(f);
      g.estimator = EstimatorKind::kPde;
      g.basis = b;
      g.collection = {CollectionSpec::Type::kExplicit, {1, 2, 4, 8, 16}};
      grids.push_back(g);
    }
  }
  return grids;
}

void WriteCalibrationCsv(std::ostream& out, std::span<const CalibrationRow> rows) {
  out << "density,estimator,n,alpha,mse,se,rhs_without_c,required_c\n";
  for (const CalibrationRow& r : rows) {
    out << r.density << ',' << r.estimator << ',' << r.n << ','
        << FormatDouble(r.alpha) << ',' << FormatDouble(r.mse) << ','
        << FormatDouble(r.se) << ',' << FormatDouble(r.rhs_without_c) << ','
        << FormatDouble(r.required_c) << '\n';
  }
}

}  // namespace ldpd
