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

#include "ldpd/adaptive.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <spdlog/spdlog.h>

#include "ldpd/errors.h"
#include "ldpd/format.h"
#include "ldpd/kde.h"
#include "ldpd/pde.h"

namespace ldpd {
namespace {

double SizeThreshold(std::size_t n) {
  return std::max(std::log(static_cast<double>(n)), 1.0);
}

bool BandwidthOk(double h, std::size_t n) {
  return h > 0.0 && h < 1.0 && static_cast<double>(n) * h >= SizeThreshold(n);
}

bool DimensionOk(double d, std::size_t n) {
  return d >= 1.0 && static_cast<double>(n) / d >= SizeThreshold(n);
}

std::string Describe(const std::vector<double>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ", ";
    out << values[i];
  }
  return out.str();
}

std::vector<double> Screen(std::vector<double> values, std::size_t n,
                           CollectionKind kind, TuningCollection::Policy policy) {
  if (n == 0) throw ConfigError("collection", "sample size must be positive");
  const auto ok = kind == CollectionKind::kBandwidths ? BandwidthOk : DimensionOk;
  if (kind == CollectionKind::kBandwidths) {
    std::sort(values.begin(), values.end(), std::greater<>());
  } else {
    std::sort(values.begin(), values.end());
  }
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> kept;
  std::vector<double> dropped;
  for (double v : values) (ok(v, n) ? kept : dropped).push_back(v);
  if (kept.size() > n) {
    dropped.insert(dropped.end(), kept.begin() + static_cast<std::ptrdiff_t>(n),
                   kept.end());
    kept.resize(n);
  }
  const char* what = kind == CollectionKind::kBandwidths ? "bandwidth" : "dimension";
  if (!dropped.empty()) {
    std::ostringstream msg;
    msg << what << " collection for n = " << n << " violates |coll| <= n or the "
        << "size constraint (threshold " << SizeThreshold(n) << "): "
        << Describe(dropped);
    if (policy == TuningCollection::Policy::kStrict) {
      throw ConfigError("collection", msg.str());
    }
    spdlog::warn("{}; dropped", msg.str());
  }
  if (kept.empty()) {
    throw ConfigError("collection", std::string("no admissible ") + what +
                                        " remains for n = " + std::to_string(n));
  }
  return kept;
}

}  // namespace

TuningCollection::TuningCollection(CollectionKind kind,
                                   std::vector<double> values, std::size_t n)
    : kind_(kind), values_(std::move(values)), n_(n) {
  if (kind_ == CollectionKind::kDimensions) {
    for (double v : values_) dimensions_.push_back(static_cast<std::size_t>(v));
  }
}

TuningCollection TuningCollection::Bandwidths(std::vector<double> values,
                                              std::size_t n, Policy policy) {
  return TuningCollection(
      CollectionKind::kBandwidths,
      Screen(std::move(values), n, CollectionKind::kBandwidths, policy), n);
}

TuningCollection TuningCollection::Dimensions(std::vector<std::size_t> values,
                                              std::size_t n, Policy policy) {
  std::vector<double> as_double(values.begin(), values.end());
  return TuningCollection(
      CollectionKind::kDimensions,
      Screen(std::move(as_double), n, CollectionKind::kDimensions, policy), n);
}

TuningCollection TuningCollection::Harmonic(std::size_t n) {
  std::vector<double> values;
  for (std::size_t k = 2; k <= n; ++k) {
    const double h = 1.0 / static_cast<double>(k);
    if (!BandwidthOk(h, n)) break;
    values.push_back(h);
  }
  return Bandwidths(std::move(values), n);
}

TuningCollection TuningCollection::Dyadic(std::size_t n) {
  std::vector<double> values;
  for (double h = 0.5; BandwidthOk(h, n) && values.size() < n; h *= 0.5) {
    values.push_back(h);
  }
  return Bandwidths(std::move(values), n);
}

TuningCollection TuningCollection::AllDimensions(std::size_t n) {
  std::vector<std::size_t> values;
  for (std::size_t d = 1; d <= n; ++d) {
    if (!DimensionOk(static_cast<double>(d), n)) break;
    values.push_back(d);
  }
  return Dimensions(std::move(values), n);
}

LocalStatistic::LocalStatistic(Kernel kernel, double t) : family_(kernel), t_(t) {
  if (!std::isfinite(t)) throw DomainError("evaluation point must be finite");
}

LocalStatistic::LocalStatistic(Basis basis, double t) : family_(basis), t_(t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("evaluation point must lie in [0, 1]");
}

void LocalStatistic::Evaluate(double x, const TuningCollection& coll,
                              std::span<double> out) const {
  if (const auto* kernel = std::get_if<Kernel>(&family_)) {
    for (std::size_t i = 0; i < coll.size(); ++i) {
      const double h = coll.value(i);
      out[i] = (*kernel)((x - t_) / h) / h;
    }
  } else {
    std::get<Basis>(family_).KernelSums(t_, x, coll.dimensions(), out);
  }
}

double LocalStatistic::Sensitivity(double v) const {
  if (const auto* kernel = std::get_if<Kernel>(&family_)) {
    return SensitivityKde(*kernel, v);
  }
  return SensitivityPde(std::get<Basis>(family_), static_cast<std::size_t>(v));
}

double LocalStatistic::Penalty(double v) const { return is_kernel() ? 1.0 / v : v; }

double LocalStatistic::ConstantFactor() const {
  if (is_kernel()) return 1.0;
  const double phi0 = std::get<Basis>(family_).phi0();
  return phi0 * phi0;
}

double LocalStatistic::SmoothedTarget(const TestDensity& f, double v) const {
  if (const auto* kernel = std::get_if<Kernel>(&family_)) {
    return SmoothedValue(f, *kernel, v, t_);
  }
  return ProjectedValue(f, std::get<Basis>(family_), static_cast<std::size_t>(v), t_);
}

double LocalStatistic::SecondMoment(const TestDensity& f, double v) const {
  if (const auto* kernel = std::get_if<Kernel>(&family_)) {
    return KdeSecondMoment(f, *kernel, v, t_);
  }
  return PdeSecondMoment(f, std::get<Basis>(family_), static_cast<std::size_t>(v), t_);
}

ReleaseMatrix::ReleaseMatrix(std::size_t rows, std::size_t cols,
                             PrivacyBudget budget)
    : rows_(rows),
      cols_(cols),
      budget_(budget),
      values_(rows * cols, 0.0),
      noise_scales_(cols, 0.0) {}

std::vector<double> ReleaseMatrix::RowAlphas() const {
  return std::vector<double>(cols_, budget_.per_release_alpha());
}

void CheckCollection(const TuningCollection& coll, std::size_t n) {
  if (coll.size() == 0) throw ConfigError("collection", "collection is empty");
  if (coll.size() > n) {
    throw ConfigError("collection", "collection has more members than data holders");
  }
  const auto ok = coll.kind() == CollectionKind::kBandwidths ? BandwidthOk : DimensionOk;
  for (double v : coll.values()) {
    if (!ok(v, n)) {
      std::ostringstream msg;
      msg << "tuning value " << v << " violates the size constraint for n = " << n;
      throw ConfigError("collection", msg.str());
    }
  }
}

namespace {

void CheckStatistic(const TuningCollection& coll, const LocalStatistic& stat) {
  if (stat.is_kernel() != (coll.kind() == CollectionKind::kBandwidths)) {
    throw ConfigError("collection",
                      "kernels need bandwidths and bases need dimensions");
  }
  if (!stat.is_kernel()) {
    const Basis& basis = std::get<Basis>(stat.family());
    if (coll.dimensions().back() > basis.d_max()) {
      throw ConfigError("collection", "dimension exceeds the basis d_max");
    }
  }
}

std::vector<ChannelSpec> ColumnChannels(const TuningCollection& coll,
                                        const LocalStatistic& stat,
                                        const PrivacyBudget& budget) {
  std::vector<ChannelSpec> specs;
  specs.reserve(coll.size());
  for (double v : coll.values()) {
    const double sensitivity = stat.Sensitivity(v);
    specs.push_back({{}, sensitivity, sensitivity / budget.per_release_alpha()});
  }
  return specs;
}

}  // namespace

std::vector<PrivateRelease> ReleaseFamily(double x, const TuningCollection& coll,
                                          const LocalStatistic& stat,
                                          double alpha, Rng& rng) {
  CheckCollection(coll, coll.n());
  CheckStatistic(coll, stat);
  const PrivacyBudget budget(alpha, coll.size());
  const std::vector<ChannelSpec> specs = ColumnChannels(coll, stat, budget);
  std::vector<double> g(coll.size());
  stat.Evaluate(x, coll, g);
  std::vector<PrivateRelease> row;
  row.reserve(coll.size());
  for (std::size_t v = 0; v < coll.size(); ++v) {
    PrivateRelease release = Perturb(g[v], specs[v], budget, rng);
    release.tuning = coll.value(v);
    release.t = stat.t();
    row.push_back(release);
  }
  return row;
}

ReleaseMatrix ReleaseAll(std::span<const double> xs, const TuningCollection& coll,
                         const LocalStatistic& stat, double alpha, Rng& rng) {
  CheckCollection(coll, xs.size());
  CheckStatistic(coll, stat);
  const PrivacyBudget budget(alpha, coll.size());
  const std::vector<ChannelSpec> specs = ColumnChannels(coll, stat, budget);
  ReleaseMatrix matrix(xs.size(), coll.size(), budget);
  for (std::size_t v = 0; v < coll.size(); ++v) matrix.set_noise_scale(v, specs[v].b);
  std::vector<double> g(coll.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    stat.Evaluate(xs[i], coll, g);
    for (std::size_t v = 0; v < coll.size(); ++v) {
      matrix.value(i, v) = Perturb(g[v], specs[v], budget, rng).value;
    }
  }
  return matrix;
}

double SigmaHatSq(std::span<const double> z) {
  if (z.empty()) throw DomainError("no releases");
  double sum = 0.0;
  for (double v : z) sum += v * v;
  return sum / static_cast<double>(z.size());
}

double VHat(double sigma_hat_sq, double penalty, std::size_t n,
            const SelectorConstants& constants) {
  if (n < 2) throw DomainError("V-hat needs n >= 2");
  const double nn = static_cast<double>(n);
  return (2.0 * constants.effective_c1() * sigma_hat_sq / nn +
          constants.effective_c2() * penalty / nn) *
         std::log(nn);
}

double AHat(std::span<const double> estimates, std::span<const double> v_hats,
            std::size_t i) {
  if (estimates.size() != v_hats.size() || i >= estimates.size()) {
    throw DomainError("A-hat inputs are inconsistent");
  }
  double best = 0.0;
  for (std::size_t j = i; j < estimates.size(); ++j) {
    const double diff = estimates[i] - estimates[j];
    best = std::max(best, diff * diff - (v_hats[i] + v_hats[j]));
  }
  return best;
}

std::size_t ArgminCoarsest(std::span<const double> criterion, std::size_t* ties) {
  if (criterion.empty()) throw DomainError("argmin of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < criterion.size(); ++i) {
    if (criterion[i] < criterion[best]) best = i;
  }
  if (ties != nullptr) {
    *ties = static_cast<std::size_t>(
                std::count(criterion.begin(), criterion.end(), criterion[best])) -
            1;
  }
  return best;
}

SelectorTrace Select(const ReleaseMatrix& releases, const TuningCollection& coll,
                     const LocalStatistic& stat,
                     const SelectorConstants& constants) {
  if (releases.cols() != coll.size() || coll.size() == 0) {
    throw DomainError("release matrix does not match the collection");
  }
  const std::size_t n = releases.rows();
  const std::size_t m = coll.size();
  std::vector<double> sums(m, 0.0), squares(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < m; ++v) {
      const double z = releases.value(i, v);
      sums[v] += z;
      squares[v] += z * z;
    }
  }
  SelectorTrace trace;
  trace.kind = coll.kind();
  trace.entries.resize(m);
  std::vector<double> estimates(m), v_hats(m), criterion(m);
  for (std::size_t v = 0; v < m; ++v) {
    TraceEntry& e = trace.entries[v];
    e.value = coll.value(v);
    e.estimate = sums[v] / static_cast<double>(n);
    e.sigma_hat_sq = squares[v] / static_cast<double>(n);
    e.v_hat = VHat(e.sigma_hat_sq, stat.Penalty(e.value), n, constants);
    estimates[v] = e.estimate;
    v_hats[v] = e.v_hat;
  }
  for (std::size_t v = 0; v < m; ++v) {
    trace.entries[v].a_hat = AHat(estimates, v_hats, v);
    criterion[v] = trace.entries[v].a_hat + trace.entries[v].v_hat;
  }
  trace.chosen_index = ArgminCoarsest(criterion, &trace.ties);
  return trace;
}

void WriteTraceCsv(std::ostream& out, const SelectorTrace& trace, bool header) {
  if (header) out << "value,estimate,sigma_hat_sq,v_hat,a_hat,chosen\n";
  for (std::size_t v = 0; v < trace.entries.size(); ++v) {
    const TraceEntry& e = trace.entries[v];
    out << FormatDouble(e.value) << ',' << FormatDouble(e.estimate) << ','
        << FormatDouble(e.sigma_hat_sq) << ',' << FormatDouble(e.v_hat) << ','
        << FormatDouble(e.a_hat) << ',' << (v == trace.chosen_index ? 1 : 0)
        << '\n';
  }
}

VarianceTerms DeterministicVariance(const TestDensity& f, double v,
                                    const TuningCollection& coll,
                                    const LocalStatistic& stat, double alpha,
                                    const SelectorConstants& constants) {
  const PrivacyBudget budget(alpha, coll.size());
  const double n = static_cast<double>(coll.n());
  if (coll.n() < 2) throw DomainError("V needs n >= 2");
  const double log_n = std::log(n);
  VarianceTerms terms;
  terms.b = stat.Sensitivity(v) / budget.per_release_alpha();
  terms.second_moment = stat.SecondMoment(f, v);
  terms.sigma_sq = terms.second_moment + 2.0 * terms.b * terms.b;
  terms.v_s = (constants.effective_c1() * terms.second_moment / n +
               constants.effective_c2() * stat.Penalty(v) / n) *
              log_n;
  terms.v_xi = 2.0 * constants.effective_c1() * log_n / n;
  terms.total = terms.v_s + terms.b * terms.b * terms.v_xi;
  return terms;
}

OracleRhs ComputeOracleRhs(const TestDensity& f, const TuningCollection& coll,
                           double alpha, const LocalStatistic& stat,
                           double constant_c, const SelectorConstants& constants) {
  CheckStatistic(coll, stat);
  const std::size_t m = coll.size();
  const double target = f(stat.t());
  std::vector<double> raw(m);
  for (std::size_t v = 0; v < m; ++v) {
    const double bias = stat.SmoothedTarget(f, coll.value(v)) - target;
    raw[v] = bias * bias;
  }
  OracleRhs rhs;
  rhs.bias_sq.resize(m);
  double running = 0.0;
  for (std::size_t v = m; v-- > 0;) {
    running = std::max(running, raw[v]);
    rhs.bias_sq[v] = running;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < m; ++v) {
    rhs.variance.push_back(
        DeterministicVariance(f, coll.value(v), coll, stat, alpha, constants));
    const double total = rhs.bias_sq[v] + rhs.variance.back().total;
    if (total < best) {
      best = total;
      rhs.argmin_index = v;
    }
  }
  const double n = static_cast<double>(coll.n());
  rhs.value = 16.0 * best + constant_c * stat.ConstantFactor() / (n * alpha * alpha);
  return rhs;
}

}  // namespace ldpd
