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

#ifndef LDPD_SIMULATION_H_
#define LDPD_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ldpd/adaptive.h"
#include "ldpd/basis.h"
#include "ldpd/densities.h"
#include "ldpd/kernel.h"

namespace ldpd {

enum class EstimatorKind { kKde, kPde };
enum class TuningMode { kFixed, kOracle, kAdaptive };

struct CollectionSpec {
  enum class Type { kExplicit, kHarmonic, kDyadic, kAll };
  Type type = Type::kExplicit;
  // Bandwidths or dimensions for kExplicit.
  std::vector<double> values;
};

// Additive constant C of the oracle right-hand side used when a grid does
// not override it. Calibrated by CalibrateOracleConstant (see data/).
double DefaultOracleConstant(const LocalStatistic& stat);

struct ExperimentGrid {
  TestDensity density = TestDensity::Uniform();
  EstimatorKind estimator = EstimatorKind::kKde;
  TuningMode tuning = TuningMode::kFixed;
  // false: the non-private estimator; alphas are ignored.
  bool private_release = true;
  Kernel kernel;
  BasisFamily basis = BasisFamily::kTrigonometric;
  double t = 0.5;
  // Bandwidths or dimensions for kFixed.
  std::vector<double> tuning_values;
  CollectionSpec collection;
  std::vector<std::size_t> ns;
  std::vector<double> alphas;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  SelectorConstants constants;
  // Negative: DefaultOracleConstant.
  double oracle_constant = -1.0;
  // Selector traces kept per adaptive cell (first replications).
  std::size_t traces_per_cell = 1;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

struct CellResult {
  std::size_t cell = 0;
  std::string density;
  std::string estimator;
  std::size_t n = 0;
  double alpha = 0.0;
  // Bandwidth or dimension; for adaptive cells the mean selected value.
  double tuning = 0.0;
  double mse = 0.0;
  double se = 0.0;
  double bound = 0.0;
  double bias2 = 0.0;
  double var = 0.0;
  std::size_t replications = 0;
  // Fixed and oracle private cells: the non-private estimate on the same
  // samples, and the noise scale.
  double nonprivate_mse = 0.0;
  double nonprivate_var = 0.0;
  double noise_scale_b = 0.0;
  // Adaptive cells, per collection member (coarse to fine).
  std::vector<double> collection;
  std::vector<double> mean_v_hat;
  std::vector<double> se_v_hat;
  std::vector<double> v_theory;
  std::vector<SelectorTrace> traces;
};

struct RateFit {
  std::string series;
  double slope = 0.0;
  double intercept = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double theory_slope = 0.0;
};

struct RiskReport {
  std::vector<CellResult> cells;
  std::vector<RateFit> rates;
};

struct RunOptions {
  std::size_t jobs = 1;
};

// Monte Carlo risk of every cell. Replication r of cell c draws from
// StreamSeed(seed, c, r), so the report does not depend on `jobs`.
RiskReport McRisk(const ExperimentGrid& grid, const RunOptions& options = {});

// OLS of log mse on log n with a Student-t 95% interval for the slope.
// Requires at least 4 points and positive mses.
RateFit FitRate(std::span<const double> ns, std::span<const double> mses);

// Columns: density, estimator, n, alpha, tuning, mse, se, bound, bias2, var.
void WriteRiskCsv(std::ostream& out, const RiskReport& report);
// Columns: series, slope, ci_lo, ci_hi, theory_slope.
void WriteRateCsv(std::ostream& out, const RiskReport& report);
// Columns: cell, n, alpha, trace, value, estimate, sigma_hat_sq, v_hat, a_hat,
// chosen.
void WriteTracesCsv(std::ostream& out, const RiskReport& report);

// Smallest C >= 0 such that mse <= rhs(C) on every adaptive cell of the
// grids, where rhs(C) = rhs(0) + C F / (n alpha^2).
struct CalibrationRow {
  std::string density;
  std::string estimator;
  std::size_t n = 0;
  double alpha = 0.0;
  double mse = 0.0;
  double se = 0.0;
  double rhs_without_c = 0.0;
  double required_c = 0.0;
};

std::vector<CalibrationRow> CalibrateOracleConstant(
    std::span<const ExperimentGrid> grids, const RunOptions& options = {});

// Reference sweep behind DefaultOracleConstant: every kernel and basis on
// uniform, triangular and beta-mixture densities, n in {200, 1000}, alpha in
// {0.5, 0.9}, dyadic bandwidths or dimensions {1, 2, 4, 8, 16}.
std::vector<ExperimentGrid> CalibrationReferenceGrids(std::size_t replications,
                                                      std::uint64_t seed);

void WriteCalibrationCsv(std::ostream& out, std::span<const CalibrationRow> rows);

}  // namespace ldpd

#endif  // LDPD_SIMULATION_H_
