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

#ifndef LDPD_ADAPTIVE_H_
#define LDPD_ADAPTIVE_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ldpd/basis.h"
#include "ldpd/densities.h"
#include "ldpd/kernel.h"
#include "ldpd/privacy.h"
#include "ldpd/random.h"

namespace ldpd {

enum class CollectionKind { kBandwidths, kDimensions };

// Candidate tuning values ordered from the coarsest (largest h, smallest d)
// to the finest. Every member satisfies n v >= max(log n, 1) for bandwidths
// and n / d >= max(log n, 1) for dimensions, and the size is at most n.
class TuningCollection {
 public:
  enum class Policy { kFilter, kStrict };

  // kFilter drops offending members with a logged warning; kStrict throws
  // ConfigError. Both throw ConfigError when nothing survives.
  static TuningCollection Bandwidths(std::vector<double> values, std::size_t n,
                                     Policy policy = Policy::kFilter);
  static TuningCollection Dimensions(std::vector<std::size_t> values,
                                     std::size_t n,
                                     Policy policy = Policy::kFilter);
  // {1/k : k = 2..n}, filtered.
  static TuningCollection Harmonic(std::size_t n);
  // {2^-k : k >= 1}, filtered.
  static TuningCollection Dyadic(std::size_t n);
  // {1, ..., n}, filtered.
  static TuningCollection AllDimensions(std::size_t n);

  CollectionKind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::size_t n() const { return n_; }
  double value(std::size_t i) const { return values_[i]; }
  std::size_t dimension(std::size_t i) const { return dimensions_[i]; }
  // Integer view of the values; empty for bandwidths.
  std::span<const std::size_t> dimensions() const { return dimensions_; }

 private:
  TuningCollection(CollectionKind kind, std::vector<double> values,
                   std::size_t n);

  CollectionKind kind_;
  std::vector<double> values_;
  std::vector<std::size_t> dimensions_;
  std::size_t n_;
};

// The local statistic released by each data holder: kernel g_h around t or
// projection kernel g_d at t.
class LocalStatistic {
 public:
  LocalStatistic(Kernel kernel, double t);
  LocalStatistic(Basis basis, double t);

  bool is_kernel() const { return std::holds_alternative<Kernel>(family_); }
  double t() const { return t_; }
  const std::variant<Kernel, Basis>& family() const { return family_; }

  // Statistic for every member of the collection at once.
  void Evaluate(double x, const TuningCollection& coll,
                std::span<double> out) const;
  // Sensitivity bound of g_v (2 ||K||_inf / h or 2 phi0 d).
  double Sensitivity(double v) const;
  // 1 / h or d.
  double Penalty(double v) const;
  // The phi0-type constant of the additive C / (n alpha^2) term: 1 for
  // kernels, phi0^2 for bases.
  double ConstantFactor() const;
  // f_v(t) and E g_v(X)^2 under f.
  double SmoothedTarget(const TestDensity& f, double v) const;
  double SecondMoment(const TestDensity& f, double v) const;

 private:
  std::variant<Kernel, Basis> family_;
  double t_;
};

// Releases Z_{i,v} for all data holders i (rows) and tuning values v
// (columns). Each row is produced from one datum with budget alpha / |coll|
// per release.
class ReleaseMatrix {
 public:
  ReleaseMatrix(std::size_t rows, std::size_t cols, PrivacyBudget budget);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrivacyBudget& budget() const { return budget_; }
  double value(std::size_t i, std::size_t v) const { return values_[i * cols_ + v]; }
  double& value(std::size_t i, std::size_t v) { return values_[i * cols_ + v]; }
  double noise_scale(std::size_t v) const { return noise_scales_[v]; }
  void set_noise_scale(std::size_t v, double b) { noise_scales_[v] = b; }

  // Per-release levels of row i; they compose to the total alpha.
  std::vector<double> RowAlphas() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrivacyBudget budget_;
  std::vector<double> values_;
  std::vector<double> noise_scales_;
};

// Throws ConfigError unless every member satisfies the size constraints for a
// sample of size n and |coll| <= n.
void CheckCollection(const TuningCollection& coll, std::size_t n);

// One row: |coll| releases of x at per-release level alpha / |coll| with
// b_v = |coll| * Sensitivity(v) / alpha. Throws ConfigError when the
// collection violates its invariants.
std::vector<PrivateRelease> ReleaseFamily(double x, const TuningCollection& coll,
                                          const LocalStatistic& stat,
                                          double alpha, Rng& rng);

// All rows for a sample.
ReleaseMatrix ReleaseAll(std::span<const double> xs, const TuningCollection& coll,
                         const LocalStatistic& stat, double alpha, Rng& rng);

struct SelectorConstants {
  double c1 = 600.0;
  double c2 = 432.0;
  // Multiplies both constants ("calibrated constants" mode); 1 is the theory.
  double scale = 1.0;

  double effective_c1() const { return c1 * scale; }
  double effective_c2() const { return c2 * scale; }
};

// (1/n) sum Z_i^2, uncentred.
double SigmaHatSq(std::span<const double> z);

// (2 c1 sigma_hat^2 / n + c2 penalty / n) log n with penalty 1/h or d.
// Requires n >= 2.
double VHat(double sigma_hat_sq, double penalty, std::size_t n,
            const SelectorConstants& constants);

// max over j >= i of {|est_i - est_j|^2 - (vhat_i + vhat_j)}_+ for values
// ordered coarse to fine.
double AHat(std::span<const double> estimates, std::span<const double> v_hats,
            std::size_t i);

// Smallest index attaining the minimum (the coarsest member); `ties`
// receives the number of other indices attaining it.
std::size_t ArgminCoarsest(std::span<const double> criterion,
                           std::size_t* ties = nullptr);

struct TraceEntry {
  double value = 0.0;
  double estimate = 0.0;
  double sigma_hat_sq = 0.0;
  double v_hat = 0.0;
  double a_hat = 0.0;
};

struct SelectorTrace {
  CollectionKind kind = CollectionKind::kBandwidths;
  std::vector<TraceEntry> entries;
  std::size_t chosen_index = 0;
  std::size_t ties = 0;
  std::optional<double> oracle_rhs;

  double chosen_value() const { return entries.at(chosen_index).value; }
  double estimate() const { return entries.at(chosen_index).estimate; }
};

// Estimates, V-hat and A-hat from the release matrix and the minimizer of
// A-hat + V-hat.
SelectorTrace Select(const ReleaseMatrix& releases, const TuningCollection& coll,
                     const LocalStatistic& stat,
                     const SelectorConstants& constants = {});

// Columns: value, estimate, sigma_hat_sq, v_hat, a_hat, chosen.
void WriteTraceCsv(std::ostream& out, const SelectorTrace& trace,
                   bool header = true);

// Deterministic V(v) = (c1 sigma_v^2 / n + c2 penalty / n) log n with
// sigma_v^2 = E g_v^2 + 2 b_v^2, split into the data part V_S and the noise
// part b_v^2 V_xi.
struct VarianceTerms {
  double v_s = 0.0;
  double v_xi = 0.0;
  double b = 0.0;
  double second_moment = 0.0;
  double sigma_sq = 0.0;
  double total = 0.0;
};

VarianceTerms DeterministicVariance(const TestDensity& f, double v,
                                    const TuningCollection& coll,
                                    const LocalStatistic& stat, double alpha,
                                    const SelectorConstants& constants = {});

struct OracleRhs {
  double value = 0.0;
  std::size_t argmin_index = 0;
  // Per collection member.
  std::vector<double> bias_sq;
  std::vector<VarianceTerms> variance;
};

// 16 min_v {bias^2(v) + V(v)} + C F / (n alpha^2) with bias^2(v) the sup over
// finer members of |f_w(t) - f(t)|^2 and F = 1 (kernels) or phi0^2 (bases).
OracleRhs ComputeOracleRhs(const TestDensity& f, const TuningCollection& coll,
                           double alpha, const LocalStatistic& stat,
                           double constant_c,
                           const SelectorConstants& constants = {});

}  // namespace ldpd

#endif  // LDPD_ADAPTIVE_H_
