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

#include "ldpd/audits.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ldpd/errors.h"
#include "ldpd/privacy.h"

namespace ldpd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double SafeExp(double numerator, double denominator) {
  if (denominator == 0.0) return numerator == 0.0 ? 1.0 : 0.0;
  return std::exp(-numerator / denominator);
}

void CheckEpsilons(std::span<const double> epsilons) {
  for (double e : epsilons) {
    if (!(e >= 0.0)) throw DomainError("epsilon must be nonnegative");
  }
}

// Tail frequencies of |mean| for each epsilon over reps sample means.
template <typename Draw>
std::vector<TailAuditRow> TailAudit(std::size_t n, std::span<const double> epsilons,
                                    std::size_t reps, std::uint64_t seed,
                                    Draw draw) {
  if (n == 0 || reps == 0) throw DomainError("n and reps must be positive");
  CheckEpsilons(epsilons);
  std::vector<std::size_t> hits(epsilons.size(), 0);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(StreamSeed(seed, 0, r));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += draw(rng);
    const double dev = std::abs(sum / static_cast<double>(n));
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
      if (dev >= epsilons[k]) ++hits[k];
    }
  }
  std::vector<TailAuditRow> rows(epsilons.size());
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    rows[k].epsilon = epsilons[k];
    rows[k].empirical = static_cast<double>(hits[k]) / static_cast<double>(reps);
  }
  return rows;
}

void Judge(std::vector<TailAuditRow>& rows, std::size_t reps) {
  for (TailAuditRow& row : rows) {
    const double p = std::min(row.bound, 1.0);
    row.se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    row.violated = row.empirical > row.bound + 3.0 * row.se;
  }
}

}  // namespace

AuditDistribution ParseAuditDistribution(std::string_view name) {
  if (name == "uniform") return AuditDistribution::kUniformSymmetric;
  if (name == "rademacher") return AuditDistribution::kRademacher;
  if (name == "zero") return AuditDistribution::kPointMassZero;
  if (name == "laplace") return AuditDistribution::kLaplace;
  throw DomainError("unknown distribution '" + std::string(name) +
                    "' (expected uniform, rademacher, zero or laplace)");
}

std::string_view AuditDistributionName(AuditDistribution dist) {
  switch (dist) {
    case AuditDistribution::kUniformSymmetric: return "uniform";
    case AuditDistribution::kRademacher: return "rademacher";
    case AuditDistribution::kPointMassZero: return "zero";
    case AuditDistribution::kLaplace: return "laplace";
  }
  return "unknown";
}

double DistributionBound(AuditDistribution dist) {
  switch (dist) {
    case AuditDistribution::kUniformSymmetric: return 1.0;
    case AuditDistribution::kRademacher: return 1.0;
    case AuditDistribution::kPointMassZero: return 0.0;
    case AuditDistribution::kLaplace: break;
  }
  throw DomainError("the Laplace distribution is not bounded");
}

double DistributionVariance(AuditDistribution dist) {
  switch (dist) {
    case AuditDistribution::kUniformSymmetric: return 1.0 / 3.0;
    case AuditDistribution::kRademacher: return 1.0;
    case AuditDistribution::kPointMassZero: return 0.0;
    case AuditDistribution::kLaplace: return 2.0;
  }
  return kNaN;
}

double AbsoluteMoment(AuditDistribution dist, unsigned m) {
  switch (dist) {
    case AuditDistribution::kUniformSymmetric: return 1.0 / (m + 1.0);
    case AuditDistribution::kRademacher: return 1.0;
    case AuditDistribution::kPointMassZero: return m == 0 ? 1.0 : 0.0;
    case AuditDistribution::kLaplace: return std::tgamma(m + 1.0);
  }
  return kNaN;
}

double DrawAudit(AuditDistribution dist, Rng& rng) {
  switch (dist) {
    case AuditDistribution::kUniformSymmetric: return 2.0 * rng.Uniform() - 1.0;
    case AuditDistribution::kRademacher: return rng.Uniform() < 0.5 ? -1.0 : 1.0;
    case AuditDistribution::kPointMassZero: return 0.0;
    case AuditDistribution::kLaplace: return LaplaceSample(1.0, rng);
  }
  return kNaN;
}

double BernsteinBound(std::size_t n, double epsilon, double v2, double b) {
  const double nn = static_cast<double>(n);
  return 2.0 * std::max(SafeExp(nn * epsilon * epsilon, 4.0 * v2),
                        SafeExp(nn * epsilon, 4.0 * b));
}

double LaplaceTailBound(std::size_t n, double epsilon, double b) {
  if (!(b > 0.0)) throw DomainError("Laplace scale must be positive");
  const double nn = static_cast<double>(n);
  return 2.0 * std::max(std::exp(-nn * epsilon * epsilon / (16.0 * b * b)),
                        std::exp(-nn * epsilon / (2.0 * b)));
}

std::vector<TailAuditRow> AuditBernstein(AuditDistribution dist, std::size_t n,
                                         std::span<const double> epsilons,
                                         std::size_t reps, std::uint64_t seed) {
  const double b = DistributionBound(dist);
  const double v2 = DistributionVariance(dist);
  std::vector<TailAuditRow> rows = TailAudit(
      n, epsilons, reps, seed, [dist](Rng& rng) { return DrawAudit(dist, rng); });
  for (TailAuditRow& row : rows) row.bound = BernsteinBound(n, row.epsilon, v2, b);
  Judge(rows, reps);
  return rows;
}

std::vector<TailAuditRow> AuditLaplaceTail(double b, std::size_t n,
                                           std::span<const double> epsilons,
                                           std::size_t reps, std::uint64_t seed) {
  if (!(b > 0.0)) throw DomainError("Laplace scale must be positive");
  std::vector<TailAuditRow> rows = TailAudit(
      n, epsilons, reps, seed, [b](Rng& rng) { return LaplaceSample(b, rng); });
  for (TailAuditRow& row : rows) row.bound = LaplaceTailBound(n, row.epsilon, b);
  Judge(rows, reps);
  return rows;
}

double PetrovReferenceConstant(unsigned m) {
  if (m == 2) return 1.0;
  if (m == 4) return 4.0;
  return kNaN;
}

double PetrovRatioRademacher(std::size_t n, unsigned m) {
  if (n == 0) throw DomainError("n must be positive");
  // P(S = n - 2k) = C(n, k) / 2^n, accumulated in logs.
  const double nn = static_cast<double>(n);
  double moment = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double log_p = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                         std::lgamma(nn - kk + 1.0) - nn * std::log(2.0);
    const double s = std::abs(nn - 2.0 * kk);
    if (s == 0.0) continue;
    moment += std::exp(log_p + m * std::log(s));
  }
  return moment / (std::pow(nn, m / 2.0 - 1.0) * nn);
}

std::vector<PetrovAuditRow> AuditPetrov(AuditDistribution dist,
                                        std::span<const std::size_t> ns,
                                        unsigned m, std::size_t reps,
                                        std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) throw DomainError("Petrov audit needs an even m >= 2");
  if (dist == AuditDistribution::kPointMassZero) {
    throw DomainError("Petrov audit needs a nondegenerate distribution");
  }
  std::vector<PetrovAuditRow> rows;
  for (std::size_t idx = 0; idx < ns.size(); ++idx) {
    const std::size_t n = ns[idx];
    if (n == 0) throw DomainError("n must be positive");
    PetrovAuditRow row;
    row.n = n;
    row.reference_constant = PetrovReferenceConstant(m);
    if (dist == AuditDistribution::kRademacher) {
      row.ratio = PetrovRatioRademacher(n, m);
      row.exact = true;
    } else {
      if (reps < 2) throw DomainError("reps must be at least 2");
      const double nn = static_cast<double>(n);
      const double denominator =
          std::pow(nn, m / 2.0 - 1.0) * nn * AbsoluteMoment(dist, m);
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(StreamSeed(seed, idx, r));
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += DrawAudit(dist, rng);
        const double v = std::pow(std::abs(s), m) / denominator;
        sum += v;
        sum_sq += v * v;
      }
      const double rr = static_cast<double>(reps);
      row.ratio = sum / rr;
      row.se = std::sqrt(std::max(0.0, sum_sq / rr - row.ratio * row.ratio) / (rr - 1.0));
    }
    // Exact ratios carry lgamma rounding.
    const double slack = row.exact ? 1e-9 * row.reference_constant : 3.0 * row.se;
    row.violated = std::isfinite(row.reference_constant) &&
                   row.ratio - slack > row.reference_constant;
    rows.push_back(row);
  }
  return rows;
}

double KlUpperBound(const TestDensity& f0, const TestDensity& f1, double n,
                    double alpha) {
  if (!(n > 0.0)) throw DomainError("n must be positive");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const double tv = TotalVariation(f0, f1);
  const double e = std::expm1(alpha);
  return 4.0 * n * e * e * tv * tv;
}

}  // namespace ldpd
