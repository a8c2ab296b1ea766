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

#ifndef LDPD_AUDITS_H_
#define LDPD_AUDITS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ldpd/densities.h"
#include "ldpd/random.h"

namespace ldpd {

// Centred summand distributions for the concentration audits.
enum class AuditDistribution {
  kUniformSymmetric,  // uniform on [-1, 1]: b = 1, v^2 = 1/3
  kRademacher,        // +-1: b = 1, v^2 = 1
  kPointMassZero,     // U = 0: b = 0, v^2 = 0
  kLaplace,           // Laplace(0, 1): unbounded, E|U|^m = m!
};

AuditDistribution ParseAuditDistribution(std::string_view name);
std::string_view AuditDistributionName(AuditDistribution dist);

// Almost-sure bound b and variance v^2. Throws DomainError for Laplace.
double DistributionBound(AuditDistribution dist);
double DistributionVariance(AuditDistribution dist);
// E|U|^m.
double AbsoluteMoment(AuditDistribution dist, unsigned m);
double DrawAudit(AuditDistribution dist, Rng& rng);

struct TailAuditRow {
  double epsilon = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  // Binomial standard error sqrt(p (1 - p) / reps) at the bound p.
  double se = 0.0;
  bool violated = false;
};

// 2 max{exp(-n eps^2 / (4 v^2)), exp(-n eps / (4 b))}; exponents with a zero
// denominator are -inf.
double BernsteinBound(std::size_t n, double epsilon, double v2, double b);

// 2 max{exp(-n eps^2 / (16 b^2)), exp(-n eps / (2 b))}.
double LaplaceTailBound(std::size_t n, double epsilon, double b);

// Empirical P(|mean - E U| >= eps) for n iid bounded summands. A row is
// violated when empirical > bound + 3 se.
std::vector<TailAuditRow> AuditBernstein(AuditDistribution dist, std::size_t n,
                                         std::span<const double> epsilons,
                                         std::size_t reps, std::uint64_t seed);

// As AuditBernstein for iid Laplace(0, b) summands.
std::vector<TailAuditRow> AuditLaplaceTail(double b, std::size_t n,
                                           std::span<const double> epsilons,
                                           std::size_t reps, std::uint64_t seed);

struct PetrovAuditRow {
  std::size_t n = 0;
  // E|sum U|^m / (n^(m/2 - 1) sum E|U|^m).
  double ratio = 0.0;
  double se = 0.0;
  bool exact = false;
  // Admissible c_m (1 for m = 2, 4 for m = 4); NaN otherwise.
  double reference_constant = 0.0;
  bool violated = false;
};

// Admissible constants: E(sum U)^2 = sum E U^2 and
// E(sum U)^4 = sum E U^4 + 3 sum_{i != j} E U_i^2 E U_j^2 <= (3 + 1/n) n sum E U^4.
double PetrovReferenceConstant(unsigned m);

// Exact ratio for Rademacher summands by enumerating the binomial law.
double PetrovRatioRademacher(std::size_t n, unsigned m);

// Rademacher rows are exact; other distributions use reps Monte Carlo draws.
// m must be even and at least 2.
std::vector<PetrovAuditRow> AuditPetrov(AuditDistribution dist,
                                        std::span<const std::size_t> ns,
                                        unsigned m, std::size_t reps,
                                        std::uint64_t seed);

// 4 n (e^alpha - 1)^2 TV^2 with TV = int |f0 - f1|.
double KlUpperBound(const TestDensity& f0, const TestDensity& f1, double n,
                    double alpha);

}  // namespace ldpd

#endif  // LDPD_AUDITS_H_
