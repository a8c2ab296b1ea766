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

#ifndef LDPD_PDE_H_
#define LDPD_PDE_H_

#include <cstddef>
#include <span>

#include "ldpd/basis.h"
#include "ldpd/densities.h"
#include "ldpd/privacy.h"
#include "ldpd/random.h"

namespace ldpd {

struct PdeConfig {
  double t = 0.5;
  std::size_t d = 1;
  Basis basis = Basis::Trigonometric(1);
  PrivacyBudget budget{0.5};

  // Throws DomainError unless 1 <= d <= basis.d_max() and t is in [0, 1].
  void Validate() const;
};

// g_d(x) = sum_{j <= d} phi_j(x) phi_j(t).
inline double PdeStatistic(const PdeConfig& cfg, double x) {
  return cfg.basis.KernelSum(cfg.d, cfg.t, x);
}

// 2 phi0 d.
double SensitivityPde(const Basis& basis, std::size_t d);

// Channel releasing g_d with b = 2 phi0 d / per-release alpha.
ChannelSpec PdeChannel(const PdeConfig& cfg);

PrivateRelease PdeRelease(double x, const PdeConfig& cfg, Rng& rng);

// Mean of homogeneous releases. Throws DomainError on mixed dimensions.
double PdePrivate(std::span<const PrivateRelease> releases);

// sum_j a_j phi_j(t) with empirical coefficients a_j = (1/n) sum phi_j(X_i).
// Throws DomainError when the two algebraically equal forms (coefficients and
// mean of g_d) disagree by more than 1e-12 relative to their scale.
double PdeNonPrivate(std::span<const double> xs, const PdeConfig& cfg);

// (1/n) sum g_d(X_i).
double PdeNonPrivateKernelForm(std::span<const double> xs, const PdeConfig& cfg);

// Squared bias + ||f||_inf phi0 d / n + 8 phi0^2 d^2 / (n alpha^2) with alpha
// the per-release level of cfg.budget.
double PdeRiskBound(const TestDensity& f, const PdeConfig& cfg, std::size_t n);

// round(min(n^(1/(2 beta + 1)), (alpha^2 n)^(1/(2 beta + 2)))), at least 1.
std::size_t PdeOracleDimension(double beta, double n, double alpha);

// E g_d(X)^2 under f.
double PdeSecondMoment(const TestDensity& f, const Basis& basis, std::size_t d,
                       double t);

}  // namespace ldpd

#endif  // LDPD_PDE_H_
