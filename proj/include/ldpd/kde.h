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

#ifndef LDPD_KDE_H_
#define LDPD_KDE_H_

#include <cstddef>
#include <span>

#include "ldpd/densities.h"
#include "ldpd/kernel.h"
#include "ldpd/privacy.h"
#include "ldpd/random.h"

namespace ldpd {

struct KdeConfig {
  double t = 0.5;
  double h = 0.1;
  Kernel kernel;
  PrivacyBudget budget{0.5};

  // Throws DomainError unless h is in (0, 1] and t is finite.
  void Validate() const;
};

// (1 / h) K(u / h).
double KernelScaled(const Kernel& kernel, double h, double u);

// g_h(x) = K_h(x - t).
inline double KdeStatistic(const KdeConfig& cfg, double x) {
  return KernelScaled(cfg.kernel, cfg.h, x - cfg.t);
}

// 2 ||K||_inf / h, a bound on sup |g_h(x) - g_h(x')| over the real line.
double SensitivityKde(const Kernel& kernel, double h);

// Channel releasing g_h with b = 2 ||K||_inf / (per-release alpha * h).
ChannelSpec KdeChannel(const KdeConfig& cfg);

// (1 / n) sum K_h(X_i - t). Throws DomainError on an empty sample.
double KdeNonPrivate(std::span<const double> xs, const KdeConfig& cfg);

// Z = g_h(x) + b xi.
PrivateRelease KdeRelease(double x, const KdeConfig& cfg, Rng& rng);

// Mean of homogeneous releases. Throws DomainError on mixed bandwidths.
double KdePrivate(std::span<const PrivateRelease> releases);

// Squared bias + ||f||_inf ||K||_2^2 / (n h) + 8 ||K||_inf^2 / (n alpha^2 h^2)
// with alpha the per-release level of cfg.budget.
double KdeRiskBound(const TestDensity& f, const KdeConfig& cfg, std::size_t n);

// max(n^(-1/(2 beta + 1)), (alpha^2 n)^(-1/(2 beta + 2))), kept below 1.
double KdeOracleBandwidth(double beta, double n, double alpha);

// E g_h(X)^2 under f.
double KdeSecondMoment(const TestDensity& f, const Kernel& kernel, double h,
                       double t);

// Presentation helper; estimators themselves are never clipped.
inline double ClampNonneg(double value) { return value < 0.0 ? 0.0 : value; }

}  // namespace ldpd

#endif  // LDPD_KDE_H_
