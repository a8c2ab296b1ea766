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

#include "ldpd/kde.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ldpd/errors.h"
#include "ldpd/quadrature.h"

namespace ldpd {

void KdeConfig::Validate() const {
  if (!(h > 0.0 && h <= 1.0)) {
    std::ostringstream msg;
    msg << "bandwidth h must lie in (0, 1], got " << h;
    throw DomainError(msg.str());
  }
  if (!std::isfinite(t)) throw DomainError("evaluation point must be finite");
}

double KernelScaled(const Kernel& kernel, double h, double u) {
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  return kernel(u / h) / h;
}

double SensitivityKde(const Kernel& kernel, double h) {
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  return 2.0 * kernel.sup_norm() / h;
}

ChannelSpec KdeChannel(const KdeConfig& cfg) {
  cfg.Validate();
  const KdeConfig copy = cfg;
  return MakeLaplaceChannel(
      [copy](double x) { return KdeStatistic(copy, x); },
      SensitivityKde(cfg.kernel, cfg.h), cfg.budget);
}

double KdeNonPrivate(std::span<const double> xs, const KdeConfig& cfg) {
  if (xs.empty()) throw DomainError("kernel estimate needs a nonempty sample");
  cfg.Validate();
  double sum = 0.0;
  for (double x : xs) sum += KdeStatistic(cfg, x);
  return sum / static_cast<double>(xs.size());
}

PrivateRelease KdeRelease(double x, const KdeConfig& cfg, Rng& rng) {
  cfg.Validate();
  const double sensitivity = SensitivityKde(cfg.kernel, cfg.h);
  const ChannelSpec spec{{}, sensitivity,
                         sensitivity / cfg.budget.per_release_alpha()};
  PrivateRelease release = Perturb(KdeStatistic(cfg, x), spec, cfg.budget, rng);
  release.tuning = cfg.h;
  release.t = cfg.t;
  return release;
}

double KdePrivate(std::span<const PrivateRelease> releases) {
  return MeanOfReleases(releases);
}

double KdeRiskBound(const TestDensity& f, const KdeConfig& cfg, std::size_t n) {
  cfg.Validate();
  if (n == 0) throw DomainError("sample size must be positive");
  const double nn = static_cast<double>(n);
  const double alpha = cfg.budget.per_release_alpha();
  const double bias = SmoothedValue(f, cfg.kernel, cfg.h, cfg.t) - f(cfg.t);
  const double k_inf = cfg.kernel.sup_norm();
  return bias * bias + f.sup_norm() * cfg.kernel.l2_norm_sq() / (nn * cfg.h) +
         8.0 * k_inf * k_inf / (nn * alpha * alpha * cfg.h * cfg.h);
}

double KdeOracleBandwidth(double beta, double n, double alpha) {
  if (!(beta > 0.0)) throw DomainError("smoothness beta must be positive");
  if (!(n >= 1.0)) throw DomainError("sample size must be at least 1");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const double h1 = std::pow(n, -1.0 / (2.0 * beta + 1.0));
  const double h2 = std::pow(alpha * alpha * n, -1.0 / (2.0 * beta + 2.0));
  const double h = std::max(h1, h2);
  return std::min(h, std::nextafter(1.0, 0.0));
}

double KdeSecondMoment(const TestDensity& f, const Kernel& kernel, double h,
                       double t) {
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  // E K_h(X - t)^2 = (1 / h) int K(u)^2 f(t + h u) du.
  const double r = kernel.support_radius();
  std::vector<double> breaks = kernel.breakpoints();
  for (double p : f.breakpoints()) {
    const double u = (p - t) / h;
    if (u > -r && u < r) breaks.push_back(u);
  }
  std::sort(breaks.begin(), breaks.end());
  const double integral = Integrate(
      [&](double u) {
        const double k = kernel(u);
        return k * k * f(t + h * u);
      },
      -r, r, breaks);
  return integral / h;
}

}  // namespace ldpd
