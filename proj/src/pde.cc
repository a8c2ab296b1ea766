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

#include "ldpd/pde.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ldpd/errors.h"
#include "ldpd/quadrature.h"

namespace ldpd {

void PdeConfig::Validate() const {
  if (d == 0 || d > basis.d_max()) {
    std::ostringstream msg;
    msg << "dimension d = " << d << " outside 1.." << basis.d_max();
    throw DomainError(msg.str());
  }
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("evaluation point must lie in [0, 1]");
}

double SensitivityPde(const Basis& basis, std::size_t d) {
  if (d == 0) throw DomainError("dimension must be at least 1");
  return 2.0 * basis.phi0() * static_cast<double>(d);
}

ChannelSpec PdeChannel(const PdeConfig& cfg) {
  cfg.Validate();
  const PdeConfig copy = cfg;
  return MakeLaplaceChannel(
      [copy](double x) { return PdeStatistic(copy, x); },
      SensitivityPde(cfg.basis, cfg.d), cfg.budget);
}

PrivateRelease PdeRelease(double x, const PdeConfig& cfg, Rng& rng) {
  cfg.Validate();
  const double sensitivity = SensitivityPde(cfg.basis, cfg.d);
  const ChannelSpec spec{{}, sensitivity,
                         sensitivity / cfg.budget.per_release_alpha()};
  PrivateRelease release = Perturb(PdeStatistic(cfg, x), spec, cfg.budget, rng);
  release.tuning = static_cast<double>(cfg.d);
  release.t = cfg.t;
  return release;
}

double PdePrivate(std::span<const PrivateRelease> releases) {
  return MeanOfReleases(releases);
}

double PdeNonPrivateKernelForm(std::span<const double> xs, const PdeConfig& cfg) {
  if (xs.empty()) throw DomainError("projection estimate needs a nonempty sample");
  cfg.Validate();
  double sum = 0.0;
  for (double x : xs) sum += PdeStatistic(cfg, x);
  return sum / static_cast<double>(xs.size());
}

double PdeNonPrivate(std::span<const double> xs, const PdeConfig& cfg) {
  if (xs.empty()) throw DomainError("projection estimate needs a nonempty sample");
  cfg.Validate();
  const double n = static_cast<double>(xs.size());
  double value = 0.0;
  for (std::size_t j = 1; j <= cfg.d; ++j) {
    double coefficient = 0.0;
    for (double x : xs) coefficient += cfg.basis.Eval(j, x, cfg.d);
    value += coefficient / n * cfg.basis.Eval(j, cfg.t, cfg.d);
  }
  const double kernel_form = PdeNonPrivateKernelForm(xs, cfg);
  const double scale = std::max(1.0, static_cast<double>(cfg.d) * cfg.basis.phi0());
  if (std::abs(value - kernel_form) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "coefficient form " << value << " and kernel form " << kernel_form
        << " of the projection estimate disagree";
    throw DomainError(msg.str());
  }
  return value;
}

double PdeRiskBound(const TestDensity& f, const PdeConfig& cfg, std::size_t n) {
  cfg.Validate();
  if (n == 0) throw DomainError("sample size must be positive");
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(cfg.d);
  const double alpha = cfg.budget.per_release_alpha();
  const double phi0 = cfg.basis.phi0();
  const double bias = ProjectedValue(f, cfg.basis, cfg.d, cfg.t) - f(cfg.t);
  return bias * bias + f.sup_norm() * phi0 * dd / nn +
         8.0 * phi0 * phi0 * dd * dd / (nn * alpha * alpha);
}

std::size_t PdeOracleDimension(double beta, double n, double alpha) {
  if (!(beta > 0.0)) throw DomainError("smoothness beta must be positive");
  if (!(n >= 1.0)) throw DomainError("sample size must be at least 1");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const double d1 = std::pow(n, 1.0 / (2.0 * beta + 1.0));
  const double d2 = std::pow(alpha * alpha * n, 1.0 / (2.0 * beta + 2.0));
  const double d = std::round(std::min(d1, d2));
  return d < 1.0 ? 1 : static_cast<std::size_t>(d);
}

double PdeSecondMoment(const TestDensity& f, const Basis& basis, std::size_t d,
                       double t) {
  if (!f.supported_on_unit_interval()) {
    throw DomainError("projection estimators need a density supported on [0, 1]");
  }
  std::vector<double> points = basis.Breakpoints(d);
  for (double p : f.breakpoints()) points.push_back(p);
  return Integrate(
      [&](double x) {
        const double g = basis.KernelSum(d, t, x);
        return g * g * f(x);
      },
      0.0, 1.0, points);
}

}  // namespace ldpd
