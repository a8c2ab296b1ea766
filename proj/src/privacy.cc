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

#include "ldpd/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ldpd/errors.h"

namespace ldpd {
namespace {

// Quantile of Laplace(mu, b).
double LaplaceQuantile(double p, double mu, double b) {
  const double v = p - 0.5;
  return mu - b * std::copysign(1.0, v) * std::log1p(-2.0 * std::abs(v));
}

}  // namespace

PrivacyBudget::PrivacyBudget(double alpha, std::size_t releases)
    : alpha_(alpha), releases_(releases) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "privacy level alpha must lie in (0, 1), got " << alpha;
    throw DomainError(msg.str());
  }
  if (releases == 0) throw DomainError("a budget needs at least one release");
}

ChannelSpec MakeLaplaceChannel(std::function<double(double)> g,
                               double sensitivity, const PrivacyBudget& budget) {
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    throw DomainError("sensitivity must be finite and nonnegative");
  }
  return ChannelSpec{std::move(g), sensitivity,
                     sensitivity / budget.per_release_alpha()};
}

double LaplaceSample(double b, Rng& rng) {
  const double v = rng.Uniform() - 0.5;
  return -b * std::copysign(1.0, v) * std::log1p(-2.0 * std::abs(v));
}

PrivateRelease Perturb(double g_value, const ChannelSpec& spec,
                       const PrivacyBudget& budget, Rng& rng) {
  const double required = spec.sensitivity / budget.per_release_alpha();
  if (!(spec.b >= required) || !(spec.b > 0.0)) {
    std::ostringstream msg;
    msg << "noise scale b = " << spec.b << " is below sensitivity / alpha = "
        << required << "; refusing to release";
    throw PrivacyViolation(msg.str());
  }
  PrivateRelease release;
  release.value = g_value + LaplaceSample(spec.b, rng);
  release.noise_scale_b = spec.b;
  release.tuning = std::numeric_limits<double>::quiet_NaN();
  release.t = std::numeric_limits<double>::quiet_NaN();
#ifdef LDPD_RELEASE_DIAGNOSTICS
  release.clean_value = g_value;
#endif
  return release;
}

double Compose(std::span<const double> alphas) {
  double total = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0)) throw DomainError("privacy levels must be nonnegative");
    total += a;
  }
  return total;
}

double MeanOfReleases(std::span<const PrivateRelease> releases) {
  if (releases.empty()) throw DomainError("no releases to average");
  const PrivateRelease& first = releases.front();
  const auto same = [](double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
  };
  double sum = 0.0;
  for (const PrivateRelease& r : releases) {
    if (!same(r.tuning, first.tuning) || !same(r.t, first.t) ||
        r.noise_scale_b != first.noise_scale_b) {
      throw DomainError(
          "releases mix different tuning parameters, points or noise scales");
    }
    sum += r.value;
  }
  return sum / static_cast<double>(releases.size());
}

double LaplaceLogRatio(double z, double gx, double gx_prime, double b) {
  return std::abs(std::abs(z - gx_prime) - std::abs(z - gx)) / b;
}

DpRatioAudit VerifyDpRatio(const ChannelSpec& spec, double alpha,
                           std::span<const double> x_grid,
                           std::span<const double> z_grid) {
  if (!spec.g) throw DomainError("the audited channel needs its statistic g");
  if (!(spec.b > 0.0)) throw DomainError("noise scale must be positive");
  std::vector<double> gx(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) gx[i] = spec.g(x_grid[i]);

  // For fixed z, max over pairs of |z - g(x')| - |z - g(x)| is the spread of
  // the distances; the absolute value is covered by swapping the pair.
  DpRatioAudit audit;
  for (double z : z_grid) {
    std::size_t far = 0, near = 0;
    for (std::size_t i = 1; i < gx.size(); ++i) {
      if (std::abs(z - gx[i]) > std::abs(z - gx[far])) far = i;
      if (std::abs(z - gx[i]) < std::abs(z - gx[near])) near = i;
    }
    if (gx.empty()) break;
    const double ratio = LaplaceLogRatio(z, gx[near], gx[far], spec.b);
    if (ratio > audit.max_log_ratio) {
      audit.max_log_ratio = ratio;
      audit.x = x_grid[near];
      audit.x_prime = x_grid[far];
      audit.z = z;
    }
  }
  audit.certified = audit.max_log_ratio <= alpha + 1e-12;
  return audit;
}

DeniabilityAudit RunDeniabilityAudit(const ChannelSpec& spec, double x,
                                     double x_prime, double gamma,
                                     std::size_t reps, Rng& rng) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (reps == 0) throw DomainError("reps must be positive");
  if (!spec.g) throw DomainError("the audited channel needs its statistic g");
  const double mu0 = spec.g(x);
  const double mu1 = spec.g(x_prime);
  const double b = spec.b;
  const bool upper = mu1 >= mu0;
  // P0(reject) = gamma exactly.
  const double c = upper ? LaplaceQuantile(1.0 - gamma, mu0, b)
                         : LaplaceQuantile(gamma, mu0, b);

  std::size_t rejections = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const double z = mu1 + LaplaceSample(b, rng);
    if (upper ? z >= c : z <= c) ++rejections;
  }
  DeniabilityAudit audit;
  audit.empirical_power = static_cast<double>(rejections) / static_cast<double>(reps);
  audit.bound = gamma * std::exp(spec.sensitivity / b);
  const double p = std::min(audit.bound, 1.0);
  audit.tolerance = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  audit.z_threshold = c;
  audit.lr_threshold = std::exp((std::abs(c - mu0) - std::abs(c - mu1)) / b);
  return audit;
}

}  // namespace ldpd
