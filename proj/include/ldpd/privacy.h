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

#ifndef LDPD_PRIVACY_H_
#define LDPD_PRIVACY_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "ldpd/random.h"

namespace ldpd {

// Total budget alpha in (0, 1) split evenly over `releases` conditionally
// independent releases of the same datum. Only alpha and the release count
// are stored, so per_release_alpha() * releases() == alpha up to one rounding.
class PrivacyBudget {
 public:
  // Throws DomainError unless alpha is in (0, 1) and releases >= 1.
  explicit PrivacyBudget(double alpha, std::size_t releases = 1);

  double alpha() const { return alpha_; }
  std::size_t releases() const { return releases_; }
  double per_release_alpha() const {
    return alpha_ / static_cast<double>(releases_);
  }

 private:
  double alpha_;
  std::size_t releases_;
};

// One sanitized scalar Z = g(X) + b * xi.
struct PrivateRelease {
  double value = 0.0;
  double noise_scale_b = 0.0;
  // Tuning parameter (bandwidth or dimension) and evaluation point of the
  // released statistic; used to reject mixing releases of different
  // statistics. NaN when unknown.
  double tuning = 0.0;
  double t = 0.0;
  // g(X) before noise. Filled only in builds with LDPD_RELEASE_DIAGNOSTICS.
  std::optional<double> clean_value;
};

// The general Laplace perturbation channel Z = g(X) + b xi.
struct ChannelSpec {
  // The released statistic; may be empty when only the scale is needed.
  std::function<double(double)> g;
  // Delta(g) = sup |g(x) - g(x')|, or an upper bound for it.
  double sensitivity = 0.0;
  double b = 0.0;
};

// Channel with the minimal compliant scale b = sensitivity / per-release alpha.
ChannelSpec MakeLaplaceChannel(std::function<double(double)> g,
                               double sensitivity, const PrivacyBudget& budget);

// Laplace(0, b) by inversion of one uniform draw.
double LaplaceSample(double b, Rng& rng);

// g_value + b xi. Throws PrivacyViolation when spec.b < sensitivity /
// per_release_alpha: an undersized scale is never released.
PrivateRelease Perturb(double g_value, const ChannelSpec& spec,
                       const PrivacyBudget& budget, Rng& rng);

// Sum of per-release privacy levels (composition of independent views).
// Throws DomainError on negative entries.
double Compose(std::span<const double> alphas);

// Arithmetic mean of homogeneous releases (same tuning, same point, same
// scale). Throws DomainError when empty or heterogeneous.
double MeanOfReleases(std::span<const PrivateRelease> releases);

struct DpRatioAudit {
  double max_log_ratio = 0.0;
  bool certified = false;
  // Arguments attaining the maximum.
  double x = 0.0;
  double x_prime = 0.0;
  double z = 0.0;
};

// |log q(z|x) - log q(z|x')| for the Laplace channel with centres gx, gx'.
double LaplaceLogRatio(double z, double gx, double gx_prime, double b);

// Maximum over the grids of |log q(z|x) - log q(z|x')| with
// q(z|x) = exp(-|z - g(x)| / b) / (2b). Certified iff the maximum is at most
// alpha + 1e-12.
DpRatioAudit VerifyDpRatio(const ChannelSpec& spec, double alpha,
                           std::span<const double> x_grid,
                           std::span<const double> z_grid);

struct DeniabilityAudit {
  double empirical_power = 0.0;
  // gamma * exp(alpha) with alpha = sensitivity / b of the channel.
  double bound = 0.0;
  // Three binomial standard errors at p = bound; the slack used by Passes().
  double tolerance = 0.0;
  // Rejection threshold on z and the likelihood ratio dP1/dP0 there.
  double z_threshold = 0.0;
  double lr_threshold = 1.0;

  bool Passes() const { return empirical_power <= bound + tolerance; }
};

// Simulates the most powerful level-gamma test of Q(.|x) against Q(.|x').
// The Laplace likelihood ratio is monotone in z, so the Neyman-Pearson test
// rejects on a one-sided tail {z >= c} (or {z <= c}) with P0-mass gamma.
DeniabilityAudit RunDeniabilityAudit(const ChannelSpec& spec, double x,
                                     double x_prime, double gamma,
                                     std::size_t reps, Rng& rng);

}  // namespace ldpd

#endif  // LDPD_PRIVACY_H_
