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

#include "ldpd/mechanism_audit.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldpd/errors.h"
#include "ldpd/kde.h"
#include "ldpd/pde.h"
#include "ldpd/random.h"

namespace ldpd {
namespace {

constexpr std::size_t kXPoints = 100;
constexpr std::size_t kZPoints = 200;

std::vector<double> Linspace(double lo, double hi, std::size_t k) {
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1);
  }
  return out;
}

}  // namespace

std::string MechanismSpec::Describe() const {
  std::ostringstream out;
  if (kind == MechanismKind::kKde) {
    out << "kde kernel=" << Kernel(kernel).name() << " h=" << h;
  } else {
    out << "pde basis=" << Basis(basis, 1).name() << " d=" << d;
  }
  out << " t=" << t << " alpha=" << alpha << " releases=" << releases;
  return out.str();
}

ChannelSpec BuildMechanismChannel(const MechanismSpec& spec) {
  const PrivacyBudget budget(spec.alpha, spec.releases);
  if (spec.kind == MechanismKind::kKde) {
    return KdeChannel(KdeConfig{spec.t, spec.h, Kernel(spec.kernel), budget});
  }
  return PdeChannel(PdeConfig{spec.t, spec.d, Basis(spec.basis, spec.d), budget});
}

std::vector<double> MechanismXGrid(const MechanismSpec& spec) {
  if (spec.kind == MechanismKind::kPde) return Linspace(0.0, 1.0, kXPoints);
  const double reach = 1.5 * Kernel(spec.kernel).support_radius() * spec.h;
  return Linspace(spec.t - reach, spec.t + reach, kXPoints);
}

std::vector<double> MechanismZGrid(const ChannelSpec& channel,
                                   std::span<const double> x_grid) {
  double lo = channel.g(x_grid.front()), hi = lo;
  for (double x : x_grid) {
    const double g = channel.g(x);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return Linspace(lo - 3.0 * channel.b, hi + 3.0 * channel.b, kZPoints);
}

double TightPairLogRatio(const ChannelSpec& channel) {
  const double delta = channel.sensitivity;
  ChannelSpec step = channel;
  step.g = [delta](double x) { return x < 0.5 ? 0.0 : delta; };
  const std::vector<double> xs = {0.0, 1.0};
  const std::vector<double> zs = MechanismZGrid(step, xs);
  return VerifyDpRatio(step, delta / channel.b, xs, zs).max_log_ratio;
}

bool MechanismAuditReport::Passes() const {
  if (!grid.certified) return false;
  if (std::abs(tight_pair - per_release_alpha) > 1e-9) return false;
  if (std::abs(composed_alpha - spec.alpha) > 1e-12) return false;
  for (const DeniabilityRow& row : deniability) {
    if (!row.audit.Passes()) return false;
  }
  return true;
}

MechanismAuditReport AuditMechanism(const MechanismSpec& spec,
                                    std::span<const double> gammas,
                                    std::size_t reps, std::uint64_t seed) {
  MechanismAuditReport report;
  report.spec = spec;
  const PrivacyBudget budget(spec.alpha, spec.releases);
  const ChannelSpec channel = BuildMechanismChannel(spec);
  report.sensitivity = channel.sensitivity;
  report.b = channel.b;
  report.per_release_alpha = budget.per_release_alpha();
  const std::vector<double> split(spec.releases, budget.per_release_alpha());
  report.composed_alpha = Compose(split);

  const std::vector<double> xs = MechanismXGrid(spec);
  const std::vector<double> zs = MechanismZGrid(channel, xs);
  report.grid = VerifyDpRatio(channel, report.per_release_alpha, xs, zs);
  report.tight_pair = TightPairLogRatio(channel);

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (channel.g(xs[i]) < channel.g(xs[lo])) lo = i;
    if (channel.g(xs[i]) > channel.g(xs[hi])) hi = i;
  }
  report.x = xs[hi];
  report.x_prime = xs[lo];
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    Rng rng(StreamSeed(seed, k, 0));
    report.deniability.push_back(
        {gammas[k], RunDeniabilityAudit(channel, report.x, report.x_prime,
                                        gammas[k], reps, rng)});
  }
  return report;
}

}  // namespace ldpd
