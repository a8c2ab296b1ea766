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

#ifndef LDPD_MECHANISM_AUDIT_H_
#define LDPD_MECHANISM_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldpd/basis.h"
#include "ldpd/kernel.h"
#include "ldpd/privacy.h"

namespace ldpd {

enum class MechanismKind { kKde, kPde };

// One shipped release channel: g_h or g_d at t, with the total budget alpha
// split over `releases` (the adaptive collection size).
struct MechanismSpec {
  MechanismKind kind = MechanismKind::kKde;
  double h = 0.1;
  std::size_t d = 1;
  KernelFamily kernel = KernelFamily::kRectangular;
  BasisFamily basis = BasisFamily::kTrigonometric;
  double t = 0.5;
  double alpha = 0.5;
  std::size_t releases = 1;

  std::string Describe() const;
};

// Channel with the declared sensitivity and b = sensitivity / per-release alpha.
ChannelSpec BuildMechanismChannel(const MechanismSpec& spec);

// 100 data points covering the support of g (around t for kernels, [0, 1] for
// bases) and 200 outputs spanning the centres +- 3b.
std::vector<double> MechanismXGrid(const MechanismSpec& spec);
std::vector<double> MechanismZGrid(const ChannelSpec& channel,
                                   std::span<const double> x_grid);

// Log-ratio of the channel's scale at an input pair whose statistics differ by
// exactly the declared sensitivity (a step statistic with range Delta).
// Equals sensitivity / b = per-release alpha.
double TightPairLogRatio(const ChannelSpec& channel);

struct DeniabilityRow {
  double gamma = 0.0;
  DeniabilityAudit audit;
};

struct MechanismAuditReport {
  MechanismSpec spec;
  double sensitivity = 0.0;
  double b = 0.0;
  double per_release_alpha = 0.0;
  double composed_alpha = 0.0;
  DpRatioAudit grid;
  double tight_pair = 0.0;
  // Pair maximizing |g(x) - g(x')| on the grid.
  double x = 0.0;
  double x_prime = 0.0;
  std::vector<DeniabilityRow> deniability;

  bool Passes() const;
};

// Grid ratio certificate, tight pair and deniability tests (one per gamma,
// reps draws each, seeded from `seed`).
MechanismAuditReport AuditMechanism(const MechanismSpec& spec,
                                    std::span<const double> gammas,
                                    std::size_t reps, std::uint64_t seed);

}  // namespace ldpd

#endif  // LDPD_MECHANISM_AUDIT_H_
