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

#ifndef LDPD_RUNNER_H_
#define LDPD_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>

#include "ldpd/config.h"
#include "ldpd/simulation.h"

namespace ldpd {

struct RunArtifacts {
  RiskReport report;
  std::string risk_csv;
  std::string rate_csv;
  // Empty unless the run is adaptive.
  std::string trace_csv;
};

// Runs the grid, with `seed` replacing the configured seed when set.
RunArtifacts RunExperiment(const ExperimentConfig& config, std::size_t jobs,
                           std::optional<std::uint64_t> seed = std::nullopt);

// Writes the CSV bodies to the configured output paths.
void WriteArtifacts(const ExperimentConfig& config, const RunArtifacts& artifacts);

}  // namespace ldpd

#endif  // LDPD_RUNNER_H_
