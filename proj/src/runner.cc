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

#include "ldpd/runner.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace ldpd {
namespace {

void WriteFile(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed for " + path);
  spdlog::debug("wrote {}", path);
}

}  // namespace

RunArtifacts RunExperiment(const ExperimentConfig& config, std::size_t jobs,
                           std::optional<std::uint64_t> seed) {
  ExperimentGrid grid = BuildGrid(config);
  if (seed) grid.seed = *seed;
  RunArtifacts artifacts;
  artifacts.report = McRisk(grid, RunOptions{jobs});
  std::ostringstream risk, rate;
  WriteRiskCsv(risk, artifacts.report);
  WriteRateCsv(rate, artifacts.report);
  artifacts.risk_csv = risk.str();
  artifacts.rate_csv = rate.str();
  if (grid.tuning == TuningMode::kAdaptive) {
    std::ostringstream trace;
    WriteTracesCsv(trace, artifacts.report);
    artifacts.trace_csv = trace.str();
  }
  return artifacts;
}

void WriteArtifacts(const ExperimentConfig& config, const RunArtifacts& artifacts) {
  WriteFile(config.output.risk_csv, artifacts.risk_csv);
  WriteFile(config.output.rate_csv, artifacts.rate_csv);
  if (config.tuning == TuningMode::kAdaptive) {
    WriteFile(config.output.trace_csv, artifacts.trace_csv);
  }
}

}  // namespace ldpd
