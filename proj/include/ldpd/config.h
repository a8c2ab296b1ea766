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

#ifndef LDPD_CONFIG_H_
#define LDPD_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldpd/simulation.h"

namespace ldpd {

inline constexpr const char* kSchemaVersion = "1";

struct DensitySpec {
  // uniform, normal, triangular, beta_mixture, trig_polynomial, hypothesis.
  std::string family = "uniform";
  // Family parameters with defaults filled in.
  nlohmann::json params = nlohmann::json::object();
  // Declared Hoelder smoothness; 0 selects the family default.
  double smoothness = 0.0;
};

struct OutputSpec {
  std::string risk_csv = "risk.csv";
  std::string rate_csv = "rates.csv";
  std::string trace_csv = "traces.csv";
};

// A JSON experiment document. Every key is checked; unknown keys are errors.
struct ExperimentConfig {
  std::string schema_version = kSchemaVersion;
  DensitySpec density;
  EstimatorKind estimator = EstimatorKind::kKde;
  std::string kernel = "rectangular";
  std::string basis = "trigonometric";
  TuningMode tuning = TuningMode::kFixed;
  bool private_release = true;
  std::vector<double> values;
  CollectionSpec collection;
  double t = 0.5;
  std::vector<std::size_t> ns;
  std::vector<double> alphas;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  SelectorConstants constants;
  std::optional<double> oracle_constant;
  std::size_t traces_per_cell = 1;
  OutputSpec output;
};

// Throws ConfigError with the JSON path of the first offending key.
ExperimentConfig ParseConfig(const nlohmann::json& document);
ExperimentConfig ParseConfigText(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);

// Normalized document: every field present, defaults written out.
nlohmann::json ToJson(const ExperimentConfig& config);

TestDensity BuildDensity(const DensitySpec& spec);

// Grid for McRisk. Throws ConfigError when the document is inconsistent.
ExperimentGrid BuildGrid(const ExperimentConfig& config);

}  // namespace ldpd

#endif  // LDPD_CONFIG_H_
