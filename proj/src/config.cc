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

#include "ldpd/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "ldpd/errors.h"

namespace ldpd {
namespace {

using nlohmann::json;

std::string Join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Reads an object key by key and rejects whatever was not read.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  const json* Find(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  const json& Require(std::string_view key) {
    const json* value = Find(key);
    if (value == nullptr) throw ConfigError(Join(path_, key), "required key is missing");
    return *value;
  }

  double Number(std::string_view key, std::optional<double> fallback) {
    const json* value = fallback ? Find(key) : &Require(key);
    if (value == nullptr) return *fallback;
    if (!value->is_number()) throw ConfigError(Join(path_, key), "expected a number");
    return value->get<double>();
  }

  std::uint64_t Unsigned(std::string_view key, std::optional<std::uint64_t> fallback) {
    const json* value = fallback ? Find(key) : &Require(key);
    if (value == nullptr) return *fallback;
    if (!value->is_number_unsigned() && !(value->is_number_integer() && *value >= 0)) {
      throw ConfigError(Join(path_, key), "expected a nonnegative integer");
    }
    return value->get<std::uint64_t>();
  }

  bool Bool(std::string_view key, bool fallback) {
    const json* value = Find(key);
    if (value == nullptr) return fallback;
    if (!value->is_boolean()) throw ConfigError(Join(path_, key), "expected true or false");
    return value->get<bool>();
  }

  std::string String(std::string_view key, std::optional<std::string> fallback) {
    const json* value = fallback ? Find(key) : &Require(key);
    if (value == nullptr) return *fallback;
    if (!value->is_string()) throw ConfigError(Join(path_, key), "expected a string");
    return value->get<std::string>();
  }

  std::vector<double> Numbers(std::string_view key, bool required) {
    const json* value = required ? &Require(key) : Find(key);
    std::vector<double> out;
    if (value == nullptr) return out;
    const std::string path = Join(path_, key);
    if (value->is_number()) return {value->get<double>()};
    if (!value->is_array()) throw ConfigError(path, "expected a number or an array");
    for (std::size_t i = 0; i < value->size(); ++i) {
      if (!(*value)[i].is_number()) {
        throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
      }
      out.push_back((*value)[i].get<double>());
    }
    return out;
  }

  std::string Child(std::string_view key) const { return Join(path_, key); }

  void Finish() const {
    for (const auto& item : object_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw ConfigError(Join(path_, item.key()), "unknown key");
      }
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

DensitySpec ParseDensity(const json& node) {
  ObjectReader r(node, "density");
  DensitySpec spec;
  spec.family = r.String("family", std::nullopt);
  spec.smoothness = r.Number("smoothness", 0.0);
  if (spec.smoothness < 0.0) throw ConfigError("density.smoothness", "must be nonnegative");
  json& p = spec.params;
  const std::string& f = spec.family;
  if (f == "uniform") {
  } else if (f == "normal") {
    p["mean"] = r.Number("mean", 0.0);
    p["sd"] = r.Number("sd", 1.0);
  } else if (f == "triangular") {
    p["lo"] = r.Number("lo", 0.0);
    p["mode"] = r.Number("mode", 0.5);
    p["hi"] = r.Number("hi", 1.0);
  } else if (f == "beta_mixture") {
    p["weights"] = r.Numbers("weights", true);
    p["a"] = r.Numbers("a", true);
    p["b"] = r.Numbers("b", true);
  } else if (f == "trig_polynomial") {
    p["coefficients"] = r.Numbers("coefficients", true);
  } else if (f == "hypothesis") {
    const std::uint64_t member = r.Unsigned("member", 1);
    if (member > 1) throw ConfigError("density.member", "must be 0 or 1");
    p["member"] = member;
    const std::string base = r.String("base", "gaussian");
    if (base != "gaussian" && base != "uniform") {
      throw ConfigError("density.base", "expected gaussian or uniform");
    }
    p["base"] = base;
    p["beta"] = r.Number("beta", 1.0);
    p["radius"] = r.Number("radius", 1.0);
    p["t"] = r.Number("t", base == "gaussian" ? 0.0 : 0.5);
    p["n"] = r.Number("n", std::nullopt);
    p["alpha"] = r.Number("alpha", std::nullopt);
  } else {
    throw ConfigError("density.family",
                      "unknown family '" + f +
                          "' (expected uniform, normal, triangular, beta_mixture, "
                          "trig_polynomial or hypothesis)");
  }
  r.Finish();
  return spec;
}

CollectionSpec ParseCollection(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  CollectionSpec spec;
  const std::string type = r.String("type", "explicit");
  if (type == "explicit") {
    spec.type = CollectionSpec::Type::kExplicit;
    spec.values = r.Numbers("values", true);
  } else if (type == "harmonic") {
    spec.type = CollectionSpec::Type::kHarmonic;
  } else if (type == "dyadic") {
    spec.type = CollectionSpec::Type::kDyadic;
  } else if (type == "all") {
    spec.type = CollectionSpec::Type::kAll;
  } else {
    throw ConfigError(r.Child("type"), "expected explicit, harmonic, dyadic or all");
  }
  r.Finish();
  return spec;
}

std::string CollectionTypeName(CollectionSpec::Type type) {
  switch (type) {
    case CollectionSpec::Type::kExplicit: return "explicit";
    case CollectionSpec::Type::kHarmonic: return "harmonic";
    case CollectionSpec::Type::kDyadic: return "dyadic";
    case CollectionSpec::Type::kAll: return "all";
  }
  return "explicit";
}

std::string TuningName(TuningMode mode) {
  switch (mode) {
    case TuningMode::kFixed: return "fixed";
    case TuningMode::kOracle: return "oracle";
    case TuningMode::kAdaptive: return "adaptive";
  }
  return "fixed";
}

}  // namespace

ExperimentConfig ParseConfig(const json& document) {
  ObjectReader root(document, "");
  ExperimentConfig config;
  config.schema_version = root.String("schema_version", std::nullopt);
  if (config.schema_version != kSchemaVersion) {
    throw ConfigError("schema_version", std::string("unsupported version '") +
                                            config.schema_version + "', expected '" +
                                            kSchemaVersion + "'");
  }
  config.density = ParseDensity(root.Require("density"));

  {
    ObjectReader r(root.Require("estimator"), "estimator");
    const std::string kind = r.String("kind", std::nullopt);
    if (kind == "kde") {
      config.estimator = EstimatorKind::kKde;
    } else if (kind == "pde") {
      config.estimator = EstimatorKind::kPde;
    } else {
      throw ConfigError("estimator.kind", "expected kde or pde");
    }
    config.kernel = r.String("kernel", "rectangular");
    try {
      ParseKernelFamily(config.kernel);
    } catch (const DomainError& e) {
      throw ConfigError("estimator.kernel", e.what());
    }
    config.basis = r.String("basis", "trigonometric");
    try {
      config.basis = std::string(Basis(ParseBasisFamily(config.basis), 1).name());
    } catch (const DomainError& e) {
      throw ConfigError("estimator.basis", e.what());
    }
    const std::string tuning = r.String("tuning", "fixed");
    if (tuning == "fixed") {
      config.tuning = TuningMode::kFixed;
    } else if (tuning == "oracle") {
      config.tuning = TuningMode::kOracle;
    } else if (tuning == "adaptive") {
      config.tuning = TuningMode::kAdaptive;
    } else {
      throw ConfigError("estimator.tuning", "expected fixed, oracle or adaptive");
    }
    config.private_release = r.Bool("private", true);
    config.values = r.Numbers("values", config.tuning == TuningMode::kFixed);
    if (config.tuning != TuningMode::kFixed && !config.values.empty()) {
      throw ConfigError("estimator.values", "only fixed tuning takes values");
    }
    const json* collection = r.Find("collection");
    if (config.tuning == TuningMode::kAdaptive) {
      if (collection == nullptr) {
        throw ConfigError("estimator.collection", "adaptive tuning needs a collection");
      }
      config.collection = ParseCollection(*collection, "estimator.collection");
    } else if (collection != nullptr) {
      throw ConfigError("estimator.collection", "only adaptive tuning takes a collection");
    }
    r.Finish();
  }

  config.t = root.Number("t", 0.5);
  for (double v : root.Numbers("n", true)) {
    if (!(v >= 1.0 && v == std::floor(v))) {
      throw ConfigError("n", "sample sizes must be positive integers");
    }
    config.ns.push_back(static_cast<std::size_t>(v));
  }
  config.alphas = root.Numbers("alpha", config.private_release);
  config.replications = root.Unsigned("replications", 1000);
  config.seed = root.Unsigned("seed", 1);
  config.traces_per_cell = root.Unsigned("traces_per_cell", 1);

  if (const json* node = root.Find("selector")) {
    ObjectReader r(*node, "selector");
    config.constants.c1 = r.Number("c1", 600.0);
    config.constants.c2 = r.Number("c2", 432.0);
    config.constants.scale = r.Number("scale", 1.0);
    const json* c = r.Find("oracle_constant");
    if (c != nullptr && !c->is_null()) {
      if (!c->is_number() || c->get<double>() < 0.0) {
        throw ConfigError("selector.oracle_constant", "expected a nonnegative number");
      }
      config.oracle_constant = c->get<double>();
    }
    r.Finish();
  }
  if (const json* node = root.Find("output")) {
    ObjectReader r(*node, "output");
    config.output.risk_csv = r.String("risk_csv", config.output.risk_csv);
    config.output.rate_csv = r.String("rate_csv", config.output.rate_csv);
    config.output.trace_csv = r.String("trace_csv", config.output.trace_csv);
    r.Finish();
  }
  root.Finish();
  // Surface semantic errors (alpha range, collection types, ...) at parse time.
  BuildGrid(config);
  return config;
}

ExperimentConfig ParseConfigText(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  return ParseConfig(document);
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

json ToJson(const ExperimentConfig& config) {
  json density = config.density.params;
  density["family"] = config.density.family;
  density["smoothness"] = config.density.smoothness;

  json estimator = {
      {"kind", config.estimator == EstimatorKind::kKde ? "kde" : "pde"},
      {"kernel", config.kernel},
      {"basis", config.basis},
      {"tuning", TuningName(config.tuning)},
      {"private", config.private_release},
  };
  if (config.tuning == TuningMode::kFixed) estimator["values"] = config.values;
  if (config.tuning == TuningMode::kAdaptive) {
    json collection = {{"type", CollectionTypeName(config.collection.type)}};
    if (config.collection.type == CollectionSpec::Type::kExplicit) {
      collection["values"] = config.collection.values;
    }
    estimator["collection"] = collection;
  }
  json selector = {{"c1", config.constants.c1},
                   {"c2", config.constants.c2},
                   {"scale", config.constants.scale},
                   {"oracle_constant", nullptr}};
  if (config.oracle_constant) selector["oracle_constant"] = *config.oracle_constant;

  json document = {
      {"schema_version", config.schema_version},
      {"density", density},
      {"estimator", estimator},
      {"t", config.t},
      {"n", config.ns},
      {"replications", config.replications},
      {"seed", config.seed},
      {"traces_per_cell", config.traces_per_cell},
      {"selector", selector},
      {"output",
       {{"risk_csv", config.output.risk_csv},
        {"rate_csv", config.output.rate_csv},
        {"trace_csv", config.output.trace_csv}}},
  };
  if (!config.alphas.empty()) document["alpha"] = config.alphas;
  return document;
}

TestDensity BuildDensity(const DensitySpec& spec) {
  const json& p = spec.params;
  const double beta = spec.smoothness;
  try {
    if (spec.family == "uniform") return TestDensity(Uniform01{}, beta);
    if (spec.family == "normal") {
      return TestDensity(NormalFamily{p.at("mean"), p.at("sd")}, beta);
    }
    if (spec.family == "triangular") {
      return TestDensity(Triangular{p.at("lo"), p.at("mode"), p.at("hi")}, beta);
    }
    if (spec.family == "beta_mixture") {
      return TestDensity(
          BetaMixture{p.at("weights").get<std::vector<double>>(),
                      p.at("a").get<std::vector<double>>(),
                      p.at("b").get<std::vector<double>>()},
          beta);
    }
    if (spec.family == "trig_polynomial") {
      return TestDensity(
          TrigPolynomial{p.at("coefficients").get<std::vector<double>>()}, beta);
    }
    if (spec.family == "hypothesis") {
      const HypothesisBase base = p.at("base") == "gaussian" ? HypothesisBase::kGaussian
                                                             : HypothesisBase::kUniform;
      auto pair = MakeHypothesisPair(p.at("beta"), p.at("radius"), p.at("t"),
                                     p.at("n"), p.at("alpha"), base);
      return p.at("member") == 0 ? pair.first : pair.second;
    }
  } catch (const DomainError& e) {
    throw ConfigError("density", e.what());
  }
  throw ConfigError("density.family", "unknown family '" + spec.family + "'");
}

ExperimentGrid BuildGrid(const ExperimentConfig& config) {
  ExperimentGrid grid;
  grid.density = BuildDensity(config.density);
  grid.estimator = config.estimator;
  grid.tuning = config.tuning;
  grid.private_release = config.private_release;
  grid.kernel = Kernel(ParseKernelFamily(config.kernel));
  grid.basis = ParseBasisFamily(config.basis);
  grid.t = config.t;
  grid.tuning_values = config.values;
  grid.collection = config.collection;
  grid.ns = config.ns;
  grid.alphas = config.alphas;
  grid.replications = config.replications;
  grid.seed = config.seed;
  grid.constants = config.constants;
  grid.oracle_constant = config.oracle_constant.value_or(-1.0);
  grid.traces_per_cell = config.traces_per_cell;
  grid.Validate();
  return grid;
}

}  // namespace ldpd
