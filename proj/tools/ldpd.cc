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

// ldpd: experiment runner and audit front end.
//
//   ldpd run <config.json> [--jobs N] [--seed S]
//   ldpd audit privacy|bernstein|laplace-tail|petrov [flags]
//   ldpd calibrate [--out PATH] [--reps R] [--jobs N] [--seed S]
//
// Exit codes: 0 success, 1 an audited bound is violated, 2 invalid
// configuration or flags, 3 runtime failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "ldpd/audits.h"
#include "ldpd/config.h"
#include "ldpd/errors.h"
#include "ldpd/mechanism_audit.h"
#include "ldpd/runner.h"
#include "ldpd/simulation.h"

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kInvalid = 2;
constexpr int kRuntime = 3;

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("ldpd");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LDPD_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

struct RunFlags {
  std::string config;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
};

int Run(const RunFlags& flags) {
  ldpd::ExperimentConfig config;
  try {
    config = ldpd::LoadConfig(flags.config);
  } catch (const ldpd::ConfigError& e) {
    std::cerr << "error: " << flags.config << ": " << e.what() << "\n";
    return kInvalid;
  }
  try {
    const ldpd::RunArtifacts artifacts =
        ldpd::RunExperiment(config, flags.jobs, flags.seed);
    ldpd::WriteArtifacts(config, artifacts);
    std::cout << "cells: " << artifacts.report.cells.size()
              << "\nrisk: " << config.output.risk_csv
              << "\nrates: " << config.output.rate_csv << "\n";
    if (config.tuning == ldpd::TuningMode::kAdaptive) {
      std::cout << "traces: " << config.output.trace_csv << "\n";
    }
  } catch (const ldpd::ConfigError& e) {
    std::cerr << "error: " << flags.config << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << flags.config << ": " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}

struct PrivacyFlags {
  double alpha = 0.5;
  std::string mechanism = "kde";
  std::optional<double> h;
  std::optional<std::size_t> d;
  std::string kernel = "rectangular";
  std::string basis = "trigonometric";
  double t = 0.5;
  std::size_t releases = 1;
  std::vector<double> gammas = {0.01, 0.05, 0.1};
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
};

int AuditPrivacy(const PrivacyFlags& flags) {
  ldpd::MechanismSpec spec;
  try {
    if (flags.mechanism == "kde") {
      if (!flags.h || flags.d) throw ldpd::DomainError("kde needs --h and no --d");
      spec.kind = ldpd::MechanismKind::kKde;
      spec.h = *flags.h;
      if (!(spec.h > 0.0 && spec.h <= 1.0)) throw ldpd::DomainError("--h must lie in (0, 1]");
      spec.kernel = ldpd::ParseKernelFamily(flags.kernel);
    } else if (flags.mechanism == "pde") {
      if (!flags.d || flags.h) throw ldpd::DomainError("pde needs --d and no --h");
      spec.kind = ldpd::MechanismKind::kPde;
      spec.d = *flags.d;
      if (spec.d == 0) throw ldpd::DomainError("--d must be positive");
      spec.basis = ldpd::ParseBasisFamily(flags.basis);
      if (!(flags.t >= 0.0 && flags.t <= 1.0)) throw ldpd::DomainError("--t must lie in [0, 1]");
    } else {
      throw ldpd::DomainError("--mechanism must be kde or pde");
    }
    if (flags.releases == 0) throw ldpd::DomainError("--releases must be positive");
    if (flags.reps == 0) throw ldpd::DomainError("--reps must be positive");
    for (double g : flags.gammas) {
      if (!(g > 0.0 && g < 1.0)) throw ldpd::DomainError("--gamma values must lie in (0, 1)");
    }
    spec.t = flags.t;
    spec.alpha = flags.alpha;
    spec.releases = flags.releases;
    ldpd::PrivacyBudget(spec.alpha, spec.releases);
  } catch (const ldpd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }

  const ldpd::MechanismAuditReport report =
      ldpd::AuditMechanism(spec, flags.gammas, flags.reps, flags.seed);
  std::cout << std::setprecision(10);
  std::cout << "mechanism: " << spec.Describe() << "\n"
            << "sensitivity: " << report.sensitivity << "\n"
            << "noise scale b: " << report.b << "\n"
            << "per-release alpha: " << report.per_release_alpha << "\n"
            << "composed alpha: " << report.composed_alpha << "\n"
            << "max log-ratio (100 x 100 x 200 grid): " << report.grid.max_log_ratio
            << (report.grid.certified ? " [certified]" : " [VIOLATED]") << "\n"
            << "tight-pair log-ratio: " << report.tight_pair << "\n"
            << "deniability pair: x = " << report.x << ", x' = " << report.x_prime
            << "\n"
            << "gamma,empirical_power,bound,tolerance,status\n";
  for (const ldpd::DeniabilityRow& row : report.deniability) {
    std::cout << row.gamma << ',' << row.audit.empirical_power << ','
              << row.audit.bound << ',' << row.audit.tolerance << ','
              << (row.audit.Passes() ? "ok" : "VIOLATED") << "\n";
  }
  return report.Passes() ? kOk : kViolated;
}

int PrintTailRows(const std::vector<ldpd::TailAuditRow>& rows) {
  std::cout << std::setprecision(10) << "epsilon,empirical,bound,se,status\n";
  bool violated = false;
  for (const ldpd::TailAuditRow& row : rows) {
    std::cout << row.epsilon << ',' << row.empirical << ',' << row.bound << ','
              << row.se << ',' << (row.violated ? "VIOLATED" : "ok") << "\n";
    violated = violated || row.violated;
  }
  return violated ? kViolated : kOk;
}

struct TailFlags {
  std::string dist = "uniform";
  double b = 1.0;
  std::size_t n = 100;
  std::vector<double> eps = {0.1, 0.2};
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
};

int AuditBernstein(const TailFlags& flags) {
  std::vector<ldpd::TailAuditRow> rows;
  try {
    const ldpd::AuditDistribution dist = ldpd::ParseAuditDistribution(flags.dist);
    if (dist == ldpd::AuditDistribution::kLaplace) {
      throw ldpd::DomainError("bernstein needs a bounded distribution");
    }
    if (flags.n == 0 || flags.reps == 0) throw ldpd::DomainError("--n and --reps must be positive");
    for (double e : flags.eps) {
      if (!(e >= 0.0)) throw ldpd::DomainError("--eps values must be nonnegative");
    }
    std::cout << "distribution: " << flags.dist << " (b = " << ldpd::DistributionBound(dist)
              << ", v^2 = " << ldpd::DistributionVariance(dist) << "), n = " << flags.n
              << ", reps = " << flags.reps << "\n";
    rows = ldpd::AuditBernstein(dist, flags.n, flags.eps, flags.reps, flags.seed);
  } catch (const ldpd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return PrintTailRows(rows);
}

int AuditLaplaceTail(const TailFlags& flags) {
  std::vector<ldpd::TailAuditRow> rows;
  try {
    if (!(flags.b > 0.0)) throw ldpd::DomainError("--b must be positive");
    if (flags.n == 0 || flags.reps == 0) throw ldpd::DomainError("--n and --reps must be positive");
    for (double e : flags.eps) {
      if (!(e >= 0.0)) throw ldpd::DomainError("--eps values must be nonnegative");
    }
    std::cout << "Laplace(0, " << flags.b << "), n = " << flags.n
              << ", reps = " << flags.reps << "\n";
    rows = ldpd::AuditLaplaceTail(flags.b, flags.n, flags.eps, flags.reps, flags.seed);
  } catch (const ldpd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return PrintTailRows(rows);
}

struct PetrovFlags {
  std::string dist = "rademacher";
  unsigned m = 4;
  std::vector<std::size_t> ns = {10, 100};
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
};

int AuditPetrov(const PetrovFlags& flags) {
  std::vector<ldpd::PetrovAuditRow> rows;
  try {
    const ldpd::AuditDistribution dist = ldpd::ParseAuditDistribution(flags.dist);
    rows = ldpd::AuditPetrov(dist, flags.ns, flags.m, flags.reps, flags.seed);
  } catch (const ldpd::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  std::cout << std::setprecision(10) << "distribution: " << flags.dist
            << ", m = " << flags.m << "\n"
            << "n,ratio,se,exact,reference_c,status\n";
  bool violated = false;
  double worst = 0.0;
  for (const ldpd::PetrovAuditRow& row : rows) {
    std::cout << row.n << ',' << row.ratio << ',' << row.se << ','
              << (row.exact ? "yes" : "no") << ',' << row.reference_constant << ','
              << (row.violated ? "VIOLATED" : "ok") << "\n";
    violated = violated || row.violated;
    worst = std::max(worst, row.ratio);
  }
  std::cout << "max ratio: " << worst << "\n";
  return violated ? kViolated : kOk;
}

struct CalibrateFlags {
  std::string out = "data/oracle_constant_calibration.csv";
  std::size_t reps = 500;
  std::size_t jobs = 1;
  std::uint64_t seed = 2026;
};

int Calibrate(const CalibrateFlags& flags) {
  try {
    const std::vector<ldpd::ExperimentGrid> grids =
        ldpd::CalibrationReferenceGrids(flags.reps, flags.seed);
    const std::vector<ldpd::CalibrationRow> rows =
        ldpd::CalibrateOracleConstant(grids, ldpd::RunOptions{flags.jobs});
    std::ofstream out(flags.out);
    if (!out) throw std::runtime_error("cannot write " + flags.out);
    ldpd::WriteCalibrationCsv(out, rows);
    double required = 0.0;
    for (const ldpd::CalibrationRow& row : rows) required = std::max(required, row.required_c);
    std::cout << "cells: " << rows.size() << "\nrequired C: " << required
              << "\nwrote " << flags.out << "\n";
  } catch (const ldpd::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}

void AddPrivacyOptions(CLI::App* cmd, PrivacyFlags& flags) {
  // --h is the bandwidth here, so help is long-form only.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--alpha", flags.alpha, "Total privacy level in (0, 1)")->required();
  cmd->add_option("--mechanism", flags.mechanism, "kde or pde");
  cmd->add_option("--h", flags.h, "Bandwidth (kde)");
  cmd->add_option("--d", flags.d, "Dimension (pde)");
  cmd->add_option("--kernel", flags.kernel, "rectangular, triangular or epanechnikov");
  cmd->add_option("--basis", flags.basis, "trigonometric or histogram");
  cmd->add_option("--t", flags.t, "Evaluation point");
  cmd->add_option("--releases", flags.releases, "Releases sharing the budget");
  cmd->add_option("--gamma", flags.gammas, "Test levels");
  cmd->add_option("--reps", flags.reps, "Monte Carlo draws per test");
  cmd->add_option("--seed", flags.seed, "Base seed");
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Locally private pointwise density estimation"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run an experiment grid from a JSON config");
  run->add_option("config", run_flags.config, "Config path")->required();
  run->add_option("--jobs", run_flags.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", run_flags.seed, "Override the config seed");

  CLI::App* audit = app.add_subcommand("audit", "Audit privacy or a concentration bound");
  audit->require_subcommand(1);
  PrivacyFlags privacy_flags;
  AddPrivacyOptions(audit->add_subcommand("privacy", "DP ratio and deniability audit"),
                    privacy_flags);
  CLI::App* audit_privacy =
      app.add_subcommand("audit-privacy", "Same as 'audit privacy'");
  AddPrivacyOptions(audit_privacy, privacy_flags);

  TailFlags bernstein_flags;
  CLI::App* bernstein = audit->add_subcommand("bernstein", "Bernstein inequality audit");
  bernstein->add_option("--dist", bernstein_flags.dist, "uniform, rademacher or zero");
  bernstein->add_option("--n", bernstein_flags.n, "Summands");
  bernstein->add_option("--eps", bernstein_flags.eps, "Deviations");
  bernstein->add_option("--reps", bernstein_flags.reps, "Monte Carlo draws");
  bernstein->add_option("--seed", bernstein_flags.seed, "Base seed");

  TailFlags laplace_flags;
  laplace_flags.n = 64;
  laplace_flags.eps = {1.0};
  CLI::App* laplace = audit->add_subcommand("laplace-tail", "Laplace tail bound audit");
  laplace->add_option("--b", laplace_flags.b, "Laplace scale");
  laplace->add_option("--n", laplace_flags.n, "Summands");
  laplace->add_option("--eps", laplace_flags.eps, "Deviations");
  laplace->add_option("--reps", laplace_flags.reps, "Monte Carlo draws");
  laplace->add_option("--seed", laplace_flags.seed, "Base seed");

  PetrovFlags petrov_flags;
  CLI::App* petrov = audit->add_subcommand("petrov", "Moment inequality audit");
  petrov->add_option("--dist", petrov_flags.dist, "rademacher, uniform or laplace");
  petrov->add_option("--m", petrov_flags.m, "Even moment order");
  petrov->add_option("--n", petrov_flags.ns, "Summand counts");
  petrov->add_option("--reps", petrov_flags.reps, "Monte Carlo draws");
  petrov->add_option("--seed", petrov_flags.seed, "Base seed");

  CalibrateFlags calibrate_flags;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Calibrate the oracle-inequality constant C");
  calibrate->add_option("--out", calibrate_flags.out, "Output CSV");
  calibrate->add_option("--reps", calibrate_flags.reps, "Replications per cell");
  calibrate->add_option("--jobs", calibrate_flags.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--seed", calibrate_flags.seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (run->parsed()) return Run(run_flags);
    if (audit_privacy->parsed()) return AuditPrivacy(privacy_flags);
    if (audit->got_subcommand("privacy")) return AuditPrivacy(privacy_flags);
    if (bernstein->parsed()) return AuditBernstein(bernstein_flags);
    if (laplace->parsed()) return AuditLaplaceTail(laplace_flags);
    if (petrov->parsed()) return AuditPetrov(petrov_flags);
    if (calibrate->parsed()) return Calibrate(calibrate_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kInvalid;
}
