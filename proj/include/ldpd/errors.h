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

#ifndef LDPD_ERRORS_H_
#define LDPD_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace ldpd {

// Argument outside the mathematical domain of an operation (h <= 0, x outside
// [0,1] for a basis on [0,1], ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature did not reach the requested absolute tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rejection sampler exhausted its attempt budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A release was requested with a noise scale below sensitivity / alpha.
class PrivacyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BasisCertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Monte Carlo cell aborted; the message names the cell and replication.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration. `key` is the JSON path of the offending
// entry, e.g. "alpha[1]".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace ldpd

#endif  // LDPD_ERRORS_H_
