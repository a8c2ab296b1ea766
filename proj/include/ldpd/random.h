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

#ifndef LDPD_RANDOM_H_
#define LDPD_RANDOM_H_

#include <cstdint>
#include <random>

namespace ldpd {

// Mixes (base_seed, cell, replication) into a 64-bit stream seed. Distinct
// triples give unrelated seeds, so parallel replications never share a stream.
std::uint64_t StreamSeed(std::uint64_t base_seed, std::uint64_t cell,
                         std::uint64_t replication);

// Explicitly seeded generator. The engine output sequence is fixed by the C++
// standard and the conversions below are hand-rolled (the <random>
// distributions are implementation-defined), so draws are bit-reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform();

  // Standard normal via Box-Muller; one cached spare.
  double Normal();

  std::uint64_t Bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ldpd

#endif  // LDPD_RANDOM_H_
