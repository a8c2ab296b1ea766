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

#ifndef LDPD_BASIS_H_
#define LDPD_BASIS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ldpd {

enum class BasisFamily { kTrigonometric, kHistogram };

// Orthonormal system on L^2([0,1]) with a certified constant phi0 such that
// sup_x sum_{j<=d} phi_j(x)^2 <= d * phi0 for every d <= d_max.
//
// Trigonometric: phi_1 = 1, phi_{2k}(x) = sqrt(2) cos(2 pi k x),
// phi_{2k+1}(x) = sqrt(2) sin(2 pi k x); phi0 = 2.
//
// Histogram: the d-dimensional system is phi_j = sqrt(d) 1[(j-1)/d, j/d)
// (the last bin is closed at 1). It is not nested in d, so every evaluation
// takes the dimension of the system it belongs to. phi0 = 1.
class Basis {
 public:
  Basis(BasisFamily family, std::size_t d_max);

  static Basis Trigonometric(std::size_t d_max) {
    return Basis(BasisFamily::kTrigonometric, d_max);
  }
  static Basis Histogram(std::size_t d_max) {
    return Basis(BasisFamily::kHistogram, d_max);
  }

  // phi_j(x) of the d-dimensional system. Requires 1 <= j <= d and
  // x in [0,1]; throws DomainError otherwise.
  double Eval(std::size_t j, double x, std::size_t d) const;

  // g_d(x) = sum_{j<=d} phi_j(x) phi_j(t).
  double KernelSum(std::size_t d, double t, double x) const;

  // g_d(x) for every d in `dims` (ascending), in one pass for the nested
  // trigonometric system.
  void KernelSums(double t, double x, std::span<const std::size_t> dims,
                  std::span<double> out) const;

  // Points of [0,1] where phi_1..phi_d are not smooth.
  std::vector<double> Breakpoints(std::size_t d) const;

  BasisFamily family() const { return family_; }
  std::string_view name() const;
  double phi0() const { return phi0_; }
  std::size_t d_max() const { return d_max_; }

 private:
  BasisFamily family_;
  std::size_t d_max_;
  double phi0_;
};

// Returns max over a 10^4-point grid of sum_{j<=d} phi_j(x)^2 / d. Throws
// BasisCertificationError if it exceeds phi0, DomainError if d > d_max.
double VerifyPhi0(const Basis& basis, std::size_t d);

BasisFamily ParseBasisFamily(std::string_view name);

}  // namespace ldpd

#endif  // LDPD_BASIS_H_
