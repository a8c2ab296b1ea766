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

#ifndef LDPD_KERNEL_H_
#define LDPD_KERNEL_H_

#include <string>
#include <string_view>
#include <vector>

namespace ldpd {

enum class KernelFamily { kRectangular, kTriangular, kEpanechnikov };

// A bounded, square-integrable kernel integrating to one. The norms are
// stored in closed form:
//
//   family        support      |K|_inf   |K|_2^2
//   rectangular   [-1/2, 1/2]  1         1
//   triangular    [-1, 1]      1         2/3
//   epanechnikov  [-1, 1]      3/4       3/5
class Kernel {
 public:
  explicit Kernel(KernelFamily family = KernelFamily::kRectangular);

  static Kernel Rectangular() { return Kernel(KernelFamily::kRectangular); }
  static Kernel Triangular() { return Kernel(KernelFamily::kTriangular); }
  static Kernel Epanechnikov() { return Kernel(KernelFamily::kEpanechnikov); }

  double operator()(double u) const;

  KernelFamily family() const { return family_; }
  std::string_view name() const;
  double sup_norm() const { return sup_norm_; }
  double l2_norm_sq() const { return l2_norm_sq_; }
  // K vanishes outside [-support_radius, support_radius].
  double support_radius() const { return support_radius_; }
  // Points where K is not smooth.
  std::vector<double> breakpoints() const;

 private:
  KernelFamily family_;
  double sup_norm_;
  double l2_norm_sq_;
  double support_radius_;
};

// Throws DomainError for unknown names.
KernelFamily ParseKernelFamily(std::string_view name);

}  // namespace ldpd

#endif  // LDPD_KERNEL_H_
