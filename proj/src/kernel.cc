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

#include "ldpd/kernel.h"

#include <cmath>

#include "ldpd/errors.h"

namespace ldpd {

Kernel::Kernel(KernelFamily family) : family_(family) {
  switch (family) {
    case KernelFamily::kRectangular:
      sup_norm_ = 1.0;
      l2_norm_sq_ = 1.0;
      support_radius_ = 0.5;
      break;
    case KernelFamily::kTriangular:
      sup_norm_ = 1.0;
      l2_norm_sq_ = 2.0 / 3.0;
      support_radius_ = 1.0;
      break;
    case KernelFamily::kEpanechnikov:
      sup_norm_ = 0.75;
      l2_norm_sq_ = 0.6;
      support_radius_ = 1.0;
      break;
  }
}

double Kernel::operator()(double u) const {
  const double a = std::abs(u);
  switch (family_) {
    case KernelFamily::kRectangular:
      return a <= 0.5 ? 1.0 : 0.0;
    case KernelFamily::kTriangular:
      return a < 1.0 ? 1.0 - a : 0.0;
    case KernelFamily::kEpanechnikov:
      return a < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
  }
  return 0.0;
}

std::string_view Kernel::name() const {
  switch (family_) {
    case KernelFamily::kRectangular:
      return "rectangular";
    case KernelFamily::kTriangular:
      return "triangular";
    case KernelFamily::kEpanechnikov:
      return "epanechnikov";
  }
  return "unknown";
}

std::vector<double> Kernel::breakpoints() const {
  if (family_ == KernelFamily::kTriangular) return {-1.0, 0.0, 1.0};
  return {-support_radius_, support_radius_};
}

KernelFamily ParseKernelFamily(std::string_view name) {
  if (name == "rectangular") return KernelFamily::kRectangular;
  if (name == "triangular") return KernelFamily::kTriangular;
  if (name == "epanechnikov") return KernelFamily::kEpanechnikov;
  throw DomainError("unknown kernel family '" + std::string(name) +
                    "' (expected rectangular, triangular or epanechnikov)");
}

}  // namespace ldpd
