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

#ifndef LDPD_QUADRATURE_H_
#define LDPD_QUADRATURE_H_

#include <functional>
#include <span>

namespace ldpd {

struct QuadratureOptions {
  double absolute_tolerance = 1e-8;
  unsigned max_depth = 18;
};

// Adaptive Gauss-Kronrod (G10/K21) integral of `f` over [a, b]. The interval
// is split at every breakpoint inside (a, b) so that kinks and jumps of the
// integrand sit on panel boundaries. Throws QuadratureError when the summed
// error estimate exceeds the absolute tolerance or the result is not finite.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 const QuadratureOptions& options = {});

}  // namespace ldpd

#endif  // LDPD_QUADRATURE_H_
