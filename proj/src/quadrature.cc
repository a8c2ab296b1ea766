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

#include "ldpd/quadrature.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ldpd/errors.h"

namespace ldpd {

double Integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints,
                 const QuadratureOptions& options) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "integration bounds must be finite with a <= b, got [" << a << ", "
        << b << "]";
    throw QuadratureError(msg.str());
  }
  if (a == b) return 0.0;

  std::vector<double> nodes{a, b};
  for (double p : breakpoints) {
    if (p > a && p < b) nodes.push_back(p);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double error = 0.0;
    double l1 = 0.0;
    total += Rule::integrate(f, nodes[i], nodes[i + 1], options.max_depth,
                             1e-12, &error, &l1);
    total_error += error;
  }
  if (!std::isfinite(total) || total_error > options.absolute_tolerance) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: value "
        << total << ", error estimate " << total_error << " > "
        << options.absolute_tolerance;
    throw QuadratureError(msg.str());
  }
  return total;
}

}  // namespace ldpd
