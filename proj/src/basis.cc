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

#include "ldpd/basis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "ldpd/errors.h"

namespace ldpd {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kCertificationGrid = 10000;

void CheckUnitInterval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "basis argument " << x << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

std::size_t HistogramBin(double x, std::size_t d) {
  const auto bin = static_cast<std::size_t>(std::floor(x * static_cast<double>(d)));
  return std::min(bin, d - 1);
}

}  // namespace

Basis::Basis(BasisFamily family, std::size_t d_max)
    : family_(family), d_max_(d_max) {
  if (d_max == 0) throw DomainError("basis d_max must be at least 1");
  phi0_ = family == BasisFamily::kTrigonometric ? 2.0 : 1.0;
}

double Basis::Eval(std::size_t j, double x, std::size_t d) const {
  CheckUnitInterval(x);
  if (j < 1 || j > d) {
    std::ostringstream msg;
    msg << "basis index " << j << " outside 1.." << d;
    throw DomainError(msg.str());
  }
  if (family_ == BasisFamily::kHistogram) {
    return HistogramBin(x, d) == j - 1 ? std::sqrt(static_cast<double>(d)) : 0.0;
  }
  if (j == 1) return 1.0;
  const double k = static_cast<double>(j / 2);
  return j % 2 == 0 ? kSqrt2 * std::cos(kTwoPi * k * x)
                    : kSqrt2 * std::sin(kTwoPi * k * x);
}

double Basis::KernelSum(std::size_t d, double t, double x) const {
  double out = 0.0;
  const std::size_t dims[] = {d};
  KernelSums(t, x, dims, std::span<double>(&out, 1));
  return out;
}

void Basis::KernelSums(double t, double x, std::span<const std::size_t> dims,
                       std::span<double> out) const {
  CheckUnitInterval(x);
  CheckUnitInterval(t);
  if (family_ == BasisFamily::kHistogram) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const std::size_t d = dims[i];
      out[i] = HistogramBin(x, d) == HistogramBin(t, d) ? static_cast<double>(d)
                                                        : 0.0;
    }
    return;
  }
  // Running sum of phi_j(x) phi_j(t), emitted whenever j reaches the next
  // requested dimension. cos/sin of k * 2 pi x are advanced by rotation.
  const double cx1 = std::cos(kTwoPi * x), sx1 = std::sin(kTwoPi * x);
  const double ct1 = std::cos(kTwoPi * t), st1 = std::sin(kTwoPi * t);
  double cx = 1.0, sx = 0.0, ct = 1.0, st = 0.0;
  double sum = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t d = dims[i];
    if (d == 0) throw DomainError("dimension must be at least 1");
    for (; j < d;) {
      ++j;
      if (j == 1) {
        sum += 1.0;
      } else if (j % 2 == 0) {
        const double cx_next = cx * cx1 - sx * sx1;
        sx = sx * cx1 + cx * sx1;
        cx = cx_next;
        const double ct_next = ct * ct1 - st * st1;
        st = st * ct1 + ct * st1;
        ct = ct_next;
        sum += 2.0 * cx * ct;
      } else {
        sum += 2.0 * sx * st;
      }
    }
    out[i] = sum;
  }
}

std::vector<double> Basis::Breakpoints(std::size_t d) const {
  std::vector<double> points;
  if (family_ == BasisFamily::kHistogram) {
    for (std::size_t k = 0; k <= d; ++k) {
      points.push_back(static_cast<double>(k) / static_cast<double>(d));
    }
  } else {
    // Quarter periods of the highest frequency keep Gauss-Kronrod panels short
    // for oscillatory coefficients.
    const std::size_t pieces = 4 * std::max<std::size_t>(1, d / 2);
    for (std::size_t k = 0; k <= pieces; ++k) {
      points.push_back(static_cast<double>(k) / static_cast<double>(pieces));
    }
  }
  return points;
}

std::string_view Basis::name() const {
  return family_ == BasisFamily::kTrigonometric ? "trigonometric" : "histogram";
}

double VerifyPhi0(const Basis& basis, std::size_t d) {
  if (d == 0 || d > basis.d_max()) {
    std::ostringstream msg;
    msg << "dimension " << d << " outside 1.." << basis.d_max();
    throw DomainError(msg.str());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < kCertificationGrid; ++i) {
    const double x =
        static_cast<double>(i) / static_cast<double>(kCertificationGrid - 1);
    double sum = 0.0;
    for (std::size_t j = 1; j <= d; ++j) {
      const double v = basis.Eval(j, x, d);
      sum += v * v;
    }
    worst = std::max(worst, sum / static_cast<double>(d));
  }
  if (worst > basis.phi0() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << basis.name() << " basis violates phi0 = " << basis.phi0()
        << " at d = " << d << " (observed " << worst << ")";
    throw BasisCertificationError(msg.str());
  }
  return worst;
}

BasisFamily ParseBasisFamily(std::string_view name) {
  if (name == "trigonometric" || name == "trig") return BasisFamily::kTrigonometric;
  if (name == "histogram") return BasisFamily::kHistogram;
  throw DomainError("unknown basis family '" + std::string(name) +
                    "' (expected trigonometric or histogram)");
}

}  // namespace ldpd
