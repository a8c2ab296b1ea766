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

#ifndef LDPD_DENSITIES_H_
#define LDPD_DENSITIES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ldpd/basis.h"
#include "ldpd/kernel.h"
#include "ldpd/random.h"

namespace ldpd {

struct Interval {
  double lo;
  double hi;
};

// Compactly supported, mean-zero perturbation H(u) = K(u) - K(u - 1) with
// the mollifier K(u) = a exp(-1 / (1 - u^2)) 1{|u| < 1}. The amplitude `a` is
// fixed so that the Hoelder seminorm bound
//   max(osc H, |H'|_inf, osc H', |H''|_inf)
// equals 1/2, which places H in the Hoelder ball of radius 1/2 for every
// smoothness beta <= 2.
class BumpFunction {
 public:
  BumpFunction();

  double operator()(double u) const;
  double Derivative(double u) const;
  double SecondDerivative(double u) const;

  double amplitude() const { return amplitude_; }
  double hoelder_beta() const { return 2.0; }
  double hoelder_constant() const { return hoelder_constant_; }
  double sup_norm() const { return sup_norm_; }
  double l1_norm() const { return l1_norm_; }
  double value_at_zero() const { return (*this)(0.0); }
  // H vanishes outside (-1, 2); sign change at 1/2.
  std::vector<double> breakpoints() const { return {-1.0, 0.0, 0.5, 1.0, 2.0}; }

 private:
  double amplitude_;
  double hoelder_constant_;
  double sup_norm_;
  double l1_norm_;
};

enum class HypothesisBase { kGaussian, kUniform };

struct Uniform01 {};
struct NormalFamily {
  double mean = 0.0;
  double sd = 1.0;
};
// Mixture of Beta(a_k, b_k) components with a_k, b_k >= 1 (bounded).
struct BetaMixture {
  std::vector<double> weights;
  std::vector<double> a;
  std::vector<double> b;
};
// Triangle on [lo, hi] with its peak at `mode`.
struct Triangular {
  double lo = 0.0;
  double mode = 0.5;
  double hi = 1.0;
};
// f = 1 + sum_k coefficients[k] * phi_{k+2}, phi the trigonometric basis.
struct TrigPolynomial {
  std::vector<double> coefficients;
};
// Lower-bound hypothesis f0: phi_sigma (Gaussian base) or the uniform
// density (uniform base).
struct HypothesisF0 {
  HypothesisBase base = HypothesisBase::kGaussian;
  double sigma = 1.0;
};
// f1(x) = f0(x) + (L/2) h^beta H((x - t) / h).
struct HypothesisF1 {
  HypothesisBase base = HypothesisBase::kGaussian;
  double sigma = 1.0;
  double beta = 1.0;
  double radius_l = 1.0;
  double t = 0.0;
  double h = 0.1;
  BumpFunction bump;
};

using DensityFamily = std::variant<Uniform01, NormalFamily, BetaMixture,
                                   Triangular, TrigPolynomial, HypothesisF0,
                                   HypothesisF1>;

struct SamplerOptions {
  // Per-draw attempt budget of the rejection samplers.
  std::size_t max_attempts = 10000;
};

// A univariate density with exact evaluation, seeded sampling and a declared
// smoothness. Immutable after construction.
class TestDensity {
 public:
  // Validates parameters (throws DomainError) and computes the sup norm.
  explicit TestDensity(DensityFamily family, double smoothness_beta = 0.0,
                       SamplerOptions sampler = {});

  static TestDensity Uniform() { return TestDensity(Uniform01{}); }
  static TestDensity Normal(double mean, double sd) {
    return TestDensity(NormalFamily{mean, sd});
  }

  // f(x); 0 outside the support.
  double operator()(double x) const { return Eval(x); }
  double Eval(double x) const;

  // n iid draws, deterministic in `seed`. Throws SamplingError when a
  // rejection sampler exceeds its attempt budget.
  std::vector<double> Sample(std::size_t n, std::uint64_t seed) const;
  void SampleInto(std::span<double> out, Rng& rng) const;
  double Draw(Rng& rng) const;

  const DensityFamily& family() const { return family_; }
  std::string name() const;
  Interval support() const;
  // Finite interval carrying all but a negligible (< 1e-300) part of the mass.
  Interval integration_range() const;
  // Kinks, jumps and shape landmarks used to split quadrature panels.
  std::vector<double> breakpoints() const;
  double smoothness_beta() const { return smoothness_beta_; }
  double sup_norm() const { return sup_norm_; }
  bool supported_on_unit_interval() const;

 private:
  DensityFamily family_;
  double smoothness_beta_;
  double sup_norm_;
  SamplerOptions sampler_;
  std::vector<double> beta_log_norm_;  // BetaMixture: -log B(a_k, b_k)
};

// Total mass by quadrature over integration_range().
double TotalMass(const TestDensity& f);

// f_h(t) = int K_h(x - t) f(x) dx.
double SmoothedValue(const TestDensity& f, const Kernel& kernel, double h,
                     double t);

// <f, phi_j> by quadrature. Requires support in [0,1].
double ProjectionCoefficient(const TestDensity& f, const Basis& basis,
                             std::size_t j, std::size_t d);

// f_d(t) = sum_{j<=d} <f, phi_j> phi_j(t). Throws DomainError when the
// support of f is not inside [0,1].
double ProjectedValue(const TestDensity& f, const Basis& basis, std::size_t d,
                      double t);

// h_n = (n (e^alpha - 1)^2)^(-1 / (2 beta + 2)).
double HypothesisBandwidth(double beta, double n, double alpha);

// Smallest sigma in {1, 2, 4, 8} whose Gaussian density lies in the Hoelder
// ball of radius L/2 for smoothness beta, using the bound
// osc(f^(l)) (beta integer) or max(|f^(l+1)|_inf, osc f^(l)), l = floor(beta).
double GaussianBaseSigma(double beta, double radius_l);

// Builds (f0, f1) for smoothness beta in (0, 2], Hoelder radius L, point t,
// sample size n and privacy level alpha. Throws DomainError with
// "n too small for valid hypothesis pair" when f1 dips below zero (or, for
// the uniform base, when the perturbation leaves [0,1]).
std::pair<TestDensity, TestDensity> MakeHypothesisPair(double beta,
                                                       double radius_l,
                                                       double t, double n,
                                                       double alpha,
                                                       HypothesisBase base);

// int |f0(x) - f1(x)| dx. Note: no factor 1/2, i.e. twice the usual total
// variation distance.
double TotalVariation(const TestDensity& f0, const TestDensity& f1);

}  // namespace ldpd

#endif  // LDPD_DENSITIES_H_
