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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "ldpd/basis.h"
#include "ldpd/densities.h"
#include "ldpd/errors.h"
#include "ldpd/kernel.h"
#include "ldpd/quadrature.h"

namespace ldpd {
namespace {

double NormalPdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

std::vector<TestDensity> AllFamilies() {
  auto pair = MakeHypothesisPair(1.0, 1.0, 0.0, 1e6, 0.5, HypothesisBase::kGaussian);
  auto upair = MakeHypothesisPair(1.5, 1.0, 0.5, 1e6, 0.5, HypothesisBase::kUniform);
  return {
      TestDensity::Uniform(),
      TestDensity::Normal(0.0, 1.0),
      TestDensity::Normal(0.5, 0.1),
      TestDensity(BetaMixture{{0.3, 0.7}, {2.0, 5.0}, {5.0, 2.0}}),
      TestDensity(Triangular{0.0, 0.5, 1.0}),
      TestDensity(Triangular{-1.0, 0.2, 2.0}),
      TestDensity(TrigPolynomial{{0.3, -0.2, 0.1}}),
      pair.first,
      pair.second,
      upair.first,
      upair.second,
  };
}

TEST(DensityTest, EvalExamples) {
  const TestDensity u = TestDensity::Uniform();
  EXPECT_EQ(u(0.5), 1.0);
  EXPECT_EQ(u(1.5), 0.0);
  EXPECT_NEAR(TestDensity::Normal(0.0, 1.0)(0.0), 0.3989422804, 1e-10);
  EXPECT_NEAR(TestDensity::Normal(0.0, 1.0)(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi),
              1e-15);
  const TestDensity tri(Triangular{0.0, 0.5, 1.0});
  EXPECT_NEAR(tri(0.5), 2.0, 1e-15);
  EXPECT_NEAR(tri(0.25), 1.0, 1e-15);
}

TEST(DensityTest, EveryFamilyIntegratesToOneAndIsNonnegative) {
  for (const TestDensity& f : AllFamilies()) {
    EXPECT_NEAR(TotalMass(f), 1.0, 1e-6) << f.name();
    const Interval r = f.integration_range();
    for (int i = 0; i <= 2000; ++i) {
      ASSERT_GE(f(r.lo + (r.hi - r.lo) * i / 2000.0), 0.0) << f.name();
    }
  }
}

TEST(DensityTest, SupNormDominatesGrid) {
  for (const TestDensity& f : AllFamilies()) {
    const Interval r = f.integration_range();
    double grid_max = 0.0;
    for (int i = 0; i <= 20000; ++i) grid_max = std::max(grid_max, f(r.lo + (r.hi - r.lo) * i / 20000.0));
    EXPECT_GE(f.sup_norm() * (1.0 + 1e-9), grid_max) << f.name();
    EXPECT_LE(f.sup_norm(), grid_max * 1.01) << f.name();
  }
}

TEST(DensityTest, SampleIsReproducibleAndSupported) {
  const TestDensity u = TestDensity::Uniform();
  const auto a = u.Sample(3, 7);
  const auto b = u.Sample(3, 7);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a, b);
  for (double x : a) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
  EXPECT_NE(u.Sample(3, 8), a);
}

TEST(DensityTest, NormalSampleMean) {
  const auto xs = TestDensity::Normal(0.0, 1.0).Sample(1000000, 3);
  double sum = 0.0;
  for (double x : xs) sum += x;
  EXPECT_NEAR(sum / xs.size(), 0.0, 0.004);
}

TEST(DensityTest, UniformKolmogorovSmirnov) {
  auto xs = TestDensity::Uniform().Sample(10000, 5);
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  }
  EXPECT_LT(d, 1.63 / std::sqrt(n));
}

// Chi-square goodness of fit on 20 bins covering the bulk of each density;
// the outer bins absorb the tails.
TEST(DensityTest, SamplersPassChiSquare) {
  const std::size_t n = 100000;
  int seed = 100;
  for (const TestDensity& f : AllFamilies()) {
    const Interval r = f.integration_range();
    // Bulk: where the density puts all but a sliver of mass.
    double lo = r.lo, hi = r.hi;
    if (!std::isfinite(f.support().lo) || f.support().hi - f.support().lo > 10.0) {
      const double step = (r.hi - r.lo) / 4000.0;
      double mass = 0.0;
      for (lo = r.lo; mass < 1e-3; lo += step) mass += f(lo) * step;
      mass = 0.0;
      for (hi = r.hi; mass < 1e-3; hi -= step) mass += f(hi) * step;
    }
    std::vector<double> edges(21);
    for (int k = 0; k <= 20; ++k) edges[k] = lo + (hi - lo) * k / 20.0;
    std::vector<double> expected(20);
    double inner = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto points = f.breakpoints();
      expected[k] = Integrate([&](double x) { return f(x); }, edges[k], edges[k + 1], points);
      inner += expected[k];
    }
    // Assign tails to the outer bins.
    const double left_tail = Integrate([&](double x) { return f(x); }, r.lo, lo, f.breakpoints());
    expected[0] += left_tail;
    expected[19] += 1.0 - inner - left_tail;

    std::vector<double> counts(20, 0.0);
    for (double x : f.Sample(n, ++seed)) {
      int k = static_cast<int>(std::floor((x - lo) / (hi - lo) * 20.0));
      counts[std::clamp(k, 0, 19)] += 1.0;
    }
    double chi2 = 0.0;
    int bins = 0;
    for (int k = 0; k < 20; ++k) {
      const double e = expected[k] * n;
      if (e < 5.0) continue;
      chi2 += (counts[k] - e) * (counts[k] - e) / e;
      ++bins;
    }
    const boost::math::chi_squared dist(bins - 1);
    const double p = boost::math::cdf(boost::math::complement(dist, chi2));
    EXPECT_GT(p, 0.001) << f.name() << " chi2=" << chi2;
  }
}

TEST(DensityTest, SmoothedValueExamples) {
  const TestDensity u = TestDensity::Uniform();
  const Kernel rect = Kernel::Rectangular();
  EXPECT_NEAR(SmoothedValue(u, rect, 0.2, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(SmoothedValue(u, rect, 0.2, 0.0), 0.5, 1e-12);
  const TestDensity phi = TestDensity::Normal(0.0, 1.0);
  EXPECT_NEAR(SmoothedValue(phi, rect, 1e-3, 0.0), 0.39894, 1e-4);
  // Closed form for the Gaussian: (Phi(h/2) - Phi(-h/2)) / h.
  const double h = 0.3;
  const double exact = std::erf(h / 2.0 / std::sqrt(2.0)) / h;
  EXPECT_NEAR(SmoothedValue(phi, rect, h, 0.0), exact, 1e-10);
}

TEST(DensityTest, SmoothedValueConvergesMonotonically) {
  const TestDensity phi = TestDensity::Normal(0.3, 1.0);
  for (const Kernel& k : {Kernel::Rectangular(), Kernel::Triangular(), Kernel::Epanechnikov()}) {
    double previous = 1.0;
    for (double h : {0.1, 0.01, 0.001}) {
      const double gap = std::abs(SmoothedValue(phi, k, h, 0.5) - phi(0.5));
      EXPECT_LT(gap, previous) << k.name();
      previous = gap;
    }
  }
}

TEST(DensityTest, TriangularBiasIsMinusH) {
  const TestDensity tri(Triangular{0.0, 0.5, 1.0});
  for (double h : {0.4, 0.1, 0.02}) {
    EXPECT_NEAR(SmoothedValue(tri, Kernel::Rectangular(), h, 0.5) - 2.0, -h, 1e-10);
  }
}

TEST(DensityTest, ProjectedValueExamples) {
  const Basis trig = Basis::Trigonometric(20);
  for (std::size_t d : {1u, 2u, 5u, 9u}) {
    EXPECT_NEAR(ProjectedValue(TestDensity::Uniform(), trig, d, 0.3), 1.0, 1e-10);
  }
  // f(x) = 1 + cos(2 pi x): <f, phi_2> = 1 / sqrt(2), so f_2(0) = 1 + sqrt(2)/sqrt(2) = 2.
  const TestDensity f(TrigPolynomial{{1.0 / std::numbers::sqrt2}});
  EXPECT_NEAR(f(0.0), 2.0, 1e-14);
  EXPECT_NEAR(ProjectedValue(f, trig, 1, 0.0), 1.0, 1e-10);
  EXPECT_NEAR(ProjectionCoefficient(f, trig, 2, 2), 1.0 / std::numbers::sqrt2, 1e-8);
  EXPECT_NEAR(ProjectedValue(f, trig, 2, 0.0), 2.0, 1e-8);
  EXPECT_THROW(ProjectedValue(TestDensity::Normal(0.0, 1.0), trig, 2, 0.5), DomainError);
}

TEST(DensityTest, ParsevalTrigPolynomialBiasVanishes) {
  const TestDensity f(TrigPolynomial{{0.3, -0.2, 0.1, 0.05}});
  const Basis trig = Basis::Trigonometric(12);
  for (std::size_t d = 5; d <= 12; ++d) {
    EXPECT_NEAR(ProjectedValue(f, trig, d, 0.37), f(0.37), 1e-9) << d;
  }
}

TEST(DensityTest, HypothesisBandwidthFormula) {
  const double e = std::exp(0.5) - 1.0;
  EXPECT_NEAR(HypothesisBandwidth(1.0, 1e4, 0.5), std::pow(1e4 * e * e, -0.25), 1e-15);
  // (10^4 * 0.648721^2)^(-1/4) = 4208.4^(-1/4).
  EXPECT_NEAR(HypothesisBandwidth(1.0, 1e4, 0.5), 0.124157, 1e-6);
}

TEST(DensityTest, HypothesisPairProperties) {
  for (HypothesisBase base : {HypothesisBase::kGaussian, HypothesisBase::kUniform}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const double t = base == HypothesisBase::kGaussian ? 0.0 : 0.5;
      const double L = 1.0;
      auto [f0, f1] = MakeHypothesisPair(beta, L, t, 1e6, 0.5, base);
      EXPECT_NEAR(TotalMass(f1), 1.0, 1e-6);
      const double h = HypothesisBandwidth(beta, 1e6, 0.5);
      const BumpFunction bump;
      EXPECT_NEAR(std::abs(f0(t) - f1(t)),
                  0.5 * L * std::pow(h, beta) * std::abs(bump.value_at_zero()), 1e-10);
      const double tv = TotalVariation(f0, f1);
      const double expected = 0.5 * L * std::pow(h, beta + 1.0) * bump.l1_norm();
      EXPECT_NEAR(tv / expected, 1.0, 1e-6);
    }
  }
}

TEST(DensityTest, HypothesisPairRejectsSmallN) {
  try {
    MakeHypothesisPair(1.0, 40.0, 0.5, 2.0, 0.9, HypothesisBase::kUniform);
    FAIL() << "expected an error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("n too small for valid hypothesis pair"),
              std::string::npos);
  }
}

TEST(DensityTest, BumpFunctionInvariants) {
  const BumpFunction bump;
  const auto points = bump.breakpoints();
  EXPECT_NEAR(Integrate([&](double u) { return bump(u); }, -1.0, 2.0, points), 0.0, 1e-8);
  EXPECT_GT(bump.value_at_zero(), 0.0);
  EXPECT_LE(bump.hoelder_constant(), 0.5);
  EXPECT_GT(bump.l1_norm(), 0.0);
  // Lipschitz-type check of the Hoelder(1/2) bound on |H(x) - H(y)| for beta <= 1.
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    for (int j = i + 1; j < 300; j += 7) {
      const double x = -1.0 + 3.0 * i / 299.0, y = -1.0 + 3.0 * j / 299.0;
      worst = std::max(worst, std::abs(bump(x) - bump(y)) / std::sqrt(std::abs(x - y)));
    }
  }
  EXPECT_LE(worst, 0.5);
}

TEST(DensityTest, TotalVariationExamples) {
  const TestDensity u = TestDensity::Uniform();
  EXPECT_NEAR(TotalVariation(u, u), 0.0, 1e-12);
  // int |1 - tri| over [0, 1]: the two triangles where tri < 1 have area 1/4 each.
  EXPECT_NEAR(TotalVariation(u, TestDensity(Triangular{0.0, 0.5, 1.0})), 0.5, 1e-9);
}

TEST(DensityTest, RejectsInvalidParameters) {
  EXPECT_THROW(TestDensity::Normal(0.0, -1.0), DomainError);
  EXPECT_THROW(TestDensity(Triangular{0.0, 2.0, 1.0}), DomainError);
  EXPECT_THROW(TestDensity(BetaMixture{{0.5, 0.6}, {2, 2}, {2, 2}}), DomainError);
  EXPECT_THROW(TestDensity(BetaMixture{{1.0}, {0.5}, {2}}), DomainError);
  EXPECT_THROW(TestDensity(TrigPolynomial{{0.9}}), DomainError);
}

}  // namespace
}  // namespace ldpd
