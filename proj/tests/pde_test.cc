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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ldpd/basis.h"
#include "ldpd/densities.h"
#include "ldpd/errors.h"
#include "ldpd/pde.h"
#include "ldpd/privacy.h"
#include "ldpd/quadrature.h"
#include "ldpd/random.h"

namespace ldpd {
namespace {

TEST(BasisTest, TrigonometricValues) {
  const Basis b = Basis::Trigonometric(50);
  EXPECT_DOUBLE_EQ(b.phi0(), 2.0);
  for (double x : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(b.Eval(1, x, 5), 1.0);
  EXPECT_NEAR(b.Eval(2, 0.0, 5), 1.41421356, 1e-8);
  EXPECT_NEAR(b.Eval(3, 0.0, 5), 0.0, 1e-15);
  EXPECT_NEAR(b.Eval(4, 0.3, 5), std::sqrt(2.0) * std::cos(4.0 * std::numbers::pi * 0.3), 1e-14);
  EXPECT_NEAR(b.Eval(5, 0.3, 5), std::sqrt(2.0) * std::sin(4.0 * std::numbers::pi * 0.3), 1e-14);
  EXPECT_THROW(b.Eval(1, 1.5, 5), DomainError);
  EXPECT_THROW(b.Eval(1, -0.1, 5), DomainError);
  EXPECT_THROW(b.Eval(0, 0.5, 5), DomainError);
}

TEST(BasisTest, HistogramValues) {
  const Basis b = Basis::Histogram(16);
  EXPECT_DOUBLE_EQ(b.phi0(), 1.0);
  EXPECT_DOUBLE_EQ(b.Eval(1, 0.1, 4), 2.0);
  EXPECT_DOUBLE_EQ(b.Eval(2, 0.1, 4), 0.0);
  EXPECT_DOUBLE_EQ(b.Eval(4, 1.0, 4), 2.0);
}

TEST(BasisTest, Orthonormality) {
  for (const Basis& b : {Basis::Trigonometric(20), Basis::Histogram(20)}) {
    for (std::size_t d : {1u, 7u, 20u}) {
      const std::vector<double> bp = b.Breakpoints(d);
      for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t k = j; k <= d; ++k) {
          const double ip = Integrate([&](double x) { return b.Eval(j, x, d) * b.Eval(k, x, d); },
                                      0.0, 1.0, bp);
          EXPECT_NEAR(ip, j == k ? 1.0 : 0.0, 1e-8) << b.name() << " " << d << " " << j << " " << k;
        }
      }
    }
  }
}

TEST(BasisTest, Phi0Certification) {
  const Basis trig = Basis::Trigonometric(40);
  for (std::size_t m = 0; m < 10; ++m) EXPECT_NEAR(VerifyPhi0(trig, 2 * m + 1), 1.0, 1e-12);
  for (std::size_t m = 1; m <= 10; ++m) {
    const double r = VerifyPhi0(trig, 2 * m);
    EXPECT_LE(r, (2.0 * m + 1.0) / (2.0 * m) + 1e-12);
    EXPECT_LE(r, 1.5 + 1e-12);
  }
  const Basis hist = Basis::Histogram(40);
  for (std::size_t d : {1u, 3u, 17u, 40u}) EXPECT_NEAR(VerifyPhi0(hist, d), 1.0, 1e-12);
  EXPECT_THROW(VerifyPhi0(trig, 41), DomainError);
}

TEST(BasisTest, KernelSumExamples) {
  const Basis b = Basis::Trigonometric(30);
  EXPECT_DOUBLE_EQ(b.KernelSum(1, 0.2, 0.9), 1.0);
  for (double t : {0.0, 0.17, 0.5, 0.83}) EXPECT_NEAR(b.KernelSum(3, t, t), 3.0, 1e-12);
  double worst = 0.0;
  for (std::size_t d : {2u, 5u, 12u, 30u}) {
    for (int i = 0; i <= 200; ++i) {
      for (int k = 0; k <= 20; ++k) {
        const double g = b.KernelSum(d, k / 20.0, i / 200.0);
        worst = std::max(worst, std::abs(g) / (d * b.phi0()));
        double direct = 0.0;
        for (std::size_t j = 1; j <= d; ++j) direct += b.Eval(j, i / 200.0, d) * b.Eval(j, k / 20.0, d);
        EXPECT_NEAR(g, direct, 1e-11);
      }
    }
  }
  EXPECT_LE(worst, 1.0);
}

TEST(BasisTest, BatchedKernelSumsMatch) {
  for (const Basis& b : {Basis::Trigonometric(40), Basis::Histogram(40)}) {
    const std::vector<std::size_t> dims = {1, 2, 4, 9, 16, 40};
    std::vector<double> out(dims.size());
    for (double x : {0.0, 0.13, 0.5, 0.999}) {
      b.KernelSums(0.37, x, dims, out);
      for (std::size_t i = 0; i < dims.size(); ++i) {
        EXPECT_NEAR(out[i], b.KernelSum(dims[i], 0.37, x), 1e-10) << b.name();
      }
    }
  }
}

TEST(PdeTest, ReleaseScaleAndGuards) {
  const PdeConfig cfg{0.5, 5, Basis::Trigonometric(10), PrivacyBudget(0.5)};
  Rng rng(1);
  const PrivateRelease r = PdeRelease(0.2, cfg, rng);
  EXPECT_DOUBLE_EQ(r.noise_scale_b, 40.0);
  EXPECT_DOUBLE_EQ(r.tuning, 5.0);
  PdeConfig bad = cfg;
  bad.d = 11;
  EXPECT_THROW(bad.Validate(), DomainError);
  bad.d = 0;
  EXPECT_THROW(bad.Validate(), DomainError);
  EXPECT_THROW(PdeRelease(1.2, cfg, rng), DomainError);
}

TEST(PdeTest, MeanOfReleasesIsCentred) {
  // Trigonometric d = 3 at x = t: g_3 = 3.
  const PdeConfig cfg{0.3, 3, Basis::Trigonometric(3), PrivacyBudget(0.5)};
  Rng rng(2);
  const int n = 100000;
  std::vector<PrivateRelease> rs(n);
  for (auto& r : rs) r = PdeRelease(0.3, cfg, rng);
  const double b = rs[0].noise_scale_b;
  EXPECT_NEAR(PdePrivate(rs), 3.0, 3.0 * std::sqrt(2.0 * b * b / n));
}

TEST(PdeTest, PrivateMeanAndMixedDimensions) {
  std::vector<PrivateRelease> rs = {{2, 1, 3, 0.5, {}}, {4, 1, 3, 0.5, {}}};
  EXPECT_DOUBLE_EQ(PdePrivate(rs), 3.0);
  rs[1].tuning = 4;
  EXPECT_THROW(PdePrivate(rs), DomainError);
}

TEST(PdeTest, CoefficientAndKernelFormsAgree) {
  const TestDensity f(BetaMixture{{0.5, 0.5}, {2, 5}, {5, 2}});
  for (std::size_t d : {1u, 4u, 9u, 25u}) {
    for (const Basis& b : {Basis::Trigonometric(25), Basis::Histogram(25)}) {
      const PdeConfig cfg{0.41, d, b, PrivacyBudget(0.5)};
      const std::vector<double> xs = f.Sample(300, d);
      EXPECT_NEAR(PdeNonPrivate(xs, cfg), PdeNonPrivateKernelForm(xs, cfg), 1e-12 * d * b.phi0());
    }
  }
}

TEST(PdeTest, RiskBoundExamples) {
  const TestDensity u = TestDensity::Uniform();
  const PdeConfig cfg{0.5, 3, Basis::Trigonometric(10), PrivacyBudget(0.5)};
  EXPECT_NEAR(PdeRiskBound(u, cfg, 1000), 1.158, 1e-12);
  const PdeConfig one{0.5, 1, Basis::Trigonometric(10), PrivacyBudget(0.5)};
  EXPECT_NEAR(PdeRiskBound(u, one, 1000), 2.0 / 1000 + 8.0 * 4.0 / (1000 * 0.25), 1e-12);
}

TEST(PdeTest, OracleDimension) {
  EXPECT_EQ(PdeOracleDimension(1.0, 1e4, 1.0), 10u);
  EXPECT_EQ(PdeOracleDimension(1.0, 1.0, 0.5), 1u);
  // min(21.54, 100^(1/4) = 3.16) -> 3.
  EXPECT_EQ(PdeOracleDimension(1.0, 1e4, 0.1), 3u);
}

TEST(PdeTest, ParsevalForTrigPolynomials) {
  const TestDensity u = TestDensity::Uniform();
  const Basis b = Basis::Trigonometric(12);
  for (std::size_t d = 1; d <= 12; ++d) EXPECT_NEAR(ProjectedValue(u, b, d, 0.3), 1.0, 1e-9);
  const TestDensity p(TrigPolynomial{{0.2, -0.1, 0.15}});
  const double truth = p(0.3);
  for (std::size_t d = 4; d <= 12; ++d) EXPECT_NEAR(ProjectedValue(p, b, d, 0.3), truth, 1e-9);
  EXPECT_GT(std::abs(ProjectedValue(p, b, 1, 0.3) - truth), 1e-3);
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double Var(const std::vector<double>& v) {
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

TEST(PdeTest, UnbiasedOnGrid) {
  const TestDensity f(TrigPolynomial{{0.3, 0.2}});
  const int reps = 10000;
  for (std::size_t n : {100u, 1000u}) {
    for (std::size_t d : {1u, 3u, 9u}) {
      for (double alpha : {0.2, 0.5}) {
        const PdeConfig cfg{0.3, d, Basis::Trigonometric(9), PrivacyBudget(alpha)};
        const int r_eff = n == 1000 ? reps / 5 : reps;
        std::vector<double> est(r_eff);
        std::vector<double> xs(n);
        std::vector<PrivateRelease> rs(n);
        for (int r = 0; r < r_eff; ++r) {
          Rng rng(StreamSeed(9, d, r));
          f.SampleInto(xs, rng);
          for (std::size_t i = 0; i < n; ++i) rs[i] = PdeRelease(xs[i], cfg, rng);
          est[r] = PdePrivate(rs);
        }
        const double target = ProjectedValue(f, cfg.basis, d, cfg.t);
        EXPECT_NEAR(Mean(est), target, 3.0 * std::sqrt(Var(est) / r_eff)) << n << " " << d;
        double mse = 0.0;
        for (double e : est) mse += (e - f(cfg.t)) * (e - f(cfg.t));
        mse /= r_eff;
        EXPECT_LE(mse * (1.0 - 3.0 * std::sqrt(2.0 / r_eff)), PdeRiskBound(f, cfg, n));
      }
    }
  }
}

TEST(PdeTest, PureNoiseAtDimensionOne) {
  const TestDensity u = TestDensity::Uniform();
  const PdeConfig cfg{0.5, 1, Basis::Trigonometric(1), PrivacyBudget(0.5)};
  const std::size_t n = 100;
  const int reps = 20000;
  double mse = 0.0;
  std::vector<double> xs(n);
  std::vector<PrivateRelease> rs(n);
  for (int r = 0; r < reps; ++r) {
    Rng rng(StreamSeed(12, 0, r));
    u.SampleInto(xs, rng);
    for (std::size_t i = 0; i < n; ++i) rs[i] = PdeRelease(xs[i], cfg, rng);
    const double e = PdePrivate(rs) - 1.0;
    mse += e * e;
  }
  mse /= reps;
  const double b = 8.0;
  EXPECT_NEAR(mse / (2.0 * b * b / n), 1.0, 0.05);
}

TEST(PdeTest, VarianceDecomposition) {
  const TestDensity f(TrigPolynomial{{0.3, 0.2}});
  const PdeConfig cfg{0.3, 3, Basis::Trigonometric(3), PrivacyBudget(0.5)};
  const std::size_t n = 50;
  const int reps = 100000;
  std::vector<double> p(reps), c(reps), xs(n);
  std::vector<PrivateRelease> rs(n);
  for (int r = 0; r < reps; ++r) {
    Rng rng(StreamSeed(13, 0, r));
    f.SampleInto(xs, rng);
    for (std::size_t i = 0; i < n; ++i) rs[i] = PdeRelease(xs[i], cfg, rng);
    p[r] = PdePrivate(rs);
    c[r] = PdeNonPrivate(xs, cfg);
  }
  const double b = 24.0;
  EXPECT_NEAR((Var(p) - Var(c)) / (2.0 * b * b / n), 1.0, 0.05);
  EXPECT_NEAR(PdeSecondMoment(f, cfg.basis, 3, cfg.t) - std::pow(ProjectedValue(f, cfg.basis, 3, cfg.t), 2),
              Var(c) * n, 0.05 * Var(c) * n);
}

}  // namespace
}  // namespace ldpd
