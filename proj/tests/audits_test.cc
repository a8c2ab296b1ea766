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

#include "ldpd/audits.h"
#include "ldpd/densities.h"
#include "ldpd/errors.h"

namespace ldpd {
namespace {

TEST(BoundArithmeticTest, Bernstein) {
  EXPECT_NEAR(BernsteinBound(100, 0.2, 1.0 / 3.0, 1.0), 2.0 * std::exp(-3.0), 1e-15);
  EXPECT_NEAR(BernsteinBound(100, 0.2, 1.0 / 3.0, 1.0), 0.0996, 5e-5);
  EXPECT_DOUBLE_EQ(BernsteinBound(100, 0.0, 1.0 / 3.0, 1.0), 2.0);
  // Point mass: v2 = 0 leaves only the linear branch.
  EXPECT_NEAR(BernsteinBound(10, 0.5, 0.0, 1.0), 2.0 * std::exp(-10 * 0.5 / 4.0), 1e-15);
}

TEST(BoundArithmeticTest, LaplaceTail) {
  EXPECT_NEAR(LaplaceTailBound(64, 1.0, 1.0), 2.0 * std::exp(-4.0), 1e-15);
  EXPECT_NEAR(LaplaceTailBound(64, 1.0, 1.0), 0.0366, 5e-5);
  EXPECT_DOUBLE_EQ(LaplaceTailBound(64, 0.0, 1.0), 2.0);
  // eps = 8, n = 4: both exponents equal -16.
  EXPECT_NEAR(LaplaceTailBound(4, 8.0, 1.0), 2.0 * std::exp(-16.0), 1e-20);
  // Past the branch point the linear exponent is the larger one.
  EXPECT_NEAR(LaplaceTailBound(4, 20.0, 1.0), 2.0 * std::exp(-40.0), 1e-30);
  EXPECT_NEAR(LaplaceTailBound(4, 2.0, 1.0), 2.0 * std::exp(-1.0), 1e-15);
}

TEST(DistributionTest, MomentsAndParsing) {
  EXPECT_DOUBLE_EQ(AbsoluteMoment(AuditDistribution::kUniformSymmetric, 4), 0.2);
  EXPECT_DOUBLE_EQ(AbsoluteMoment(AuditDistribution::kRademacher, 6), 1.0);
  EXPECT_DOUBLE_EQ(AbsoluteMoment(AuditDistribution::kLaplace, 4), 24.0);
  EXPECT_DOUBLE_EQ(DistributionVariance(AuditDistribution::kUniformSymmetric), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(DistributionBound(AuditDistribution::kUniformSymmetric), 1.0);
  for (AuditDistribution d : {AuditDistribution::kUniformSymmetric, AuditDistribution::kRademacher,
                              AuditDistribution::kPointMassZero, AuditDistribution::kLaplace}) {
    EXPECT_EQ(ParseAuditDistribution(AuditDistributionName(d)), d);
  }
  EXPECT_THROW(ParseAuditDistribution("cauchy"), DomainError);
  Rng rng(3);
  double m2 = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = DrawAudit(AuditDistribution::kUniformSymmetric, rng);
    ASSERT_LE(std::abs(u), 1.0);
    m2 += u * u;
  }
  EXPECT_NEAR(m2 / 100000, 1.0 / 3.0, 0.005);
}

TEST(TailAuditTest, BernsteinHolds) {
  const std::vector<double> eps = {0.0, 0.05, 0.1, 0.2, 0.3};
  const auto rows = AuditBernstein(AuditDistribution::kUniformSymmetric, 100, eps, 100000, 7);
  ASSERT_EQ(rows.size(), eps.size());
  for (const TailAuditRow& r : rows) {
    EXPECT_FALSE(r.violated) << r.epsilon;
    EXPECT_LE(r.empirical, r.bound + 3.0 * r.se);
  }
  EXPECT_DOUBLE_EQ(rows[0].empirical, 1.0);
  EXPECT_NEAR(rows[3].bound, 0.0996, 5e-5);
  // Mean of 100 uniforms: P(|mean| >= 0.2) is about P(|N| >= 3.46).
  EXPECT_LT(rows[3].empirical, 0.002);
  const auto zero = AuditBernstein(AuditDistribution::kPointMassZero, 10, eps, 1000, 1);
  for (std::size_t i = 1; i < zero.size(); ++i) EXPECT_EQ(zero[i].empirical, 0.0);
}

TEST(TailAuditTest, LaplaceTailHolds) {
  const std::vector<double> eps = {0.0, 0.25, 0.5, 1.0, 8.0};
  const auto rows = AuditLaplaceTail(1.0, 64, eps, 100000, 9);
  for (const TailAuditRow& r : rows) EXPECT_FALSE(r.violated) << r.epsilon;
  EXPECT_NEAR(rows[3].bound, 0.0366, 5e-5);
}

TEST(TailAuditTest, Reproducible) {
  const std::vector<double> eps = {0.1};
  const auto a = AuditLaplaceTail(1.0, 16, eps, 1000, 5);
  const auto b = AuditLaplaceTail(1.0, 16, eps, 1000, 5);
  EXPECT_EQ(a[0].empirical, b[0].empirical);
}

TEST(PetrovTest, ExactRademacher) {
  for (std::size_t n : {1u, 5u, 10u, 50u, 100u}) EXPECT_NEAR(PetrovRatioRademacher(n, 2), 1.0, 1e-12);
  const std::vector<std::size_t> ns2 = {10, 100};
  for (const PetrovAuditRow& r : AuditPetrov(AuditDistribution::kRademacher, ns2, 2, 1, 1)) EXPECT_FALSE(r.violated);
  EXPECT_NEAR(PetrovRatioRademacher(10, 4), 2.8, 1e-12);
  for (std::size_t n : {2u, 7u, 31u, 200u}) {
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(PetrovRatioRademacher(n, 4), (3.0 * nn * nn - 2.0 * nn) / (nn * nn), 1e-10);
  }
  EXPECT_DOUBLE_EQ(PetrovReferenceConstant(2), 1.0);
  EXPECT_DOUBLE_EQ(PetrovReferenceConstant(4), 4.0);
  EXPECT_TRUE(std::isnan(PetrovReferenceConstant(6)));
}

TEST(PetrovTest, RatioBoundedAndSettles) {
  const std::vector<std::size_t> ns = {10, 100};
  const auto lap = AuditPetrov(AuditDistribution::kLaplace, ns, 4, 200000, 11);
  for (const PetrovAuditRow& r : lap) {
    EXPECT_FALSE(r.violated);
    EXPECT_LE(r.ratio, 4.0);
    EXPECT_FALSE(r.exact);
  }
  const std::vector<std::size_t> grid = {2, 4, 8, 16, 32};
  const auto rad = AuditPetrov(AuditDistribution::kRademacher, grid, 4, 10, 1);
  for (std::size_t i = 0; i < rad.size(); ++i) {
    EXPECT_TRUE(rad[i].exact);
    EXPECT_LE(rad[i].ratio, 3.0);
    if (i > 0) EXPECT_GE(rad[i].ratio, rad[i - 1].ratio);
  }
  // Uniform: fourth moment of the sum is 3 n^2/9 - 2n/45; ratio tends to 5/3.
  const auto uni = AuditPetrov(AuditDistribution::kUniformSymmetric, std::vector<std::size_t>{20},
                               4, 200000, 12);
  const double n = 20.0;
  const double exact = (3.0 * n * n / 9.0 - 2.0 * n / 45.0) / (n * n * 0.2);
  EXPECT_NEAR(uni[0].ratio, exact, 4.0 * uni[0].se);
}

TEST(KlBoundTest, Examples) {
  const TestDensity u = TestDensity::Uniform();
  EXPECT_EQ(KlUpperBound(u, u, 100, 0.5), 0.0);
  // int |c sqrt(2) cos(2 pi x)| dx = c sqrt(2) 2 / pi.
  const double c = 0.1 * std::numbers::pi / (2.0 * std::sqrt(2.0));
  const TestDensity p(TrigPolynomial{{c}});
  EXPECT_NEAR(TotalVariation(u, p), 0.1, 1e-9);
  EXPECT_NEAR(KlUpperBound(u, p, 100, 0.5), 1.684, 1e-3);
  EXPECT_NEAR(KlUpperBound(u, p, 100, 0.5),
              400.0 * std::pow(std::expm1(0.5), 2) * 0.01, 1e-8);
}

TEST(KlBoundTest, StableAlongDesignedBandwidths) {
  const double beta = 1.0, l = 1.0, alpha = 0.5;
  const auto p3 = MakeHypothesisPair(beta, l, 0.5, 1e3, alpha, HypothesisBase::kUniform);
  const auto p6 = MakeHypothesisPair(beta, l, 0.5, 1e6, alpha, HypothesisBase::kUniform);
  const double k3 = KlUpperBound(p3.first, p3.second, 1e3, alpha);
  const double k6 = KlUpperBound(p6.first, p6.second, 1e6, alpha);
  EXPECT_GT(k6, 0.5 * k3);
  EXPECT_LT(k6, 2.0 * k3);
  const BumpFunction bump;
  EXPECT_NEAR(k3, l * l * bump.l1_norm() * bump.l1_norm(), 1e-6 * k3);
}

}  // namespace
}  // namespace ldpd
