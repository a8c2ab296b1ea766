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
#include <vector>

#include <gtest/gtest.h>

#include "ldpd/densities.h"
#include "ldpd/errors.h"
#include "ldpd/kde.h"
#include "ldpd/kernel.h"
#include "ldpd/privacy.h"
#include "ldpd/random.h"

namespace ldpd {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double mse = 0.0;
};

// Replicates the private and non-private estimators on shared samples.
struct PairedMoments {
  Moments priv;
  Moments clean;
};

PairedMoments Replicate(const TestDensity& f, const KdeConfig& cfg, std::size_t n, int reps,
                        std::uint64_t seed, double truth) {
  std::vector<double> p(reps), c(reps);
  std::vector<double> xs(n);
  std::vector<PrivateRelease> rs(n);
  for (int r = 0; r < reps; ++r) {
    Rng rng(StreamSeed(seed, 0, r));
    f.SampleInto(xs, rng);
    for (std::size_t i = 0; i < n; ++i) rs[i] = KdeRelease(xs[i], cfg, rng);
    p[r] = KdePrivate(rs);
    c[r] = KdeNonPrivate(xs, cfg);
  }
  auto summarize = [&](const std::vector<double>& v) {
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= reps;
    for (double x : v) {
      m.var += (x - m.mean) * (x - m.mean);
      m.mse += (x - truth) * (x - truth);
    }
    m.var /= reps - 1;
    m.mse /= reps;
    return m;
  };
  return {summarize(p), summarize(c)};
}

TEST(KdeConfigTest, Validation) {
  KdeConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.h = 1.0;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.h = 0.0;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg.h = 1.5;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg.h = 0.1;
  cfg.t = std::nan("");
  EXPECT_THROW(cfg.Validate(), DomainError);
}

TEST(KdeTest, NonPrivateExamples) {
  KdeConfig cfg{0.5, 1.0, Kernel::Rectangular(), PrivacyBudget(0.5)};
  const std::vector<double> xs = {0.5, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(KdeNonPrivate(xs, cfg), 1.0);
  cfg.h = 0.1;
  const std::vector<double> mixed = {0.5, 0.9};
  EXPECT_DOUBLE_EQ(KdeNonPrivate(mixed, cfg), 5.0);
  EXPECT_THROW(KdeNonPrivate({}, cfg), DomainError);
}

TEST(KdeTest, ReleaseScale) {
  const KdeConfig cfg{0.5, 0.1, Kernel::Rectangular(), PrivacyBudget(0.5)};
  Rng rng(1);
  const PrivateRelease r = KdeRelease(0.5, cfg, rng);
  EXPECT_DOUBLE_EQ(r.noise_scale_b, 40.0);
  EXPECT_DOUBLE_EQ(r.tuning, 0.1);
  EXPECT_DOUBLE_EQ(r.t, 0.5);
  const KdeConfig split{0.5, 0.1, Kernel::Rectangular(), PrivacyBudget(0.5, 4)};
  EXPECT_DOUBLE_EQ(KdeRelease(0.5, split, rng).noise_scale_b, 160.0);
}

TEST(KdeTest, MeanOfReleasesIsCentred) {
  const KdeConfig cfg{0.5, 1.0, Kernel::Rectangular(), PrivacyBudget(0.5)};
  Rng rng(11);
  const int n = 100000;
  std::vector<PrivateRelease> rs(n);
  for (auto& r : rs) r = KdeRelease(0.5, cfg, rng);
  const double b = rs[0].noise_scale_b;
  EXPECT_NEAR(KdePrivate(rs), 1.0, 3.0 * std::sqrt(2.0 * b * b / n));
  Rng a(4), c(4);
  EXPECT_EQ(KdeRelease(0.3, cfg, a).value, KdeRelease(0.3, cfg, c).value);
}

TEST(KdeTest, PrivateRejectsMixedBandwidths) {
  std::vector<PrivateRelease> rs = {{1, 1, 0.1, 0.5, {}}, {2, 1, 0.1, 0.5, {}},
                                    {3, 1, 0.1, 0.5, {}}};
  EXPECT_DOUBLE_EQ(KdePrivate(rs), 2.0);
  rs[2].tuning = 0.2;
  EXPECT_THROW(KdePrivate(rs), DomainError);
}

TEST(KdeTest, LinearityWithCleanValues) {
  const KdeConfig cfg{0.4, 0.15, Kernel::Epanechnikov(), PrivacyBudget(0.3)};
  const TestDensity f = TestDensity::Uniform();
  const std::vector<double> xs = f.Sample(500, 8);
  Rng rng(8);
  std::vector<PrivateRelease> rs;
  double noise = 0.0;
  for (double x : xs) {
    rs.push_back(KdeRelease(x, cfg, rng));
    ASSERT_TRUE(rs.back().clean_value.has_value());
    EXPECT_DOUBLE_EQ(*rs.back().clean_value, KdeStatistic(cfg, x));
    noise += rs.back().value - *rs.back().clean_value;
  }
  EXPECT_NEAR(KdePrivate(rs), KdeNonPrivate(xs, cfg) + noise / xs.size(), 1e-9);
}

TEST(KdeTest, RiskBoundExamples) {
  const TestDensity u = TestDensity::Uniform();
  const KdeConfig cfg{0.5, 0.2, Kernel::Rectangular(), PrivacyBudget(0.5)};
  EXPECT_NEAR(KdeRiskBound(u, cfg, 1000), 0.805, 1e-12);
  // alpha -> 1, h = 1: noise term 8 ||K||^2 / n.
  const KdeConfig unit{0.5, 1.0, Kernel::Rectangular(), PrivacyBudget(std::nextafter(1.0, 0.0))};
  EXPECT_NEAR(KdeRiskBound(u, unit, 100), 1.0 / 100 + 8.0 / 100, 1e-12);
  // Triangle density, rectangular kernel: bias at the mode is exactly -h.
  const TestDensity tri(Triangular{0.0, 0.5, 1.0}, 1.0);
  const KdeConfig tcfg{0.5, 0.1, Kernel::Rectangular(), PrivacyBudget(0.5)};
  EXPECT_NEAR(KdeRiskBound(tri, tcfg, 1000),
              0.1 * 0.1 + 2.0 / (1000 * 0.1) + 8.0 / (1000 * 0.25 * 0.01), 1e-8);
}

TEST(KdeTest, OracleBandwidth) {
  EXPECT_NEAR(KdeOracleBandwidth(1.0, 1e4, 1.0), 0.1, 1e-12);
  // Private term dominates for small alpha.
  const double n = 1e4, alpha = 0.1;
  EXPECT_NEAR(KdeOracleBandwidth(1.0, n, alpha), std::pow(alpha * alpha * n, -0.25), 1e-12);
  EXPECT_GT(std::pow(alpha * alpha * n, -0.25), std::pow(n, -1.0 / 3.0));
  const double h1 = KdeOracleBandwidth(1.0, 1.0, 0.5);
  EXPECT_LT(h1, 1.0);
  EXPECT_GT(h1, 0.999);
}

TEST(KdeTest, MseMatchesClosedForm) {
  // Uniform data, rectangular kernel, h = 0.2: g = 5 on a set of mass 0.2.
  const TestDensity u = TestDensity::Uniform();
  const KdeConfig cfg{0.5, 0.2, Kernel::Rectangular(), PrivacyBudget(0.5)};
  const std::size_t n = 1000;
  const double b = 20.0;
  const double analytic = 4.0 / n + 2.0 * b * b / n;
  const PairedMoments m = Replicate(u, cfg, n, 10000, 21, 1.0);
  EXPECT_GT(m.priv.mse, 0.8 * analytic);
  EXPECT_LT(m.priv.mse, 1.2 * analytic);
  EXPECT_NEAR(KdeSecondMoment(u, cfg.kernel, cfg.h, cfg.t), 5.0, 1e-9);
}

TEST(KdeTest, UnbiasednessAndVarianceDecomposition) {
  const TestDensity u = TestDensity::Uniform();
  const KdeConfig cfg{0.5, 0.2, Kernel::Rectangular(), PrivacyBudget(0.5)};
  const std::size_t n = 100;
  const int reps = 100000;
  const PairedMoments m = Replicate(u, cfg, n, reps, 33, 1.0);
  const double se_diff = std::sqrt((m.priv.var + m.clean.var) / reps);
  EXPECT_NEAR(m.priv.mean, m.clean.mean, 3.0 * se_diff);
  const double b = 20.0;
  EXPECT_NEAR((m.priv.var - m.clean.var) / (2.0 * b * b / n), 1.0, 0.05);
}

TEST(KdeTest, NoiseCostMonotoneInAlpha) {
  const TestDensity u = TestDensity::Uniform();
  const std::size_t n = 100;
  const int reps = 100000;
  double prev = INFINITY, prev_se = 0.0;
  for (double alpha : {0.1, 0.3, 0.5, 0.9}) {
    const KdeConfig cfg{0.5, 0.2, Kernel::Rectangular(), PrivacyBudget(alpha)};
    const PairedMoments m = Replicate(u, cfg, n, reps, 44, 1.0);
    // SE of a sample variance of near-Laplace data: var * sqrt((kurt - 1) / R).
    const double se = m.priv.var * std::sqrt(5.0 / reps);
    EXPECT_LE(m.priv.var, prev + 3.0 * std::hypot(se, prev_se)) << alpha;
    prev = m.priv.var;
    prev_se = se;
  }
}

TEST(KdeTest, BoundHoldsOnGrid) {
  const TestDensity u = TestDensity::Uniform();
  for (std::size_t n : {100u, 1000u}) {
    for (double h : {0.05, 0.1, 0.2}) {
      for (double alpha : {0.2, 0.5}) {
        const KdeConfig cfg{0.5, h, Kernel::Rectangular(), PrivacyBudget(alpha)};
        const int reps = n == 100 ? 10000 : 2000;
        const PairedMoments m = Replicate(u, cfg, n, reps, 55, 1.0);
        // SE of the MSE for a near-normal mean of n Laplace releases.
        const double se = m.priv.mse * std::sqrt(2.0 / reps);
        EXPECT_LE(m.priv.mse - 3.0 * se, KdeRiskBound(u, cfg, n)) << n << " " << h << " " << alpha;
      }
    }
  }
}

TEST(KdeTest, ChannelsCertify) {
  for (double h : {0.05, 0.3, 1.0}) {
    const KdeConfig cfg{0.5, h, Kernel::Triangular(), PrivacyBudget(0.7, 3)};
    const ChannelSpec spec = KdeChannel(cfg);
    std::vector<double> xs, zs;
    for (int i = 0; i <= 100; ++i) xs.push_back(0.5 - 1.5 * h + 3.0 * h * i / 100.0);
    for (int i = 0; i <= 200; ++i) zs.push_back(-5.0 * spec.b + 10.0 * spec.b * i / 200.0);
    EXPECT_TRUE(VerifyDpRatio(spec, cfg.budget.per_release_alpha(), xs, zs).certified);
  }
}

TEST(KdeTest, ClampIsPresentationOnly) {
  EXPECT_EQ(ClampNonneg(-0.3), 0.0);
  EXPECT_EQ(ClampNonneg(0.3), 0.3);
}

}  // namespace
}  // namespace ldpd
