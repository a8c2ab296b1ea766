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

#include "ldpd/densities.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "ldpd/errors.h"
#include "ldpd/quadrature.h"

namespace ldpd {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;
constexpr double kNormalRangeSds = 40.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Unit-amplitude mollifier exp(-1 / (1 - u^2)) and its first two derivatives.
double Mollifier(double u) {
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double MollifierDerivative(double u) {
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s) * (-2.0 * u) / (s * s);
}

double MollifierSecondDerivative(double u) {
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  const double s2 = s * s;
  return std::exp(-1.0 / s) *
         (4.0 * u * u / (s2 * s2) - 2.0 / s2 - 8.0 * u * u / (s2 * s));
}

double GaussianPdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

// Grid scan followed by Brent refinement around the best grid point.
template <class F>
double NumericalSup(const F& f, double lo, double hi, std::size_t points) {
  double best_x = lo;
  double best = f(lo);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double a = std::max(lo, best_x - step);
  const double b = std::min(hi, best_x + step);
  const auto refined = boost::math::tools::brent_find_minima(
      [&f](double x) { return -f(x); }, a, b, 50);
  return std::max(best, -refined.second);
}

double TrigPolynomialValue(const TrigPolynomial& p, double x) {
  double value = 1.0;
  for (std::size_t k = 0; k < p.coefficients.size(); ++k) {
    const std::size_t j = k + 2;
    const double freq = static_cast<double>(j / 2);
    const double arg = 2.0 * std::numbers::pi * freq * x;
    value += p.coefficients[k] * std::numbers::sqrt2 *
             (j % 2 == 0 ? std::cos(arg) : std::sin(arg));
  }
  return value;
}

double BaseValue(HypothesisBase base, double sigma, double x) {
  if (base == HypothesisBase::kGaussian) return GaussianPdf(x, 0.0, sigma);
  return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
}

double PerturbationValue(const HypothesisF1& f, double x) {
  return 0.5 * f.radius_l * std::pow(f.h, f.beta) * f.bump((x - f.t) / f.h);
}

double HypothesisF1Value(const HypothesisF1& f, double x) {
  return BaseValue(f.base, f.sigma, x) + PerturbationValue(f, x);
}

// Hoelder seminorm bound from the l-th and (l+1)-th derivative on a grid.
double HoelderBound(double beta, const std::vector<double>& deriv_l,
                    const std::vector<double>& deriv_l1) {
  const auto [mn, mx] = std::minmax_element(deriv_l.begin(), deriv_l.end());
  const double osc = *mx - *mn;
  const double exponent = beta - std::floor(beta);
  if (exponent == 0.0) return osc;
  double sup = 0.0;
  for (double v : deriv_l1) sup = std::max(sup, std::abs(v));
  return std::max(sup, osc);
}

double DefaultBeta(const DensityFamily& family) {
  return std::visit(
      Overloaded{[](const Triangular&) { return 1.0; },
                 [](const HypothesisF1& f) { return f.beta; },
                 [](const auto&) { return 2.0; }},
      family);
}

std::string ShortName(const DensityFamily& family) {
  return std::visit(
      Overloaded{[](const Uniform01&) { return std::string("uniform01"); },
                 [](const NormalFamily&) { return std::string("normal"); },
                 [](const BetaMixture&) { return std::string("beta_mixture"); },
                 [](const Triangular&) { return std::string("triangular"); },
                 [](const TrigPolynomial&) {
                   return std::string("trig_polynomial");
                 },
                 [](const HypothesisF0&) { return std::string("hypothesis_f0"); },
                 [](const HypothesisF1&) {
                   return std::string("hypothesis_f1");
                 }},
      family);
}

}  // namespace

// ---------------------------------------------------------------------------
// BumpFunction

BumpFunction::BumpFunction() {
  constexpr std::size_t kGrid = 60001;
  std::vector<double> value(kGrid), first(kGrid), second(kGrid);
  for (std::size_t i = 0; i < kGrid; ++i) {
    const double u = -1.0 + 3.0 * static_cast<double>(i) / (kGrid - 1);
    value[i] = Mollifier(u) - Mollifier(u - 1.0);
    first[i] = MollifierDerivative(u) - MollifierDerivative(u - 1.0);
    second[i] = MollifierSecondDerivative(u) - MollifierSecondDerivative(u - 1.0);
  }
  // Worst case over beta in (0, 1] and (1, 2].
  const double unit_bound =
      std::max(HoelderBound(0.5, value, first), HoelderBound(1.5, first, second));
  amplitude_ = 0.5 / (unit_bound * (1.0 + 1e-6));
  hoelder_constant_ = amplitude_ * unit_bound;

  double sup = 0.0;
  for (double v : value) sup = std::max(sup, std::abs(v));
  sup_norm_ = amplitude_ * sup;  // attained at u = 0 and u = 1 (grid points)
  const auto points = breakpoints();
  l1_norm_ = Integrate([this](double u) { return std::abs((*this)(u)); }, -1.0,
                       2.0, points);
}

double BumpFunction::operator()(double u) const {
  return amplitude_ * (Mollifier(u) - Mollifier(u - 1.0));
}

double BumpFunction::Derivative(double u) const {
  return amplitude_ * (MollifierDerivative(u) - MollifierDerivative(u - 1.0));
}

double BumpFunction::SecondDerivative(double u) const {
  return amplitude_ *
         (MollifierSecondDerivative(u) - MollifierSecondDerivative(u - 1.0));
}

// ---------------------------------------------------------------------------
// TestDensity

TestDensity::TestDensity(DensityFamily family, double smoothness_beta,
                         SamplerOptions sampler)
    : family_(std::move(family)),
      smoothness_beta_(smoothness_beta > 0.0 ? smoothness_beta
                                             : DefaultBeta(family_)),
      sup_norm_(0.0),
      sampler_(sampler) {
  std::visit(
      Overloaded{
          [&](const Uniform01&) { sup_norm_ = 1.0; },
          [&](const NormalFamily& f) {
            if (!(f.sd > 0.0)) throw DomainError("normal sd must be positive");
            sup_norm_ = kInvSqrt2Pi / f.sd;
          },
          [&](const BetaMixture& f) {
            if (f.weights.empty() || f.weights.size() != f.a.size() ||
                f.a.size() != f.b.size()) {
              throw DomainError(
                  "beta mixture needs equally many weights, a and b entries");
            }
            double total = 0.0;
            for (std::size_t k = 0; k < f.weights.size(); ++k) {
              if (!(f.weights[k] >= 0.0)) {
                throw DomainError("beta mixture weights must be nonnegative");
              }
              if (!(f.a[k] >= 1.0 && f.b[k] >= 1.0)) {
                throw DomainError(
                    "beta mixture components need a >= 1 and b >= 1");
              }
              total += f.weights[k];
              beta_log_norm_.push_back(std::lgamma(f.a[k] + f.b[k]) -
                                       std::lgamma(f.a[k]) -
                                       std::lgamma(f.b[k]));
            }
            if (std::abs(total - 1.0) > 1e-9) {
              throw DomainError("beta mixture weights must sum to 1");
            }
            sup_norm_ =
                NumericalSup([this](double x) { return Eval(x); }, 0.0, 1.0, 20001);
          },
          [&](const Triangular& f) {
            if (!(f.lo < f.hi && f.lo <= f.mode && f.mode <= f.hi)) {
              throw DomainError("triangular density needs lo <= mode <= hi, lo < hi");
            }
            sup_norm_ = 2.0 / (f.hi - f.lo);
          },
          [&](const TrigPolynomial& f) {
            double mn = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i <= 10000; ++i) {
              mn = std::min(mn, TrigPolynomialValue(f, i / 10000.0));
            }
            if (mn < 0.0) {
              throw DomainError("trigonometric polynomial density is negative");
            }
            sup_norm_ =
                NumericalSup([this](double x) { return Eval(x); }, 0.0, 1.0, 20001);
          },
          [&](const HypothesisF0& f) {
            if (!(f.sigma > 0.0)) throw DomainError("sigma must be positive");
            sup_norm_ = f.base == HypothesisBase::kGaussian
                            ? kInvSqrt2Pi / f.sigma
                            : 1.0;
          },
          [&](const HypothesisF1& f) {
            if (!(f.sigma > 0.0 && f.h > 0.0 && f.radius_l > 0.0)) {
              throw DomainError("hypothesis f1 needs sigma, h, L > 0");
            }
            const double lo = f.t - f.h;
            const double hi = f.t + 2.0 * f.h;
            if (f.base == HypothesisBase::kUniform && (lo < 0.0 || hi > 1.0)) {
              throw DomainError(
                  "n too small for valid hypothesis pair: perturbation "
                  "support leaves [0, 1]");
            }
            double mn = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i <= 6000; ++i) {
              mn = std::min(mn, HypothesisF1Value(f, lo + (hi - lo) * i / 6000.0));
            }
            if (mn < 0.0) {
              throw DomainError(
                  "n too small for valid hypothesis pair: f1 is negative");
            }
            const double base_sup = f.base == HypothesisBase::kGaussian
                                        ? kInvSqrt2Pi / f.sigma
                                        : 1.0;
            sup_norm_ = std::max(
                base_sup,
                NumericalSup([&f](double x) { return HypothesisF1Value(f, x); },
                             lo, hi, 6001));
          }},
      family_);
}

double TestDensity::Eval(double x) const {
  return std::visit(
      Overloaded{
          [x](const Uniform01&) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; },
          [x](const NormalFamily& f) { return GaussianPdf(x, f.mean, f.sd); },
          [this, x](const BetaMixture& f) {
            if (!(x >= 0.0 && x <= 1.0)) return 0.0;
            double value = 0.0;
            for (std::size_t k = 0; k < f.weights.size(); ++k) {
              value += f.weights[k] *
                       std::exp(beta_log_norm_[k]) * std::pow(x, f.a[k] - 1.0) *
                       std::pow(1.0 - x, f.b[k] - 1.0);
            }
            return value;
          },
          [x](const Triangular& f) {
            if (x < f.lo || x > f.hi) return 0.0;
            const double peak = 2.0 / (f.hi - f.lo);
            if (x < f.mode) return peak * (x - f.lo) / (f.mode - f.lo);
            if (x > f.mode) return peak * (f.hi - x) / (f.hi - f.mode);
            return peak;
          },
          [x](const TrigPolynomial& f) {
            return (x >= 0.0 && x <= 1.0) ? TrigPolynomialValue(f, x) : 0.0;
          },
          [x](const HypothesisF0& f) { return BaseValue(f.base, f.sigma, x); },
          [x](const HypothesisF1& f) { return HypothesisF1Value(f, x); }},
      family_);
}

std::vector<double> TestDensity::Sample(std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw DomainError("sample size must be at least 1");
  std::vector<double> out(n);
  Rng rng(seed);
  SampleInto(out, rng);
  return out;
}

void TestDensity::SampleInto(std::span<double> out, Rng& rng) const {
  for (double& x : out) x = Draw(rng);
}

double TestDensity::Draw(Rng& rng) const {
  // Rejection from a proposal with density q and envelope f <= c q.
  const auto reject = [&](auto propose, auto ratio) {
    for (std::size_t attempt = 0; attempt < sampler_.max_attempts; ++attempt) {
      const double x = propose();
      if (rng.Uniform() <= ratio(x)) return x;
    }
    std::ostringstream msg;
    msg << "rejection sampler for " << name() << " exceeded "
        << sampler_.max_attempts << " attempts; the density is malformed";
    throw SamplingError(msg.str());
  };

  return std::visit(
      Overloaded{
          [&](const Uniform01&) { return rng.Uniform(); },
          [&](const NormalFamily& f) { return f.mean + f.sd * rng.Normal(); },
          [&](const BetaMixture&) {
            const double envelope = sup_norm_ * (1.0 + 1e-9);
            return reject([&] { return rng.Uniform(); },
                          [&](double x) { return Eval(x) / envelope; });
          },
          [&](const Triangular& f) {
            const double u = rng.Uniform();
            const double width = f.hi - f.lo;
            const double split = (f.mode - f.lo) / width;
            if (u < split) return f.lo + std::sqrt(u * width * (f.mode - f.lo));
            return f.hi - std::sqrt((1.0 - u) * width * (f.hi - f.mode));
          },
          [&](const TrigPolynomial&) {
            const double envelope = sup_norm_ * (1.0 + 1e-9);
            return reject([&] { return rng.Uniform(); },
                          [&](double x) { return Eval(x) / envelope; });
          },
          [&](const HypothesisF0& f) {
            return f.base == HypothesisBase::kGaussian ? f.sigma * rng.Normal()
                                                       : rng.Uniform();
          },
          [&](const HypothesisF1& f) {
            // Envelope c * base with c = 1 + (L/2) h^beta |H|_inf / min base
            // over the perturbation support.
            const double lo = f.t - f.h;
            const double hi = f.t + 2.0 * f.h;
            // phi_sigma is unimodal at 0, so its minimum over an interval is
            // attained at an endpoint.
            const double min_base = std::min(BaseValue(f.base, f.sigma, lo),
                                             BaseValue(f.base, f.sigma, hi));
            const double c = 1.0 + 0.5 * f.radius_l * std::pow(f.h, f.beta) *
                                       f.bump.sup_norm() / min_base;
            return reject(
                [&] {
                  return f.base == HypothesisBase::kGaussian
                             ? f.sigma * rng.Normal()
                             : rng.Uniform();
                },
                [&](double x) {
                  return HypothesisF1Value(f, x) /
                         (c * BaseValue(f.base, f.sigma, x));
                });
          }},
      family_);
}

std::string TestDensity::name() const { return ShortName(family_); }

Interval TestDensity::support() const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return std::visit(
      Overloaded{[](const NormalFamily&) { return Interval{-kInf, kInf}; },
                 [](const Triangular& f) { return Interval{f.lo, f.hi}; },
                 [](const HypothesisF0& f) {
                   return f.base == HypothesisBase::kGaussian
                              ? Interval{-kInf, kInf}
                              : Interval{0.0, 1.0};
                 },
                 [](const HypothesisF1& f) {
                   return f.base == HypothesisBase::kGaussian
                              ? Interval{-kInf, kInf}
                              : Interval{0.0, 1.0};
                 },
                 [](const auto&) { return Interval{0.0, 1.0}; }},
      family_);
}

Interval TestDensity::integration_range() const {
  return std::visit(
      Overloaded{
          [](const NormalFamily& f) {
            return Interval{f.mean - kNormalRangeSds * f.sd,
                            f.mean + kNormalRangeSds * f.sd};
          },
          [](const Triangular& f) { return Interval{f.lo, f.hi}; },
          [](const HypothesisF0& f) {
            return f.base == HypothesisBase::kGaussian
                       ? Interval{-kNormalRangeSds * f.sigma,
                                  kNormalRangeSds * f.sigma}
                       : Interval{0.0, 1.0};
          },
          [](const HypothesisF1& f) {
            if (f.base == HypothesisBase::kUniform) return Interval{0.0, 1.0};
            const double r = kNormalRangeSds * f.sigma;
            return Interval{std::min(-r, f.t - f.h), std::max(r, f.t + 2.0 * f.h)};
          },
          [](const auto&) { return Interval{0.0, 1.0}; }},
      family_);
}

std::vector<double> TestDensity::breakpoints() const {
  const auto normal_points = [](double mean, double sd) {
    std::vector<double> points;
    for (int k = -8; k <= 8; ++k) points.push_back(mean + k * sd);
    return points;
  };
  return std::visit(
      Overloaded{
          [](const Uniform01&) { return std::vector<double>{0.0, 1.0}; },
          [&](const NormalFamily& f) { return normal_points(f.mean, f.sd); },
          [](const BetaMixture&) {
            return std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0};
          },
          [](const Triangular& f) { return std::vector<double>{f.lo, f.mode, f.hi}; },
          [](const TrigPolynomial& f) {
            std::vector<double> points;
            const std::size_t pieces =
                4 * std::max<std::size_t>(1, (f.coefficients.size() + 1) / 2);
            for (std::size_t k = 0; k <= pieces; ++k) {
              points.push_back(static_cast<double>(k) / pieces);
            }
            return points;
          },
          [&](const HypothesisF0& f) {
            return f.base == HypothesisBase::kGaussian
                       ? normal_points(0.0, f.sigma)
                       : std::vector<double>{0.0, 1.0};
          },
          [&](const HypothesisF1& f) {
            std::vector<double> points = f.base == HypothesisBase::kGaussian
                                             ? normal_points(0.0, f.sigma)
                                             : std::vector<double>{0.0, 1.0};
            for (double u : f.bump.breakpoints()) points.push_back(f.t + f.h * u);
            return points;
          }},
      family_);
}

bool TestDensity::supported_on_unit_interval() const {
  const Interval s = support();
  return s.lo >= 0.0 && s.hi <= 1.0;
}

// ---------------------------------------------------------------------------
// Functionals

double TotalMass(const TestDensity& f) {
  const Interval range = f.integration_range();
  const auto points = f.breakpoints();
  return Integrate([&f](double x) { return f(x); }, range.lo, range.hi, points);
}

double SmoothedValue(const TestDensity& f, const Kernel& kernel, double h,
                     double t) {
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  const double r = kernel.support_radius();
  std::vector<double> points = kernel.breakpoints();
  for (double b : f.breakpoints()) points.push_back((b - t) / h);
  return Integrate([&](double u) { return kernel(u) * f(t + h * u); }, -r, r,
                   points);
}

double ProjectionCoefficient(const TestDensity& f, const Basis& basis,
                             std::size_t j, std::size_t d) {
  if (!f.supported_on_unit_interval()) {
    throw DomainError("projection estimators need a density supported on [0, 1]");
  }
  std::vector<double> points = basis.Breakpoints(d);
  for (double b : f.breakpoints()) points.push_back(b);
  return Integrate([&](double x) { return f(x) * basis.Eval(j, x, d); }, 0.0,
                   1.0, points);
}

double ProjectedValue(const TestDensity& f, const Basis& basis, std::size_t d,
                      double t) {
  if (!f.supported_on_unit_interval()) {
    throw DomainError("projection estimators need a density supported on [0, 1]");
  }
  if (d == 0) throw DomainError("dimension must be at least 1");
  double value = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    const double phi_t = basis.Eval(j, t, d);
    if (phi_t == 0.0) continue;
    value += ProjectionCoefficient(f, basis, j, d) * phi_t;
  }
  return value;
}

double HypothesisBandwidth(double beta, double n, double alpha) {
  const double e = std::expm1(alpha);
  return std::pow(n * e * e, -1.0 / (2.0 * beta + 2.0));
}

double GaussianBaseSigma(double beta, double radius_l) {
  if (!(beta > 0.0 && beta <= 2.0)) {
    throw DomainError("hypothesis construction supports beta in (0, 2]");
  }
  const int l = static_cast<int>(std::floor(beta));
  // Derivative k of phi_sigma: (-1)^k sigma^-k He_k(x / sigma) phi_sigma(x).
  const auto derivative = [](int k, double x, double sigma) {
    const double z = x / sigma;
    double he = 1.0;
    switch (k) {
      case 1: he = z; break;
      case 2: he = z * z - 1.0; break;
      case 3: he = z * z * z - 3.0 * z; break;
      default: break;
    }
    return (k % 2 == 0 ? 1.0 : -1.0) * he * GaussianPdf(x, 0.0, sigma) /
           std::pow(sigma, k);
  };
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    constexpr std::size_t kGrid = 24001;
    std::vector<double> dl(kGrid), dl1(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) {
      const double x = sigma * (-12.0 + 24.0 * static_cast<double>(i) / (kGrid - 1));
      dl[i] = derivative(l, x, sigma);
      dl1[i] = derivative(l + 1, x, sigma);
    }
    if (HoelderBound(beta, dl, dl1) <= 0.5 * radius_l) return sigma;
  }
  std::ostringstream msg;
  msg << "no sigma in {1, 2, 4, 8} puts the Gaussian base in the Hoelder ball"
      << " (beta = " << beta << ", L/2 = " << 0.5 * radius_l << ")";
  throw DomainError(msg.str());
}

std::pair<TestDensity, TestDensity> MakeHypothesisPair(double beta,
                                                       double radius_l,
                                                       double t, double n,
                                                       double alpha,
                                                       HypothesisBase base) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(n >= 1.0)) throw DomainError("n must be at least 1");
  if (!(radius_l > 0.0)) throw DomainError("L must be positive");
  if (!(beta > 0.0 && beta <= 2.0)) {
    throw DomainError("hypothesis construction supports beta in (0, 2]");
  }
  const double sigma =
      base == HypothesisBase::kGaussian ? GaussianBaseSigma(beta, radius_l) : 1.0;
  HypothesisF1 f1;
  f1.base = base;
  f1.sigma = sigma;
  f1.beta = beta;
  f1.radius_l = radius_l;
  f1.t = t;
  f1.h = HypothesisBandwidth(beta, n, alpha);
  return {TestDensity(HypothesisF0{base, sigma}, beta),
          TestDensity(std::move(f1), beta)};
}

double TotalVariation(const TestDensity& f0, const TestDensity& f1) {
  const Interval r0 = f0.integration_range();
  const Interval r1 = f1.integration_range();
  std::vector<double> points = f0.breakpoints();
  for (double b : f1.breakpoints()) points.push_back(b);
  return Integrate([&](double x) { return std::abs(f0(x) - f1(x)); },
                   std::min(r0.lo, r1.lo), std::max(r0.hi, r1.hi), points);
}

}  // namespace ldpd
