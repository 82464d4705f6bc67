#include "circlaw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "circlaw/line_solutions.hpp"
#include "circlaw/quadrature.hpp"

namespace circlaw::kernels {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCauchyTranslates = 1000;

void check_theta(double theta) {
  detail::require(theta >= 0.0 && theta <= kTwoPi, "theta must lie in [0, 2pi]");
}

// Continuous antiderivative of 2 pi times the kernel with rotation removed,
// divided by pi: (1/pi) Psi(x/2) with Psi(phi) = m pi + atan(rho tan r),
// phi = m pi + r, |r| <= pi/2.
double unwrapped(double rho, double x) {
  const double phi = 0.5 * x;
  const double m = std::nearbyint(phi / kPi);
  const double r = phi - m * kPi;
  return (m * kPi + std::atan2(rho * std::sin(r), std::cos(r))) / kPi;
}

// coth(at/2) = (1 + e^(-at)) / (1 - e^(-at)).
double rho_of(const KernelParams& p) { return 1.0 / std::tanh(0.5 * p.a * p.t); }

}  // namespace

KernelParams KernelParams::even(double t) {
  KernelParams p{t, 1.0, 0.0};
  p.validate();
  return p;
}

KernelParams KernelParams::odd(int n, double t) {
  detail::require(n >= 1, "n must be >= 1");
  const double angle = kPi / (2.0 * (2.0 * n + 1.0));
  KernelParams p{t, std::cos(angle), std::sin(angle)};
  p.validate();
  return p;
}

void KernelParams::validate() const {
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
  detail::require(a > 0.0 && a <= 1.0 && b >= 0.0 && b < 1.0, "kernel constants out of range");
  detail::require(std::abs(a * a + b * b - 1.0) < 1e-12, "kernel constants need a^2 + b^2 = 1");
}

double kernel_density(const KernelParams& p, double theta) {
  p.validate();
  const double e = std::exp(-p.a * p.t);
  const double one_minus_e = -std::expm1(-p.a * p.t);
  const double num = -std::expm1(-2.0 * p.a * p.t);
  const double den = one_minus_e * one_minus_e + 2.0 * e * (1.0 - std::cos(theta + p.b * p.t));
  return num / den / kTwoPi;
}

HarmonicLaw kernel_law(const KernelParams& p, const Tolerance& tol) {
  p.validate();
  tol.validate();
  const double c = p.a * p.t;
  const std::size_t K = stretched_exp_cutoff(c, 1.0, 1.0 / kPi, tol.abs_tol, 100'000'000);
  HarmonicLaw law;
  law.cos_coeffs.resize(K);
  if (p.b != 0.0) law.sin_coeffs.resize(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double damp = std::exp(-c * kd) / kPi;
    law.cos_coeffs[k - 1] = damp * std::cos(kd * p.b * p.t);
    if (p.b != 0.0) law.sin_coeffs[k - 1] = -damp * std::sin(kd * p.b * p.t);
  }
  law.tail_bound = stretched_exp_tail(c, 1.0, K) / kPi;
  law.meta = p.b == 0.0 ? "even-order Poisson kernel" : "odd-order Poisson kernel";
  return law;
}

double kernel_cdf_closed(const KernelParams& p, double theta) {
  p.validate();
  check_theta(theta);
  const double rho = rho_of(p);
  const double shift = p.b * p.t;
  return unwrapped(rho, theta + shift) - unwrapped(rho, shift);
}

double kernel_cdf_quadrature(const KernelParams& p, double theta) {
  p.validate();
  check_theta(theta);
  if (theta == 0.0) return 0.0;
  // Split at the mode so the peak sits on a panel edge.
  std::vector<double> breaks{0.0};
  double mode = std::fmod(-p.b * p.t, kTwoPi);
  if (mode < 0.0) mode += kTwoPi;
  if (mode > 0.0 && mode < theta) breaks.push_back(mode);
  if (mode + kTwoPi < theta) breaks.push_back(mode + kTwoPi);
  breaks.push_back(theta);
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.max_subdivisions = 20000;
  const auto r =
      quad::integrate_panels([&](double y) { return kernel_density(p, y); }, breaks, opt);
  return quad::value_or_throw(r, "kernel_cdf_quadrature");
}

double even_kernel_density(double theta, double t) {
  return kernel_density(KernelParams::even(t), theta);
}

double even_kernel_cdf(double theta, double t) {
  const auto p = KernelParams::even(t);
  check_theta(theta);
  if (theta == kPi) return 0.5;
  if (theta == kTwoPi) return 1.0;
  const double v = std::atan(rho_of(p) * std::tan(0.5 * theta)) / kPi;
  return theta < kPi ? v : 1.0 + v;
}

double even_quadrant_prob(double t) {
  KernelParams::even(t);
  return 0.5 + 2.0 / kPi * std::atan(std::exp(-t));
}

double odd_kernel_density(int n, double theta, double t) {
  return kernel_density(KernelParams::odd(n, t), theta);
}

double odd_kernel_wrapped_cauchy(int n, double theta, double t) {
  const auto p = KernelParams::odd(n, t);
  const auto ord = line::OrderParams::odd(n);
  double sum = 0.0;
  for (int m = -kCauchyTranslates; m <= kCauchyTranslates; ++m) {
    sum += line::cauchy_skewed_density(ord, theta + kTwoPi * m, t);
  }
  // Midpoint-rule remainder: sum_{m > M} f(theta + 2 pi m) ~ (1/2pi) int_{theta + 2pi(M + 1/2)}^inf f.
  const double scale = p.t * p.a;
  const double hi = (theta + kTwoPi * (kCauchyTranslates + 0.5) + p.t * p.b) / scale;
  const double lo = (theta - kTwoPi * (kCauchyTranslates + 0.5) + p.t * p.b) / scale;
  sum += (std::atan(1.0 / hi) + std::atan(-1.0 / lo)) / (kPi * kTwoPi);
  return sum;
}

double odd_kernel_cdf(int n, double theta, double t) {
  return kernel_cdf_quadrature(KernelParams::odd(n, t), theta);
}

PublishedCdf odd_kernel_cdf_piecewise(int n, double theta, double t) {
  const auto p = KernelParams::odd(n, t);
  check_theta(theta);
  const double rho = rho_of(p);
  const double bt = p.b * p.t;
  const double base = std::atan(rho * std::tan(0.5 * bt));
  const double moved = std::atan(rho * std::tan(0.5 * (theta + bt)));
  PublishedCdf out;
  if (theta <= kPi && theta + bt < kTwoPi) {
    out.branch = CdfBranch::lower;
    out.value = (moved - base) / kPi;
  } else if (theta > kPi && theta < kTwoPi - 0.5 * bt) {
    out.branch = CdfBranch::upper;
    out.value = 1.0 + (moved - base) / kPi;
  } else {
    out.branch = CdfBranch::gap;
    out.value = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double odd_kernel_cdf_single_arctan_printed(int n, double theta, double t) {
  const auto p = KernelParams::odd(n, t);
  check_theta(theta);
  const double e = std::exp(-p.a * p.t);
  const double u = std::tan(0.5 * theta);
  const double v = std::tan(0.5 * p.b * p.t);
  const double num = (1.0 - e * e) * u * (1.0 + v * v);
  const double den = (1.0 - e) * (1.0 - e) + 4.0 * u * v + (1.0 + e) * (1.0 + e) * v * v;
  return std::atan(num / den) / kPi;
}

double odd_kernel_cdf_single_arctan(int n, double theta, double t) {
  const auto p = KernelParams::odd(n, t);
  check_theta(theta);
  if (theta == kTwoPi) return 1.0;
  const double e = std::exp(-p.a * p.t);
  const double one_minus_e = -std::expm1(-p.a * p.t);
  const double u = std::tan(0.5 * theta);
  const double v = std::tan(0.5 * p.b * p.t);
  const double num = -std::expm1(-2.0 * p.a * p.t) * u * (1.0 + v * v);
  const double den = one_minus_e * one_minus_e + 4.0 * e * u * v + (1.0 + e) * (1.0 + e) * v * v;
  const double f = std::atan(num / den) / kPi;
  return f < 0.0 ? f + 1.0 : f;
}

double odd_half_circle_prob(int n, double t) {
  const auto p = KernelParams::odd(n, t);
  return std::atan2(std::sinh(p.a * p.t), std::sin(p.b * p.t)) / kPi;
}

std::array<double, 3> odd_quadrant_prob_printed(int n, double t) {
  const auto p = KernelParams::odd(n, t);
  const double at = p.a * p.t;
  const double bt = p.b * p.t;
  const double e = std::exp(-at);
  const double v = std::tan(0.5 * bt);
  const double first = std::atan((1.0 - e * e) * (1.0 + v * v) /
                                 ((1.0 - e) * (1.0 - e) + 4.0 * v + (1.0 + e) * (1.0 + e) * v * v)) /
                       kPi;
  const double sh = std::sinh(0.5 * at);
  const double ch = std::cosh(0.5 * at);
  const double cb = std::cos(0.5 * bt);
  const double sb = std::sin(0.5 * bt);
  const double second =
      std::atan(std::sinh(at) / (2.0 * sh * sh * cb * cb + std::exp(at) * std::sin(bt) +
                                 2.0 * ch * ch * sb * sb)) /
      kPi;
  const double third =
      std::atan(std::sinh(at) / (std::cosh(at) - std::cos(bt) + std::exp(at) * std::sin(bt))) /
      kPi;
  return {first, second, third};
}

double odd_quadrant_prob(int n, double t) {
  const auto p = KernelParams::odd(n, t);
  const double at = p.a * p.t;
  const double bt = p.b * p.t;
  return std::atan2(std::sinh(at), std::cosh(at) - std::cos(bt) + std::sin(bt)) / kPi;
}

double kernel_limit_gap(int n, double t) {
  const auto odd = KernelParams::odd(n, t);
  const auto even = KernelParams::even(t);
  double gap = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double th = kTwoPi * i / 512.0;
    gap = std::max(gap, std::abs(kernel_density(odd, th) - kernel_density(even, th)));
  }
  return gap;
}

}  // namespace circlaw::kernels
