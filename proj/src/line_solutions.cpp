#include "circlaw/line_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "circlaw/quadrature.hpp"
#include "circlaw/specfun.hpp"

namespace circlaw::line {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxPanels = 1e5;

void check_time(double t) {
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
  if (t < kMinTime) throw ConvergenceError("t is below the supported floor of 1e-6");
}

// Breakpoints on [0, upper] spaced by at most `spacing`, at least `min_panels`.
std::vector<double> panel_breaks(double upper, double spacing, int min_panels) {
  double count = std::max(static_cast<double>(min_panels), std::ceil(upper / spacing));
  if (count > kMaxPanels) throw ConvergenceError("oscillatory integrand needs too many panels");
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> breaks(n + 1);
  for (std::size_t i = 0; i <= n; ++i) breaks[i] = upper * static_cast<double>(i) / count;
  return breaks;
}

}  // namespace

OrderParams OrderParams::even(int n) {
  detail::require(n >= 1, "order: n must be >= 1");
  return {n, Parity::even};
}

OrderParams OrderParams::odd(int n) {
  detail::require(n >= 1, "order: n must be >= 1");
  return {n, Parity::odd};
}

double OrderParams::sign_constant() const {
  if (parity == Parity::even) return (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n+1)
  return (n % 2 == 0) ? 1.0 : -1.0;                              // (-1)^n
}

double OrderParams::a() const {
  detail::require(parity == Parity::odd, "a_n is defined for odd orders only");
  return std::cos(kPi / (2.0 * (2.0 * n + 1.0)));
}

double OrderParams::b() const {
  detail::require(parity == Parity::odd, "b_n is defined for odd orders only");
  return std::sin(kPi / (2.0 * (2.0 * n + 1.0)));
}

double u_even(const OrderParams& ord, double x, double t, const Tolerance& tol) {
  detail::require(ord.parity == Parity::even, "u_even: even order required");
  tol.validate();
  check_time(t);
  const double gamma = 2.0 * ord.n;
  // Cut-off where (1/pi) int_X^inf exp(-xi^gamma t) <= exp(-X^gamma t) / (pi gamma X^(gamma-1) t)
  // drops below a tenth of the tolerance.
  const double target = 0.1 * tol.abs_tol;
  double upper = std::pow(std::max(1.0, std::log(1.0 / target)) / t, 1.0 / gamma);
  while (std::exp(-std::pow(upper, gamma) * t) /
             (kPi * gamma * std::pow(upper, gamma - 1.0) * t) > target) {
    upper *= 1.05;
  }
  const double spacing = std::abs(x) > 0.0 ? kPi / std::abs(x) : upper;
  const auto breaks = panel_breaks(upper, spacing, 4);
  auto integrand = [&](double xi) { return std::cos(xi * x) * std::exp(-std::pow(xi, gamma) * t); };
  quad::Options opt;
  opt.abs_tol = 0.5 * tol.abs_tol * kPi;
  return quad::value_or_throw(quad::integrate_panels(integrand, breaks, opt), "u_even") / kPi;
}

double u_even_prob_rep(const OrderParams& ord, double x, double t, const Tolerance& tol) {
  detail::require(ord.parity == Parity::even, "u_even_prob_rep: even order required");
  detail::require(x != 0.0, "u_even_prob_rep: x = 0 is excluded, use u_even");
  tol.validate();
  check_time(t);
  const specfun::GenGammaParams g{2.0 * ord.n, t};
  const double ax = std::abs(x);
  // P(G > upper) bounds the dropped part of E[sin(x G)].
  const double budget = 0.1 * tol.abs_tol * kPi * ax;
  const double upper =
      std::pow(std::max(1.0, std::log(1.0 / std::min(budget, 0.5))) / t, 1.0 / g.gamma);
  const auto breaks = panel_breaks(upper, kPi / ax, 8);
  auto integrand = [&](double v) { return std::sin(x * v) * specfun::gen_gamma_density(g, v); };
  quad::Options opt;
  opt.abs_tol = 0.5 * tol.abs_tol * kPi * ax;
  const double expectation =
      quad::value_or_throw(quad::integrate_panels(integrand, breaks, opt), "u_even_prob_rep");
  return expectation / (kPi * x);
}

double u3(double x, double t, const Tolerance& tol) {
  check_time(t);
  const double scale = std::cbrt(3.0 * t);
  Tolerance inner = tol;
  inner.abs_tol = tol.abs_tol * scale;
  return specfun::airy_ai(x / scale, inner) / scale;
}

double u_odd_prob_rep(const OrderParams& ord, double x, double t, const Tolerance& tol) {
  detail::require(ord.parity == Parity::odd, "u_odd_prob_rep: odd order required");
  detail::require(x != 0.0, "u_odd_prob_rep: x = 0 is excluded, use u_odd");
  tol.validate();
  check_time(t);
  const double p = 2.0 * ord.n + 1.0;
  const double an = ord.a();
  const double bn = ord.b();
  const double ax = std::abs(x);
  // log of |integrand| envelope: -b x g - t g^p + log(p t g^(p-1))
  auto log_envelope = [&](double v) {
    return -bn * x * v - t * std::pow(v, p) + std::log(p * t) + (p - 1.0) * std::log(v);
  };
  // Mode of the envelope, by bracketing the derivative root.
  double lo = 1e-12, hi = 1.0;
  auto slope = [&](double v) { return -bn * x - p * t * std::pow(v, p - 1.0) + (p - 1.0) / v; };
  while (slope(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  const double mode = 0.5 * (lo + hi);
  const double log_peak = log_envelope(mode);
  if (std::exp(log_peak) * kEps * 64.0 > tol.abs_tol * kPi * ax) {
    throw ConvergenceError("u_odd_prob_rep: cancellation exceeds tolerance for this x");
  }
  const double log_budget = std::log(0.01 * tol.abs_tol * kPi * ax);
  double upper = std::max(2.0 * mode, 1.0);
  while (log_envelope(upper) > log_budget) upper *= 1.1;
  const auto breaks = panel_breaks(upper, kPi / (an * ax), 8);
  auto integrand = [&](double v) {
    if (v <= 0.0) return 0.0;
    return std::exp(log_envelope(v)) * std::sin(an * x * v);
  };
  quad::Options opt;
  opt.abs_tol = 0.5 * tol.abs_tol * kPi * ax;
  const double expectation =
      quad::value_or_throw(quad::integrate_panels(integrand, breaks, opt), "u_odd_prob_rep");
  return expectation / (kPi * x);
}

double u_odd(const OrderParams& ord, double x, double t, const Tolerance& tol) {
  detail::require(ord.parity == Parity::odd, "u_odd: odd order required");
  check_time(t);
  return specfun::odd_power_cosine_integral(static_cast<unsigned>(ord.order()), t, x, tol);
}

double cauchy_skewed_density(const OrderParams& ord, double x, double t) {
  detail::require(t > 0.0, "cauchy_skewed_density: t must be positive");
  const double an = ord.a();
  const double bn = ord.b();
  const double shift = x + t * bn;
  return t * an / (kPi * (shift * shift + t * t * an * an));
}

}  // namespace circlaw::line
