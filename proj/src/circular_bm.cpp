#include "circlaw/circular_bm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circlaw/specfun.hpp"

namespace circlaw::bm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
// Standard normal mass beyond 9 is below 1e-19.
constexpr double kGaussReach = 9.0;

void check_time(double t) {
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
}

// Phi(b) - Phi(a), a <= b, without cancellation in either tail.
double normal_mass(double a, double b) {
  if (b <= 0.0) return 0.5 * (std::erfc(-b / kSqrt2) - std::erfc(-a / kSqrt2));
  if (a >= 0.0) return 0.5 * (std::erfc(a / kSqrt2) - std::erfc(b / kSqrt2));
  return 1.0 - 0.5 * (std::erfc(-a / kSqrt2) + std::erfc(b / kSqrt2));
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

void check_barrier(double theta, double t) {
  detail::require(theta > 0.0 && theta <= kPi, "theta must lie in (0, pi]");
  check_time(t);
}

}  // namespace

HarmonicLaw bm_law(double t, const Tolerance& tol) {
  check_time(t);
  tol.validate();
  const std::size_t K = stretched_exp_cutoff(0.5 * t, 2.0, 1.0 / kPi, tol.abs_tol, 10'000'000);
  HarmonicLaw law;
  law.cos_coeffs.resize(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    law.cos_coeffs[k - 1] = std::exp(-0.5 * kd * kd * t) / kPi;
  }
  law.tail_bound = stretched_exp_tail(0.5 * t, 2.0, K) / kPi;
  law.meta = "circular Brownian motion";
  return law;
}

double circ_bm_density_series(double theta, double t, const Tolerance& tol) {
  return bm_law(t, tol).density(theta);
}

double circ_bm_density_wrapped(double theta, double t, const Tolerance& tol) {
  check_time(t);
  tol.validate();
  double base = std::fmod(theta, kTwoPi);
  if (base > kPi) base -= kTwoPi;
  if (base < -kPi) base += kTwoPi;
  const double norm = 1.0 / std::sqrt(kTwoPi * t);
  double sum = norm * std::exp(-base * base / (2.0 * t));
  // Translates with |x| >= pi (2m - 1) are each below the Gaussian value there
  // and shrink geometrically, so stop once that value is negligible.
  for (int m = 1;; ++m) {
    const double lo = kPi * (2.0 * m - 1.0);
    if (norm * std::exp(-lo * lo / (2.0 * t)) < 1e-3 * tol.abs_tol) break;
    if (m > 1'000'000) throw ConvergenceError("circ_bm_density_wrapped: t too large");
    const double xp = base + kTwoPi * m;
    const double xm = base - kTwoPi * m;
    sum += norm * (std::exp(-xp * xp / (2.0 * t)) + std::exp(-xm * xm / (2.0 * t)));
  }
  return sum;
}

double circ_bm_density(double theta, double t, const Tolerance& tol) {
  return t < 2.0 ? circ_bm_density_wrapped(theta, t, tol) : circ_bm_density_series(theta, t, tol);
}

double von_mises_density(double theta, double kappa) {
  detail::require(kappa >= 0.0 && std::isfinite(kappa), "von_mises: kappa must be >= 0");
  if (kappa == 0.0) return 1.0 / kTwoPi;
  return std::exp(kappa * (std::cos(theta) - 1.0)) / (kTwoPi * specfun::bessel_i_scaled(0, kappa));
}

double von_mises_series(double theta, double kappa, const Tolerance& tol) {
  detail::require(kappa >= 0.0 && std::isfinite(kappa), "von_mises: kappa must be >= 0");
  tol.validate();
  if (kappa == 0.0) return 1.0 / kTwoPi;
  const double i0 = specfun::bessel_i_scaled(0, kappa);
  double sum = 0.0;
  for (unsigned m = 1;; ++m) {
    const double ratio = specfun::bessel_i_scaled(m, kappa) / i0;
    sum += ratio * std::cos(m * theta);
    // Ratios decrease in m; past m > kappa they fall faster than geometrically.
    if (m > kappa && ratio < 1e-3 * tol.abs_tol) break;
    if (m > 100000) throw ConvergenceError("von_mises_series: no convergence");
  }
  return (1.0 + 2.0 * sum) / kTwoPi;
}

double von_mises_matching_kappa(double t) {
  check_time(t);
  const double target = std::exp(-0.5 * t);
  auto ratio = [](double k) {
    return specfun::bessel_i_scaled(1, k) / specfun::bessel_i_scaled(0, k);
  };
  double lo = 0.0, hi = 1.0;
  while (ratio(hi) < target) {
    hi *= 2.0;
    if (hi > 1e7) throw ConvergenceError("von_mises_matching_kappa: t too small");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double bm_von_mises_gap(double t) {
  const double kappa = von_mises_matching_kappa(t);
  double gap = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double th = kTwoPi * i / 512.0;
    gap = std::max(gap, std::abs(circ_bm_density(th, t) - von_mises_density(th, kappa)));
  }
  return gap;
}

double bm_quadrant_prob(double t) {
  check_time(t);
  if (t < 1.0) {
    // Wrapped-Gaussian mass of (-pi/2, pi/2): fast for small t.
    const double s = std::sqrt(t);
    double p = normal_mass(-0.5 * kPi / s, 0.5 * kPi / s);
    for (int m = 1;; ++m) {
      const double a = (kTwoPi * m - 0.5 * kPi) / s;
      if (a > kGaussReach) break;
      p += 2.0 * normal_mass(a, (kTwoPi * m + 0.5 * kPi) / s);
    }
    return p;
  }
  double sum = 0.0;
  for (int k = 0;; ++k) {
    const double j = 2.0 * k + 1.0;
    const double term = std::exp(-0.5 * j * j * t) / j;
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-18) break;
  }
  return 0.5 + 2.0 / kPi * sum;
}

double bm_quadrant_bound(double t) {
  check_time(t);
  return 0.5 + 2.0 / kPi * std::exp(-0.5 * t);
}

bool bm_quadrant_bound_applies(double t) { return t > -2.0 * std::log(kPi / 4.0); }

double bm_maxdist_cdf(double theta, double t) {
  check_barrier(theta, t);
  const double s = std::sqrt(t);
  double sum = normal_mass(-theta / s, theta / s);
  for (int r = 1;; ++r) {
    // Both intervals of index +-r lie beyond (2r - 1) theta / sqrt t.
    if ((2.0 * r - 1.0) * theta / s > kGaussReach) break;
    if (r > 10'000'000) throw ConvergenceError("bm_maxdist_cdf: too many reflections");
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    const double plus = normal_mass(-(1.0 + 2.0 * r) * theta / s, (1.0 - 2.0 * r) * theta / s);
    const double minus = normal_mass(-(1.0 - 2.0 * r) * theta / s, (1.0 + 2.0 * r) * theta / s);
    sum += sign * (plus + minus);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double bm_first_passage_density(double theta, double t) {
  check_barrier(theta, t);
  const double s = std::sqrt(t);
  const double scale = 1.0 / (2.0 * t * s);
  auto term = [&](int r) {
    const double b = (1.0 - 2.0 * r) * theta;
    const double a = (1.0 + 2.0 * r) * theta;
    return scale * (b * normal_pdf(b / s) + a * normal_pdf(a / s));
  };
  double sum = term(0);
  for (int r = 1;; ++r) {
    if ((2.0 * r - 1.0) * theta / s > 40.0) break;
    if (r > 10'000'000) throw ConvergenceError("bm_first_passage_density: too many reflections");
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (term(r) + term(-r));
  }
  return std::max(sum, 0.0);
}

}  // namespace circlaw::bm
