#include "circlaw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "circlaw/quadrature.hpp"

namespace circlaw::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

std::optional<double> mittag_leffler_series(double nu, double x, const Tolerance& tol) {
  const double ax = std::abs(x);
  const double log_ax = std::log(ax);
  double sum = 1.0;
  double peak = 1.0;
  for (std::size_t j = 1; j < tol.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    const double mag = std::exp(jd * log_ax - std::lgamma(nu * jd + 1.0));
    peak = std::max(peak, mag);
    // Rounding in the largest term bounds what the series can deliver.
    if (peak * kEps * 8.0 > 0.25 * tol.abs_tol) return std::nullopt;
    sum += (j % 2 == 0) ? mag : -mag;
    // Terms decrease monotonically once nu j + 1 is past the peak.
    if (mag < 0.01 * tol.abs_tol && mag < peak) return sum;
  }
  return std::nullopt;
}

std::optional<double> mittag_leffler_asymptotic(double nu, double s, const Tolerance& tol) {
  // E(-s) ~ sum_{j>=1} (-1)^(j+1) s^(-j) / Gamma(1 - nu j)
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < 400; ++j) {
    const double jd = static_cast<double>(j);
    const double rg = reciprocal_gamma(1.0 - nu * jd);
    const double term = std::pow(s, -jd) * rg;
    const double mag = std::abs(term);
    if (mag == 0.0) continue;  // pole of Gamma: the term vanishes
    if (mag < 0.1 * tol.abs_tol) return sum;
    if (mag > previous) return std::nullopt;  // divergence sets in first
    previous = mag;
    sum += (j % 2 == 1) ? term : -term;
  }
  return std::nullopt;
}

double mittag_leffler_integral(double nu, double s, const Tolerance& tol) {
  const double sin_nu = std::sin(nu * kPi);
  const double cos_nu = std::cos(nu * kPi);
  const double prefactor = sin_nu / (nu * kPi);
  auto integrand = [&](double y) {
    const double damp = std::exp(-std::pow(s * y, 1.0 / nu));
    return damp / (y * y + 2.0 * y * cos_nu + 1.0);
  };
  // Beyond y_cut the damping factor is below exp(-60).
  const double y_cut = std::pow(60.0, nu) / s;
  std::vector<double> breaks{0.0};
  if (cos_nu < 0.0) {
    // Lorentzian bump of width sin(nu pi) centred at -cos(nu pi).
    const double centre = -cos_nu;
    for (double w : {-8.0, -1.0, 0.0, 1.0, 8.0}) {
      const double b = centre + w * sin_nu;
      if (b > breaks.back() && b < y_cut) breaks.push_back(b);
    }
  }
  breaks.push_back(y_cut);
  quad::Options opt;
  opt.abs_tol = 0.05 * tol.abs_tol / prefactor;
  opt.max_subdivisions = 20000;
  auto r = quad::integrate_panels(integrand, breaks, opt);
  return prefactor * quad::value_or_throw(r, "mittag_leffler");
}

}  // namespace

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double mittag_leffler(double nu, double x, const Tolerance& tol) {
  tol.validate();
  detail::require(nu > 0.0 && nu <= 1.0, "mittag_leffler: nu must lie in (0, 1]");
  detail::require(x <= 0.0, "mittag_leffler: only x <= 0 is supported");
  detail::require(std::isfinite(x), "mittag_leffler: x must be finite");
  if (x == 0.0) return 1.0;
  if (nu == 1.0) return std::exp(x);
  if (x >= -5.0) {
    if (auto v = mittag_leffler_series(nu, x, tol)) return *v;
  }
  if (x <= -10.0) {
    if (auto v = mittag_leffler_asymptotic(nu, -x, tol)) return *v;
  }
  return mittag_leffler_integral(nu, -x, tol);
}

double odd_power_cosine_integral(unsigned p, double t, double x, const Tolerance& tol) {
  tol.validate();
  detail::require(p >= 3 && p % 2 == 1, "odd_power_cosine_integral: p must be odd and >= 3");
  detail::require(t > 0.0, "odd_power_cosine_integral: t must be positive");
  detail::require(std::isfinite(x), "odd_power_cosine_integral: x must be finite");
  const double pd = static_cast<double>(p);
  // Stationary point of the phase t xi^p + x xi (zero when x >= 0).
  const double anchor = x < 0.0 ? std::pow(-x / (pd * t), 1.0 / (pd - 1.0)) : 0.0;
  quad::Options opt;
  opt.abs_tol = 0.05 * tol.abs_tol * kPi;

  // Real-axis piece on [0, anchor]; |phase'| <= |x| there.
  double head = 0.0;
  if (anchor > 0.0) {
    const double panels = std::ceil(std::abs(x) * anchor / kPi);
    if (panels > 200000.0) {
      throw ConvergenceError("odd_power_cosine_integral: argument outside the supported range");
    }
    std::vector<double> breaks;
    const auto count = static_cast<std::size_t>(std::max(1.0, panels));
    for (std::size_t i = 0; i <= count; ++i) breaks.push_back(anchor * i / count);
    auto real_part = [&](double xi) { return std::cos(t * std::pow(xi, pd) + x * xi); };
    head = quad::value_or_throw(quad::integrate_panels(real_part, breaks, opt),
                                "odd_power_cosine_integral");
  }

  // Ray anchor + u e^{i phi}, phi = pi / (2p): every binomial term of the
  // phase has a nonnegative imaginary part there, so |e^{i phase}| decays.
  const double phi = kPi / (2.0 * pd);
  const std::complex<double> dir = std::polar(1.0, phi);
  auto ray = [&](double u) {
    const std::complex<double> z = anchor + u * dir;
    const std::complex<double> phase = t * std::pow(z, static_cast<int>(p)) + x * z;
    return std::real(dir * std::exp(std::complex<double>(0.0, 1.0) * phase));
  };
  // Im(phase) >= t u^p, so exp(-60) is reached by u = (60/t)^(1/p).
  const double u_max = std::pow(60.0 / t, 1.0 / pd);
  std::vector<double> breaks;
  for (int i = 0; i <= 32; ++i) breaks.push_back(u_max * i / 32.0);
  const double tail = quad::value_or_throw(quad::integrate_panels(ray, breaks, opt),
                                           "odd_power_cosine_integral");
  return (head + tail) / kPi;
}

double airy_ai(double x, const Tolerance& tol) {
  return odd_power_cosine_integral(3, 1.0 / 3.0, x, tol);
}

double bessel_i_scaled(unsigned m, double x, const Tolerance& tol) {
  tol.validate();
  detail::require(x >= 0.0 && std::isfinite(x), "bessel_i: x must be finite and >= 0");
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double md = static_cast<double>(m);
  // Log of the j-th series term, shifted by -x so the sum stays in range.
  double log_term = md * std::log(half) - std::lgamma(md + 1.0) - x;
  double sum = std::exp(log_term);
  const double log_q = 2.0 * std::log(half);
  for (std::size_t j = 1; j < tol.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    log_term += log_q - std::log(jd * (md + jd));
    const double term = std::exp(log_term);
    sum += term;
    if (jd > half && term < kEps * 0.01 * sum) return sum;
  }
  throw ConvergenceError("bessel_i: series did not converge within max_terms");
}

double bessel_i(unsigned m, double x, const Tolerance& tol) {
  const double scaled = bessel_i_scaled(m, x, tol);
  if (x > 700.0 && std::log(scaled) + x > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("bessel_i: I_m(x) exceeds the double range");
  }
  if (x <= 700.0) return scaled * std::exp(x);
  return std::exp(std::log(scaled) + x);
}

double gen_gamma_density(const GenGammaParams& p, double x) {
  p.validate();
  detail::require(x >= 0.0, "gen_gamma_density: x must be >= 0");
  if (x == 0.0) {
    if (p.gamma < 1.0) return std::numeric_limits<double>::infinity();
    return p.gamma == 1.0 ? p.scale_t : 0.0;
  }
  const double xg = std::pow(x, p.gamma);
  return p.gamma * (xg / x) * p.scale_t * std::exp(-xg * p.scale_t);
}

double gen_gamma_tail(const GenGammaParams& p, double k) {
  p.validate();
  detail::require(k >= 0.0, "gen_gamma_tail: k must be >= 0");
  return std::exp(-std::pow(k, p.gamma) * p.scale_t);
}

}  // namespace circlaw::specfun
