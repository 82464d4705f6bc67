#ifndef CIRCLAW_SPECFUN_HPP
#define CIRCLAW_SPECFUN_HPP

#include "circlaw/error.hpp"

namespace circlaw::specfun {

/// One-parameter Mittag-Leffler function E_{nu,1}(x) on the completely
/// monotone branch 0 < nu <= 1, x <= 0.
///
/// Three evaluation regimes are used: the defining power series when its
/// largest term is small enough that cancellation cannot eat the tolerance,
/// the algebraic asymptotic expansion for x <= -10 when its smallest term
/// reaches the tolerance, and otherwise the real-line integral
///
///   E(-s) = sin(nu pi)/(nu pi) * int_0^inf exp(-(s y)^(1/nu)) / (y^2 + 2 y cos(nu pi) + 1) dy
///
/// obtained by collapsing the Hankel contour. Its integrand is positive, so
/// it is stable for every s.
double mittag_leffler(double nu, double x, const Tolerance& tol = {});

/// (1/pi) int_0^inf cos(t xi^p + x xi) dxi for odd p >= 3: the line
/// fundamental solution of the order-p heat-type equation with c = (-1)^n.
/// The real axis is followed up to the stationary point of the phase, then
/// the path leaves along the ray at angle pi/(2p) where the integrand decays
/// monotonically, so no cancellation builds up for negative x.
double odd_power_cosine_integral(unsigned p, double t, double x, const Tolerance& tol = {});

/// Airy function Ai(x) = (1/pi) int_0^inf cos(a^3/3 + a x) da. Throws
/// ConvergenceError for x far below -2000, where the oscillatory head needs
/// too many panels.
double airy_ai(double x, const Tolerance& tol = {});

/// Modified Bessel function I_m(x) from its power series.
double bessel_i(unsigned m, double x, const Tolerance& tol = {});

/// exp(-x) I_m(x), summed in scaled form so it never overflows.
double bessel_i_scaled(unsigned m, double x, const Tolerance& tol = {});

/// 1 / Gamma(x), zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// Generalized gamma law with density gamma x^(gamma-1) t exp(-x^gamma t).
struct GenGammaParams {
  double gamma = 1.0;
  double scale_t = 1.0;

  void validate() const {
    detail::require(gamma > 0.0, "gen_gamma: gamma must be positive");
    detail::require(scale_t > 0.0, "gen_gamma: t must be positive");
  }
};

double gen_gamma_density(const GenGammaParams& p, double x);

/// P(G > k) = exp(-k^gamma t).
double gen_gamma_tail(const GenGammaParams& p, double k);

}  // namespace circlaw::specfun

#endif  // CIRCLAW_SPECFUN_HPP
