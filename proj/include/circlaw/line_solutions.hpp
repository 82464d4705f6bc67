#ifndef CIRCLAW_LINE_SOLUTIONS_HPP
#define CIRCLAW_LINE_SOLUTIONS_HPP

// Fundamental solutions of du/dt = c_n d^n u / dx^n on the real line. These
// are the references the wrapped circular laws are checked against.

#include "circlaw/error.hpp"

namespace circlaw::line {

enum class Parity { even, odd };

/// Order descriptor: order = 2n (even) or 2n+1 (odd).
struct OrderParams {
  int n = 1;
  Parity parity = Parity::even;

  static OrderParams even(int n);
  static OrderParams odd(int n);

  [[nodiscard]] int order() const { return parity == Parity::even ? 2 * n : 2 * n + 1; }
  /// c_n: (-1)^(n+1) for order 2n, (-1)^n for order 2n+1.
  [[nodiscard]] double sign_constant() const;
  /// cos(pi / (2(2n+1))); odd orders only.
  [[nodiscard]] double a() const;
  /// sin(pi / (2(2n+1))); odd orders only.
  [[nodiscard]] double b() const;
};

/// Smallest time accepted by the quadrature routes.
inline constexpr double kMinTime = 1e-6;

/// u_{2n}(x, t) = (1/pi) int_0^inf cos(xi x) exp(-xi^(2n) t) dxi.
double u_even(const OrderParams& ord, double x, double t, const Tolerance& tol = {});

/// u_{2n}(x, t) = E[sin(x G)] / (pi x) with G generalized gamma of exponent
/// 2n and rate t. Undefined at x = 0.
double u_even_prob_rep(const OrderParams& ord, double x, double t, const Tolerance& tol = {});

/// Third-order solution (3t)^(-1/3) Ai(x (3t)^(-1/3)).
double u3(double x, double t, const Tolerance& tol = {});

/// u_{2n+1}(x, t) = E[exp(-b x G) sin(a x G)] / (pi x), G generalized gamma
/// of exponent 2n+1. For negative x the weight exp(b |x| G) forces heavy
/// cancellation; ConvergenceError is raised when the largest integrand value
/// times machine epsilon exceeds the tolerance.
double u_odd_prob_rep(const OrderParams& ord, double x, double t, const Tolerance& tol = {});

/// u_{2n+1}(x, t) from its Fourier integral on the steepest-descent path.
/// Valid for all x; used where the probabilistic form cancels.
double u_odd(const OrderParams& ord, double x, double t, const Tolerance& tol = {});

/// t a_n / (pi ((x + t b_n)^2 + t^2 a_n^2)).
double cauchy_skewed_density(const OrderParams& ord, double x, double t);

}  // namespace circlaw::line

#endif  // CIRCLAW_LINE_SOLUTIONS_HPP
