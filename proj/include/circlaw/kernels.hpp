#ifndef CIRCLAW_KERNELS_HPP
#define CIRCLAW_KERNELS_HPP

// Poisson kernels of circular pseudoprocesses stopped at a stable time of
// index 1/order. The even-order kernel does not depend on n; the odd-order
// kernel is damped by a_n and rotated by b_n.

#include <array>

#include "circlaw/error.hpp"
#include "circlaw/harmonic_law.hpp"

namespace circlaw::kernels {

struct KernelParams {
  double t = 1.0;
  double a = 1.0;  // damping, a^2 + b^2 = 1
  double b = 0.0;  // rotation

  static KernelParams even(double t);
  /// a = cos(pi / (2(2n+1))), b = sin(pi / (2(2n+1))).
  static KernelParams odd(int n, double t);
  void validate() const;
};

/// (1/2pi) (1 - e^(-2at)) / (1 + e^(-2at) - 2 e^(-at) cos(theta + bt)).
double kernel_density(const KernelParams& p, double theta);

/// a_k = e^(-akt) cos(kbt) / pi, b_k = -e^(-akt) sin(kbt) / pi.
HarmonicLaw kernel_law(const KernelParams& p, const Tolerance& tol = {});

/// Integral of the density over [0, theta], theta in [0, 2pi], from the
/// continuous antiderivative (1/pi) arctan(coth(at/2) tan(x/2)) unwrapped
/// across x = pi (mod 2pi).
double kernel_cdf_closed(const KernelParams& p, double theta);

/// The same integral by adaptive quadrature of the density.
double kernel_cdf_quadrature(const KernelParams& p, double theta);

double even_kernel_density(double theta, double t);

/// (1/pi) arctan(coth(t/2) tan(theta/2)) on [0, pi), 1/2 at pi, and one more
/// than that expression on (pi, 2pi].
double even_kernel_cdf(double theta, double t);

/// 1/2 + (2/pi) arctan e^(-t).
double even_quadrant_prob(double t);

double odd_kernel_density(int n, double theta, double t);

/// sum_m of the skewed Cauchy line density at theta + 2 pi m. Translates with
/// |m| > 1000 are replaced by the integral of the density beyond them.
double odd_kernel_wrapped_cauchy(int n, double theta, double t);

/// Quadrature of the density over [0, theta], theta in [0, 2pi].
double odd_kernel_cdf(int n, double theta, double t);

enum class CdfBranch { lower, upper, gap };

struct PublishedCdf {
  CdfBranch branch = CdfBranch::gap;
  double value = 0.0;  // NaN on the gap
};

/// The two-branch arctan form as printed. lower: theta <= pi and
/// theta + bt < 2pi; upper: pi < theta < 2pi - bt/2; gap otherwise.
PublishedCdf odd_kernel_cdf_piecewise(int n, double theta, double t);

/// The single-arctan form as printed, principal branch:
/// (1/pi) arctan[(1 - e^2) u (1 + v^2) / ((1 - e)^2 + 4 u v + (1 + e)^2 v^2)],
/// e = e^(-at), u = tan(theta/2), v = tan(bt/2).
double odd_kernel_cdf_single_arctan_printed(int n, double theta, double t);

/// The single-arctan form with cross term 4 e u v, lifted to [0, 1).
double odd_kernel_cdf_single_arctan(int n, double theta, double t);

/// P(0 < Theta < pi) = (1/pi) atan2(sinh at, sin bt).
double odd_half_circle_prob(int n, double t);

/// P(0 < Theta < pi/2) by the three printed algebraic lines, in order.
std::array<double, 3> odd_quadrant_prob_printed(int n, double t);

/// P(0 < Theta < pi/2) = (1/pi) atan2(sinh at, cosh at - cos bt + sin bt).
double odd_quadrant_prob(int n, double t);

/// sup over 512 angles of |odd kernel (n) - even kernel| at time t.
double kernel_limit_gap(int n, double t);

}  // namespace circlaw::kernels

#endif  // CIRCLAW_KERNELS_HPP
