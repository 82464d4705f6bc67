#ifndef CIRCLAW_HARMONIC_LAW_HPP
#define CIRCLAW_HARMONIC_LAW_HPP

#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "circlaw/error.hpp"

namespace circlaw {

/// amp * k^(-power), one term of an algebraic coefficient tail.
struct PowerTerm {
  double amp = 0.0;
  double power = 0.0;
};

/// Truncated Fourier representation of a circular (possibly signed) density
///
///   v(theta) = a0 + sum_{k=1}^{K} (a_k cos k theta + b_k sin k theta)
///                 + sum_{k>K} sum_j amp_j k^(-power_j) cos k theta.
///
/// The last sum is present only for laws whose coefficients decay
/// algebraically; it is evaluated in closed integral form, not by summation.
/// tail_bound bounds everything the representation drops, in density units.
struct HarmonicLaw {
  double a0 = 1.0 / (2.0 * std::numbers::pi);
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;  // empty, or the same length as cos_coeffs
  std::vector<PowerTerm> cos_tail;
  double tail_bound = 0.0;
  std::string meta;

  [[nodiscard]] std::size_t order() const { return cos_coeffs.size(); }
  [[nodiscard]] double mass() const { return 2.0 * std::numbers::pi * a0; }

  /// Density at theta (any real; 2 pi periodic). +inf where an algebraic tail
  /// with power <= 1 diverges (theta = 0 mod 2 pi).
  [[nodiscard]] double density(double theta) const;

  /// Integral of the density over [0, theta], theta in [0, 2 pi].
  [[nodiscard]] double cdf(double theta) const;
};

enum class GridKind { density, cdf };

/// Values on the uniform grid theta_i = 2 pi i / N, i = 0..N-1.
struct GridDensity {
  std::vector<double> thetas;
  std::vector<double> values;
  GridKind kind = GridKind::density;
  std::string law_meta;
};

std::vector<double> uniform_angles(std::size_t points);

GridDensity tabulate(const std::function<double(double)>& f, std::size_t points, GridKind kind,
                     std::string meta = {});
GridDensity tabulate(const HarmonicLaw& law, std::size_t points, GridKind kind);

struct FourierCoeffs {
  double a0 = 0.0;
  std::vector<double> a;  // a_1..a_K
  std::vector<double> b;  // b_1..b_K
};

/// a_k = (1/pi) int_0^{2pi} f cos k theta, b_k likewise with sin, a0 the mean
/// of f; composite trapezoid rule on `nodes` equispaced points.
FourierCoeffs fourier_coeffs(const std::function<double(double)>& f, std::size_t K,
                             std::size_t nodes = 65536);

/// sum_{k >= k0} cos(k theta) / k^s for s > 0. +inf at theta = 0 mod 2 pi when s <= 1.
double power_cos_tail(double s, std::size_t k0, double theta, double abs_tol = 1e-15);

/// sum_{k >= k0} sin(k theta) / k^s for s > 0, theta not 0 mod 2 pi when s <= 0.
double power_sin_tail(double s, std::size_t k0, double theta, double abs_tol = 1e-15);

/// Upper bound on sum_{k > K} exp(-c k^q), c, q > 0, K >= 1.
double stretched_exp_tail(double c, double q, std::size_t K);

/// Smallest K >= 1 whose stretched_exp_tail(c, q, K) scaled by `scale` is at
/// most `target`. Throws ConvergenceError past `cap`.
std::size_t stretched_exp_cutoff(double c, double q, double scale, double target, std::size_t cap);

}  // namespace circlaw

#endif  // CIRCLAW_HARMONIC_LAW_HPP
