#ifndef CIRCLAW_CIRCULAR_PSEUDO_HPP
#define CIRCLAW_CIRCULAR_PSEUDO_HPP

// Wrapped pseudoprocess laws on the unit circle.

#include <cstddef>

#include "circlaw/error.hpp"
#include "circlaw/harmonic_law.hpp"
#include "circlaw/rng.hpp"

namespace circlaw::pseudo {

/// Largest truncation index accepted by the series routes.
inline constexpr std::size_t kMaxTerms = 1'000'000;

/// Even order 2n: a_k = exp(-k^(2n) t) / pi, b_k = 0, with K the smallest
/// index whose certified remainder is below tol.abs_tol.
HarmonicLaw v_even(int n, double t, const Tolerance& tol = {});

/// sum_m u_2n(theta + 2 pi m, t), summed outward until three consecutive
/// translates on each side are below tol.abs_tol / 100.
double v_even_wrapped(int n, double theta, double t, const Tolerance& tol = {});

/// Regularization of the odd-order law.
struct OddOptions {
  /// Width L of the window exp(-(x/L)^2) applied to the line solution before
  /// wrapping.
  double window = 400.0;
  /// Abel parameters, extrapolated to 0 by two Richardson steps.
  double abel_eps[3] = {0.02, 0.01, 0.005};
  /// Largest route discrepancy not flagged.
  double agreement = 1e-4;
};

/// Odd order 2n+1. The wrapped line solution windowed by exp(-(x/L)^2),
/// represented by its Fourier coefficients
///
///   c_k = (1/2pi) int exp(i t xi^(2n+1)) g_L(k - xi) dxi,  g_L = Gaussian of sd sqrt(2)/L,
///
/// so a_k -> cos(k^(2n+1) t)/pi and b_k -> -sin(k^(2n+1) t)/pi as L grows.
HarmonicLaw v_odd_law(int n, double t, const OddOptions& opt = {}, const Tolerance& tol = {});

/// The windowed wrap summed directly in x. Slow; a cross-check of v_odd_law.
double v_odd_wrapped_direct(int n, double theta, double t, const OddOptions& opt = {},
                            const Tolerance& tol = {});

/// Abel-regularized series 1/(2pi) + (1/pi) sum exp(-eps k) cos(k^(2n+1) t + k theta),
/// Richardson-extrapolated to eps = 0.
double v_odd_abel(int n, double theta, double t, const OddOptions& opt = {},
                  const Tolerance& tol = {});

struct OddValue {
  double wrapped = 0.0;  // authoritative value
  double abel = 0.0;
  double discrepancy = 0.0;
  bool flagged = false;  // discrepancy > opt.agreement
};

OddValue v_odd(int n, double theta, double t, const OddOptions& opt = {},
               const Tolerance& tol = {});

/// v_2n(pi, t) = 1/(2pi) + (1/pi) sum (-1)^k exp(-k^(2n) t).
double min_value(int n, double t, const Tolerance& tol = {});

struct PositivityResult {
  double t_bar = 0.0;
  double min_theta = 0.0;      // argmin of v_2n(., t_bar)
  double min_density = 0.0;    // value there
  bool minimum_at_pi = true;   // |min_theta - pi| <= 1e-3
};

/// First time after which v_2n(., s) >= 0 for all s, located to 1e-6 by
/// bisection on a 4096-point grid scan with local refinement of the minimum.
PositivityResult positivity_time(int n, const Tolerance& tol = {});

/// Minimum of a law over a uniform grid refined by golden-section search
/// around the best grid point. Returns {theta, value}.
std::pair<double, double> grid_minimum(const HarmonicLaw& law, std::size_t points = 4096);

/// One draw by rejection from the uniform envelope. Throws SignedLawError if
/// the law is negative anywhere on a 4096-point grid.
double sample(const HarmonicLaw& law, RngStream& rng);

/// A sampler that performs the positivity check once.
class LawSampler {
 public:
  explicit LawSampler(HarmonicLaw law);
  double operator()(RngStream& rng) const;
  [[nodiscard]] double envelope() const { return bound_; }

 private:
  HarmonicLaw law_;
  double bound_ = 0.0;
};

}  // namespace circlaw::pseudo

#endif  // CIRCLAW_CIRCULAR_PSEUDO_HPP
