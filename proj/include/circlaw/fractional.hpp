#ifndef CIRCLAW_FRACTIONAL_HPP
#define CIRCLAW_FRACTIONAL_HPP

// Fractional circular laws. Every law here has cosine coefficients
// c(lambda_k) / pi with lambda_k the eigenvalue of the spatial operator on
// cos k theta, and c either exp(-lambda t) or E_nu(-lambda t^nu).

#include <cstddef>

#include "circlaw/error.hpp"
#include "circlaw/harmonic_law.hpp"

namespace circlaw::frac {

/// Largest explicit truncation index. Laws whose coefficients have not decayed
/// by then keep the remainder in tail_bound and note it in meta.
inline constexpr std::size_t kMaxTerms = 1'000'000;

struct FracParams {
  double nu = 1.0;    // Caputo time order
  double beta = 1.0;  // fractional Laplacian order
  void validate() const;
};

/// a_k = E_nu(-k^(2n) t^nu) / pi. Past the explicit range the coefficients
/// follow the algebraic expansion sum_j (-1)^(j+1) x^(-j) / Gamma(1 - nu j),
/// kept as cos_tail terms.
HarmonicLaw v_time_frac(int n, double nu, double t, const Tolerance& tol = {});

/// a_k = exp(-(k^2/2)^beta t) / pi.
HarmonicLaw space_frac_law(double beta, double t, const Tolerance& tol = {});
double p_space_frac(double beta, double theta, double t, const Tolerance& tol = {});

/// (1/2pi) (1 - r^2) / (1 + r^2 - 2 r cos theta), r = exp(-t / sqrt 2):
/// the beta = 1/2 space-fractional law summed in closed form.
double poisson_kernel_half(double theta, double t);

/// Multiplies a_k and b_k by (k^2/2)^beta and zeroes a0, i.e. applies
/// (-(1/2) d^2/dtheta^2)^beta. With `generator` the sign is reversed.
/// Tail terms amp k^(-p) become amp 2^(-beta) k^(-(p - 2 beta)); the tail
/// bound becomes +inf unless it was 0.
HarmonicLaw frac_laplacian_apply(double beta, const HarmonicLaw& law, bool generator = false);

/// a_k = exp(-k^(2 beta) t) / pi.
HarmonicLaw wrapped_stable_law(double beta, double t, const Tolerance& tol = {});
double p_wrapped_stable(double beta, double theta, double t, const Tolerance& tol = {});

/// a_k = E_nu(-(k^2/2)^beta t^nu) / pi.
HarmonicLaw space_time_frac_law(double nu, double beta, double t, const Tolerance& tol = {});
double p_space_time_frac(double nu, double beta, double theta, double t,
                         const Tolerance& tol = {});

}  // namespace circlaw::frac

#endif  // CIRCLAW_FRACTIONAL_HPP
