#ifndef CIRCLAW_CIRCULAR_BM_HPP
#define CIRCLAW_CIRCULAR_BM_HPP

#include "circlaw/error.hpp"
#include "circlaw/harmonic_law.hpp"

namespace circlaw::bm {

/// Law of B(t) mod 2 pi: a_k = exp(-k^2 t / 2) / pi.
HarmonicLaw bm_law(double t, const Tolerance& tol = {});

/// Fourier-series route.
double circ_bm_density_series(double theta, double t, const Tolerance& tol = {});

/// sum_m exp(-(theta + 2 pi m)^2 / (2t)) / sqrt(2 pi t).
double circ_bm_density_wrapped(double theta, double t, const Tolerance& tol = {});

/// Picks the route that converges fastest: the wrapped sum for t < 2, the
/// series otherwise.
double circ_bm_density(double theta, double t, const Tolerance& tol = {});

/// exp(k cos theta) / (2 pi I_0(k)), evaluated as
/// exp(k (cos theta - 1)) / (2 pi exp(-k) I_0(k)).
double von_mises_density(double theta, double kappa);

/// (1/2pi) (1 + 2 sum I_m(k)/I_0(k) cos m theta).
double von_mises_series(double theta, double kappa, const Tolerance& tol = {});

/// Concentration whose first circular moment I_1(k)/I_0(k) equals exp(-t/2).
double von_mises_matching_kappa(double t);

/// sup over a 512-angle grid of |circular BM density - matched Von Mises density|.
double bm_von_mises_gap(double t);

/// P(-pi/2 < B(t) mod 2pi < pi/2) = 1/2 + (2/pi) sum (-1)^k exp(-(2k+1)^2 t/2) / (2k+1).
double bm_quadrant_prob(double t);

/// 1/2 + (2/pi) exp(-t/2).
double bm_quadrant_bound(double t);

/// True for t > -2 ln(pi/4), where the bound falls below 1. The bound itself
/// holds for every t > 0.
bool bm_quadrant_bound_applies(double t);

/// P(max_{s<=t} |B(s)| < theta) for line BM, theta in (0, pi]:
/// sum_r (-1)^r [Phi((1-2r) theta/sqrt t) - Phi(-(1+2r) theta/sqrt t)].
double bm_maxdist_cdf(double theta, double t);

/// -d/dt of bm_maxdist_cdf, differentiated term by term.
double bm_first_passage_density(double theta, double t);

}  // namespace circlaw::bm

#endif  // CIRCLAW_CIRCULAR_BM_HPP
