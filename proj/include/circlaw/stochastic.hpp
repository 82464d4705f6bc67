#ifndef CIRCLAW_STOCHASTIC_HPP
#define CIRCLAW_STOCHASTIC_HPP

// Monte Carlo samplers and the statistics used to compare them with
// analytic laws.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "circlaw/harmonic_law.hpp"
#include "circlaw/rng.hpp"

namespace circlaw::sim {

/// H^nu(t) with E exp(-lambda H) = exp(-t lambda^nu), by Kanter's method:
/// H(1) = (A(U) / E)^((1-nu)/nu), U ~ Uniform(0, pi), E ~ Exp(1),
/// A(u) = [sin(nu u)^nu sin((1-nu) u)^(1-nu) / sin u]^(1/(1-nu)),
/// and H(t) = t^(1/nu) H(1). nu = 1 gives t.
double sample_stable_subordinator(double nu, double t, RngStream& rng);

/// L^nu(t) = (t / H^nu(1))^nu. nu = 1 gives t.
double sample_inverse_subordinator(double nu, double t, RngStream& rng);

/// Normal(0, t) reduced into [0, 2pi).
double sample_wrapped_bm(double t, RngStream& rng);

/// B(H^beta(t)) reduced into [0, 2pi).
double sample_subordinated_bm(double beta, double t, RngStream& rng);

/// B(H^beta(L^nu(t))) reduced into [0, 2pi).
double sample_space_time_bm(double nu, double beta, double t, RngStream& rng);

struct PlanarHitOptions {
  double step = 1e-3;
  std::size_t max_steps = 100'000'000;
};

/// Exit angle in [0, 2pi) of planar BM started at (r, 0) from the unit disk.
/// Euler steps of variance `step` per coordinate; the crossing point is
/// interpolated linearly between the last two positions.
double simulate_planar_hit(double r, RngStream& rng, const PlanarHitOptions& opt = {});

/// sup |F_n - F| over the sorted sample.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

struct KsBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds on ks_statistic from `points` + 1 evaluations of the cdf at
/// 2 pi j / points: a sample in a grid cell has F between the cell's end
/// values. The gap is at most the largest cell mass.
KsBounds ks_statistic_bounds(std::span<const double> samples,
                             const std::function<double(double)>& cdf, std::size_t points);

/// Two-sample sup |F_n - G_m|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Bin counts on [0, 2pi) divided by n * width. thetas are bin centers.
GridDensity histogram(std::span<const double> samples, std::size_t bins);

struct McReport {
  std::size_t n_samples = 0;
  double ks_statistic = 0.0;
  double ks_threshold = 0.0;
  bool passed = false;  // ks_statistic < ks_threshold
  GridDensity histogram;
};

McReport mc_report(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double threshold, std::size_t bins = 64);

/// Draws in chunks of kChunk; chunk c uses RngStream(seed, stream).split(c),
/// so the output does not depend on `workers`.
inline constexpr std::size_t kChunk = 4096;
std::vector<double> draw(std::size_t n, std::uint64_t seed, std::uint64_t stream,
                         const std::function<double(RngStream&)>& sampler, unsigned workers = 0);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

McEstimate estimate(std::span<const double> values);

/// P(max_{s<=t} |B(s)| < theta) by `paths` discretized paths of `steps` steps.
/// Each step multiplies the path weight by the Brownian-bridge probability of
/// staying inside both barriers, 1 - exp(-2(theta-x)(theta-y)/dt)
/// - exp(-2(theta+x)(theta+y)/dt), clamped to [0, 1].
McEstimate double_barrier_survival(double theta, double t, std::size_t paths, std::size_t steps,
                                   std::uint64_t seed, std::uint64_t stream, unsigned workers = 0);

}  // namespace circlaw::sim

#endif  // CIRCLAW_STOCHASTIC_HPP
