#include "circlaw/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "circlaw/error.hpp"

namespace circlaw::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_order(double v, const char* what) {
  detail::require(std::isfinite(v) && v > 0.0 && v <= 1.0, std::string(what) + " must lie in (0, 1]");
}

void check_time(double t) {
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
}

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

// log H^nu(1).
double log_stable_unit(double nu, RngStream& rng) {
  double u = kPi * rng.uniform();
  while (u == 0.0) u = kPi * rng.uniform();
  const double e = rng.exponential();
  const double log_a = (nu * std::log(std::sin(nu * u)) + (1.0 - nu) * std::log(std::sin((1.0 - nu) * u)) -
                        std::log(std::sin(u))) /
                       (1.0 - nu);
  return (1.0 - nu) / nu * (log_a - std::log(e));
}

unsigned resolve_workers(unsigned workers, std::size_t chunks) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));
}

// Runs body(c) for every chunk index c on a pool of threads.
template <class Body>
void for_each_chunk(std::size_t chunks, unsigned workers, Body body) {
  workers = resolve_workers(workers, chunks);
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) body(c);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

double sample_stable_subordinator(double nu, double t, RngStream& rng) {
  check_order(nu, "nu");
  check_time(t);
  if (nu == 1.0) return t;
  return std::exp(std::log(t) / nu + log_stable_unit(nu, rng));
}

double sample_inverse_subordinator(double nu, double t, RngStream& rng) {
  check_order(nu, "nu");
  check_time(t);
  if (nu == 1.0) return t;
  return std::exp(nu * (std::log(t) - log_stable_unit(nu, rng)));
}

double sample_wrapped_bm(double t, RngStream& rng) {
  check_time(t);
  return wrap(std::sqrt(t) * rng.normal());
}

double sample_subordinated_bm(double beta, double t, RngStream& rng) {
  const double h = sample_stable_subordinator(beta, t, rng);
  return wrap(std::sqrt(h) * rng.normal());
}

double sample_space_time_bm(double nu, double beta, double t, RngStream& rng) {
  check_order(beta, "beta");
  const double l = sample_inverse_subordinator(nu, t, rng);
  if (l == 0.0) return 0.0;
  const double h = sample_stable_subordinator(beta, l, rng);
  return wrap(std::sqrt(h) * rng.normal());
}

double simulate_planar_hit(double r, RngStream& rng, const PlanarHitOptions& opt) {
  detail::require(r > 0.0 && r < 1.0, "start radius must lie in (0, 1)");
  detail::require(opt.step > 0.0 && std::isfinite(opt.step), "step must be positive");
  const double sd = std::sqrt(opt.step);
  double x = r, y = 0.0;
  for (std::size_t i = 0; i < opt.max_steps; ++i) {
    const double nx = x + sd * rng.normal();
    const double ny = y + sd * rng.normal();
    if (nx * nx + ny * ny >= 1.0) {
      // |p + s d| = 1 for s in (0, 1].
      const double dx = nx - x, dy = ny - y;
      const double a = dx * dx + dy * dy;
      const double b = x * dx + y * dy;
      const double c = x * x + y * y - 1.0;
      const double s = (-b + std::sqrt(b * b - a * c)) / a;
      return wrap(std::atan2(y + s * dy, x + s * dx));
    }
    x = nx;
    y = ny;
  }
  throw ConvergenceError("simulate_planar_hit: step limit exceeded");
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  detail::require(!samples.empty(), "ks_statistic: empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

KsBounds ks_statistic_bounds(std::span<const double> samples,
                             const std::function<double(double)>& cdf, std::size_t points) {
  detail::require(!samples.empty(), "ks_statistic_bounds: empty sample");
  detail::require(points >= 2, "ks_statistic_bounds: need at least two cells");
  std::vector<double> grid(points + 1);
  for (std::size_t j = 0; j <= points; ++j) grid[j] = cdf(kTwoPi * j / static_cast<double>(points));
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  const double cell = kTwoPi / static_cast<double>(points);
  KsBounds b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto j = std::min(static_cast<std::size_t>(wrap(s[i]) / cell), points - 1);
    const double flo = grid[j], fhi = grid[j + 1];
    const double above = (i + 1) / n, below = i / n;
    b.upper = std::max({b.upper, above - flo, fhi - below});
    b.lower = std::max({b.lower, above - fhi, flo - below});
  }
  return b;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  detail::require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return d;
}

GridDensity histogram(std::span<const double> samples, std::size_t bins) {
  detail::require(!samples.empty(), "histogram: empty sample");
  detail::require(bins >= 1, "histogram: bins must be >= 1");
  const double width = kTwoPi / static_cast<double>(bins);
  GridDensity g;
  g.kind = GridKind::density;
  g.law_meta = "histogram, bin centers";
  g.thetas.resize(bins);
  g.values.assign(bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i) g.thetas[i] = (i + 0.5) * width;
  for (double s : samples) {
    auto idx = static_cast<std::size_t>(wrap(s) / width);
    g.values[std::min(idx, bins - 1)] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
  for (double& v : g.values) v *= norm;
  return g;
}

McReport mc_report(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double threshold, std::size_t bins) {
  McReport r;
  r.n_samples = samples.size();
  r.ks_statistic = ks_statistic(samples, cdf);
  r.ks_threshold = threshold;
  r.passed = r.ks_statistic < threshold;
  r.histogram = histogram(samples, bins);
  return r;
}

std::vector<double> draw(std::size_t n, std::uint64_t seed, std::uint64_t stream,
                         const std::function<double(RngStream&)>& sampler, unsigned workers) {
  std::vector<double> out(n);
  const RngStream root(seed, stream);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  for_each_chunk(chunks, workers, [&](std::size_t c) {
    RngStream rng = root.split(c);
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) out[i] = sampler(rng);
  });
  return out;
}

McEstimate estimate(std::span<const double> values) {
  detail::require(values.size() >= 2, "estimate: need at least two values");
  McEstimate e;
  e.n = values.size();
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  e.mean = mean;
  e.std_error = std::sqrt(m2 / static_cast<double>(k - 1) / static_cast<double>(k));
  return e;
}

McEstimate double_barrier_survival(double theta, double t, std::size_t paths, std::size_t steps,
                                   std::uint64_t seed, std::uint64_t stream, unsigned workers) {
  detail::require(theta > 0.0 && std::isfinite(theta), "theta must be positive");
  check_time(t);
  detail::require(paths >= 2 && steps >= 1, "need at least two paths and one step");
  const double dt = t / static_cast<double>(steps);
  const double sd = std::sqrt(dt);
  auto path = [&](RngStream& rng) {
    double x = 0.0, w = 1.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double y = x + sd * rng.normal();
      if (std::abs(y) >= theta) return 0.0;
      const double up = std::exp(-2.0 * (theta - x) * (theta - y) / dt);
      const double lo = std::exp(-2.0 * (theta + x) * (theta + y) / dt);
      w *= std::clamp(1.0 - up - lo, 0.0, 1.0);
      x = y;
    }
    return w;
  };
  const auto weights = draw(paths, seed, stream, path, workers);
  return estimate(weights);
}

}  // namespace circlaw::sim
