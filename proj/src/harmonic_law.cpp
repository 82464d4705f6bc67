#include "circlaw/harmonic_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "circlaw/quadrature.hpp"

namespace circlaw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sum_{k >= k0} k^(-s), s > 1, by Euler-Maclaurin after an explicit head.
double hurwitz_zeta(double s, std::size_t k0) {
  const std::size_t n = k0 + 24;
  double sum = 0.0;
  for (std::size_t k = k0; k < n; ++k) sum += std::pow(static_cast<double>(k), -s);
  const double N = static_cast<double>(n);
  const double p = std::pow(N, -s);
  sum += N * p / (s - 1.0) + 0.5 * p;
  // Bernoulli corrections B_2/2!, B_4/4!, B_6/6!.
  const double d1 = s * p / N;
  const double d3 = s * (s + 1.0) * (s + 2.0) * p / (N * N * N);
  const double d5 = d3 * (s + 3.0) * (s + 4.0) / (N * N);
  return sum + d1 / 12.0 - d3 / 720.0 + d5 / 30240.0;
}

// (1/Gamma(s)) int_0^inf u^(s-1) e^(-k0 u) Part[e^(i k0 theta) / (1 - e^(-u + i theta))] du
// for theta in (0, pi]; `imag` selects the imaginary part.
double polylog_tail_integral(double s, std::size_t k0, double theta, bool imag, double abs_tol) {
  const double k = static_cast<double>(k0);
  const double ck = std::cos(k * theta);
  const double sk = std::sin(k * theta);
  const double half_sin = std::sin(0.5 * theta);
  const double sin_t = std::sin(theta);
  auto part = [&](double u) {
    const double eu = std::exp(-u);
    // 1 - e^(-u) cos(theta) without cancellation for small u and theta.
    const double re_den = -std::expm1(-u) + 2.0 * eu * half_sin * half_sin;
    const double im_den = -eu * sin_t;
    const double mag = re_den * re_den + im_den * im_den;
    const double damp = std::exp(-k * u);
    // (ck + i sk) / (re_den + i im_den)
    const double re = (ck * re_den + sk * im_den) / mag;
    const double im = (sk * re_den - ck * im_den) / mag;
    return damp * (imag ? im : re);
  };
  // u = v^(1/s) absorbs the u^(s-1) weight: u^(s-1) du = dv / s.
  const double inv_s = 1.0 / s;
  auto integrand = [&](double v) { return part(std::pow(v, inv_s)) * inv_s; };
  // exp(-k u) < exp(-60) beyond u_max, and |1 - e^z| >= 1 - e^(-u).
  const double u_max = 60.0 / k;
  std::vector<double> cuts;
  for (double f : {0.125, 0.5, 1.0, 2.0, 8.0}) cuts.push_back(f * theta);
  // Geometric cuts keep every panel within a factor 2 of its distance to 0,
  // so no panel is so wide that all its nodes miss the decay scale.
  const double floor_cut = 1e-3 * std::min(theta, 1.0 / k);
  for (double c = u_max; c > floor_cut; c *= 0.5) cuts.push_back(c);
  std::vector<double> breaks{0.0};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > 0.0 && c < u_max) breaks.push_back(std::pow(c, s));
  }
  breaks.push_back(std::pow(u_max, s));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  quad::Options opt;
  opt.abs_tol = abs_tol * std::tgamma(s);
  opt.max_subdivisions = 20000;
  const double value =
      quad::value_or_throw(quad::integrate_panels(integrand, breaks, opt), "power_tail");
  return value / std::tgamma(s);
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

double power_cos_tail(double s, std::size_t k0, double theta, double abs_tol) {
  detail::require(s > 0.0 && k0 >= 1, "power_cos_tail: need s > 0 and k0 >= 1");
  double r = reduce_angle(theta);
  if (r == 0.0) {
    if (s <= 1.0) return std::numeric_limits<double>::infinity();
    return hurwitz_zeta(s, k0);
  }
  if (r > kPi) r = kTwoPi - r;
  return polylog_tail_integral(s, k0, r, false, abs_tol);
}

double power_sin_tail(double s, std::size_t k0, double theta, double abs_tol) {
  detail::require(s > 0.0 && k0 >= 1, "power_sin_tail: need s > 0 and k0 >= 1");
  double r = reduce_angle(theta);
  if (r == 0.0) return 0.0;
  double sign = 1.0;
  if (r > kPi) {
    r = kTwoPi - r;
    sign = -1.0;
  }
  return sign * polylog_tail_integral(s, k0, r, true, abs_tol);
}

double stretched_exp_tail(double c, double q, std::size_t K) {
  detail::require(c > 0.0 && q > 0.0 && K >= 1, "stretched_exp_tail: bad arguments");
  // sum_{k>K} <= int_K^inf exp(-c x^q) dx = Gamma(1/q, c K^q) / (q c^(1/q)).
  const double s = 1.0 / q;
  const double z = c * std::pow(static_cast<double>(K), q);
  double log_gamma_upper;
  if (s <= 1.0) {
    log_gamma_upper = (s - 1.0) * std::log(z) - z;
  } else if (z > 2.0 * (s - 1.0)) {
    log_gamma_upper = (s - 1.0) * std::log(z) - z - std::log1p(-(s - 1.0) / z);
  } else {
    log_gamma_upper = std::lgamma(s);
  }
  return std::exp(log_gamma_upper - std::log(q) - s * std::log(c));
}

std::size_t stretched_exp_cutoff(double c, double q, double scale, double target,
                                 std::size_t cap) {
  auto ok = [&](std::size_t K) { return scale * stretched_exp_tail(c, q, K) <= target; };
  if (ok(1)) return 1;
  std::size_t lo = 1, hi = 2;
  while (!ok(hi)) {
    if (hi >= cap) throw ConvergenceError("series truncation index exceeds the supported cap");
    lo = hi;
    hi = std::min(cap, hi * 2);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double HarmonicLaw::density(double theta) const {
  double sum = 0.0;
  const std::size_t K = cos_coeffs.size();
  const bool has_sin = !sin_coeffs.empty();
  for (std::size_t i = K; i-- > 0;) {
    const double k = static_cast<double>(i + 1);
    double term = cos_coeffs[i] * std::cos(k * theta);
    if (has_sin) term += sin_coeffs[i] * std::sin(k * theta);
    sum += term;
  }
  for (const auto& pt : cos_tail) {
    if (pt.amp == 0.0) continue;
    sum += pt.amp * power_cos_tail(pt.power, K + 1, theta);
  }
  return a0 + sum;
}

double HarmonicLaw::cdf(double theta) const {
  detail::require(theta >= 0.0 && theta <= kTwoPi, "cdf: theta must lie in [0, 2 pi]");
  if (theta == 0.0) return 0.0;
  double sum = 0.0;
  const std::size_t K = cos_coeffs.size();
  const bool has_sin = !sin_coeffs.empty();
  for (std::size_t i = K; i-- > 0;) {
    const double k = static_cast<double>(i + 1);
    double term = cos_coeffs[i] * std::sin(k * theta);
    if (has_sin) term += sin_coeffs[i] * (1.0 - std::cos(k * theta));
    sum += term / k;
  }
  for (const auto& pt : cos_tail) {
    if (pt.amp == 0.0) continue;
    sum += pt.amp * power_sin_tail(pt.power + 1.0, K + 1, theta);
  }
  return a0 * theta + sum;
}

std::vector<double> uniform_angles(std::size_t points) {
  detail::require(points >= 2, "grid needs at least 2 points");
  std::vector<double> thetas(points);
  for (std::size_t i = 0; i < points; ++i) {
    thetas[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
  }
  return thetas;
}

GridDensity tabulate(const std::function<double(double)>& f, std::size_t points, GridKind kind,
                     std::string meta) {
  GridDensity g;
  g.thetas = uniform_angles(points);
  g.values.reserve(points);
  for (double th : g.thetas) g.values.push_back(f(th));
  g.kind = kind;
  g.law_meta = std::move(meta);
  return g;
}

GridDensity tabulate(const HarmonicLaw& law, std::size_t points, GridKind kind) {
  if (kind == GridKind::density) {
    return tabulate([&](double th) { return law.density(th); }, points, kind, law.meta);
  }
  return tabulate([&](double th) { return law.cdf(th); }, points, kind, law.meta);
}

FourierCoeffs fourier_coeffs(const std::function<double(double)>& f, std::size_t K,
                             std::size_t nodes) {
  detail::require(nodes > 2 * K, "fourier_coeffs: need more nodes than 2K");
  std::vector<double> values(nodes);
  const double h = kTwoPi / static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) values[j] = f(h * static_cast<double>(j));
  FourierCoeffs out;
  double mean = 0.0;
  for (double v : values) mean += v;
  out.a0 = mean / static_cast<double>(nodes);
  out.a.assign(K, 0.0);
  out.b.assign(K, 0.0);
  for (std::size_t k = 1; k <= K; ++k) {
    double sc = 0.0, ss = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      // Exact index reduction keeps the angle argument small.
      const double ang = h * static_cast<double>((k * j) % nodes);
      sc += values[j] * std::cos(ang);
      ss += values[j] * std::sin(ang);
    }
    out.a[k - 1] = sc * h / kPi;
    out.b[k - 1] = ss * h / kPi;
  }
  return out;
}

}  // namespace circlaw
