#include "circlaw/circular_pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "circlaw/line_solutions.hpp"
#include "circlaw/quadrature.hpp"

namespace circlaw::pseudo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_args(int n, double t) {
  detail::require(n >= 1, "n must be >= 1");
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
}

double wrap_to_pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r > kPi) r -= kTwoPi;
  if (r < -kPi) r += kTwoPi;
  return r;
}

// t k^p mod 2 pi, exact to double precision for any k^p.
class PhaseTable {
 public:
  using Big = boost::multiprecision::number<
      boost::multiprecision::cpp_bin_float<1100, boost::multiprecision::digit_base_2>>;

  PhaseTable(unsigned p, double t, std::size_t K) : phases_(K + 1, 0.0) {
    const double bits = static_cast<double>(p) * std::log2(static_cast<double>(K) + 1.0);
    if (bits > 1000.0) throw ConvergenceError("odd series phase exceeds supported precision");
    const Big two_pi = boost::math::constants::two_pi<Big>();
    const Big tb = t;
    for (std::size_t k = 1; k <= K; ++k) {
      Big kp = 1;
      const Big kb = static_cast<double>(k);
      for (unsigned j = 0; j < p; ++j) kp *= kb;
      Big x = tb * kp;
      x -= two_pi * boost::multiprecision::floor(x / two_pi);
      phases_[k] = static_cast<double>(x);
    }
  }

  [[nodiscard]] double operator[](std::size_t k) const { return phases_[k]; }

 private:
  std::vector<double> phases_;
};

// Abel sum at one eps.
double abel_sum(const PhaseTable& phase, std::size_t K, double theta, double eps) {
  double sum = 0.0;
  for (std::size_t k = K; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const double ang = phase[k] + std::fmod(kd * theta, kTwoPi);
    sum += std::exp(-eps * kd) * std::cos(ang);
  }
  return 1.0 / kTwoPi + sum / kPi;
}

}  // namespace

HarmonicLaw v_even(int n, double t, const Tolerance& tol) {
  check_args(n, t);
  tol.validate();
  const double q = 2.0 * n;
  const std::size_t K = stretched_exp_cutoff(t, q, 1.0 / kPi, tol.abs_tol, kMaxTerms);
  HarmonicLaw law;
  law.cos_coeffs.resize(K);
  for (std::size_t k = 1; k <= K; ++k) {
    law.cos_coeffs[k - 1] = std::exp(-std::pow(static_cast<double>(k), q) * t) / kPi;
  }
  law.tail_bound = stretched_exp_tail(t, q, K) / kPi;
  law.meta = "even order " + std::to_string(2 * n) + ", t=" + std::to_string(t);
  return law;
}

double v_even_wrapped(int n, double theta, double t, const Tolerance& tol) {
  check_args(n, t);
  tol.validate();
  const auto ord = line::OrderParams::even(n);
  Tolerance inner = tol;
  inner.abs_tol = tol.abs_tol / 50.0;
  const double small = tol.abs_tol / 100.0;
  const double base = wrap_to_pi(theta);
  double sum = line::u_even(ord, base, t, inner);
  for (double dir : {1.0, -1.0}) {
    int quiet = 0;
    for (int m = 1; quiet < 3; ++m) {
      if (m > 100000) throw ConvergenceError("v_even_wrapped: translates do not decay");
      const double v = line::u_even(ord, base + dir * kTwoPi * m, t, inner);
      sum += v;
      quiet = std::abs(v) < small ? quiet + 1 : 0;
    }
  }
  return sum;
}

HarmonicLaw v_odd_law(int n, double t, const OddOptions& opt, const Tolerance& tol) {
  check_args(n, t);
  tol.validate();
  detail::require(opt.window > 0.0, "v_odd: window must be positive");
  const double p = 2.0 * n + 1.0;
  const double L = opt.window;
  // |c_k| is about exp(-(p t k^(p-1) / L)^2) / (2 pi).
  const double c = (p * t / L) * (p * t / L);
  const std::size_t K = stretched_exp_cutoff(c, 2.0 * (p - 1.0), 1.0 / kPi, 0.1 * tol.abs_tol,
                                             kMaxTerms);
  // xi = k + 2 eta / L turns g_L(k - xi) dxi into exp(-eta^2) d eta / sqrt(pi).
  const double eta_max = std::sqrt(45.0);
  quad::Options qopt;
  qopt.abs_tol = std::max(1e-3 * tol.abs_tol, 1e-12);
  auto coefficient = [&](double k) {
    const double top = k + 2.0 * eta_max / L;
    const double freq = p * t * std::pow(top, p - 1.0) * 2.0 / L;
    const double panels = std::max(16.0, std::ceil(2.0 * eta_max * freq / kPi));
    if (panels > 1e5) throw ConvergenceError("v_odd: coefficient quadrature too oscillatory");
    std::vector<double> breaks;
    const auto count = static_cast<std::size_t>(panels);
    for (std::size_t i = 0; i <= count; ++i) {
      breaks.push_back(-eta_max + 2.0 * eta_max * static_cast<double>(i) / panels);
    }
    // t (k + d)^p = t k^p + t sum_{j>=1} C(p, j) k^(p-j) d^j; only the sum varies
    // with eta, and it is formed without cancellation.
    const int pi_int = static_cast<int>(p);
    auto increment = [&](double eta) {
      const double d = 2.0 * eta / L;
      double sum = 0.0, binom = 1.0, dj = 1.0;
      for (int j = 1; j <= pi_int; ++j) {
        binom = binom * (pi_int - j + 1) / j;
        dj *= d;
        sum += binom * std::pow(k, pi_int - j) * dj;
      }
      return t * sum;
    };
    auto re = [&](double eta) { return std::cos(increment(eta)) * std::exp(-eta * eta); };
    auto im = [&](double eta) { return std::sin(increment(eta)) * std::exp(-eta * eta); };
    const double cr = quad::value_or_throw(quad::integrate_panels(re, breaks, qopt), "v_odd");
    const double ci = quad::value_or_throw(quad::integrate_panels(im, breaks, qopt), "v_odd");
    const double base = std::fmod(t * std::pow(k, p), kTwoPi);
    return std::polar(1.0, base) * std::complex<double>(cr, ci) / (kTwoPi * std::sqrt(kPi));
  };
  HarmonicLaw law;
  law.a0 = coefficient(0.0).real();
  law.cos_coeffs.resize(K);
  law.sin_coeffs.resize(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const auto ck = coefficient(static_cast<double>(k));
    law.cos_coeffs[k - 1] = 2.0 * ck.real();
    law.sin_coeffs[k - 1] = -2.0 * ck.imag();
  }
  law.tail_bound = stretched_exp_tail(c, 2.0 * (p - 1.0), K) / kPi;
  law.meta = "odd order " + std::to_string(2 * n + 1) + ", t=" + std::to_string(t) +
             ", window=" + std::to_string(L);
  return law;
}

double v_odd_wrapped_direct(int n, double theta, double t, const OddOptions& opt,
                            const Tolerance& tol) {
  check_args(n, t);
  tol.validate();
  const auto ord = line::OrderParams::odd(n);
  const double L = opt.window;
  const double reach = 6.5 * L;
  const double base = wrap_to_pi(theta);
  const auto m_max = static_cast<long>(std::ceil(reach / kTwoPi));
  Tolerance inner = tol;
  inner.abs_tol = tol.abs_tol / static_cast<double>(2 * m_max + 1);
  double sum = 0.0;
  for (long m = -m_max; m <= m_max; ++m) {
    const double x = base + kTwoPi * static_cast<double>(m);
    const double w = std::exp(-(x / L) * (x / L));
    sum += line::u_odd(ord, x, t, inner) * w;
  }
  return sum;
}

double v_odd_abel(int n, double theta, double t, const OddOptions& opt, const Tolerance& tol) {
  check_args(n, t);
  tol.validate();
  const unsigned p = static_cast<unsigned>(2 * n + 1);
  const double eps_min = *std::min_element(std::begin(opt.abel_eps), std::end(opt.abel_eps));
  detail::require(eps_min > 0.0, "v_odd_abel: eps must be positive");
  auto cutoff = [&](double eps) {
    // exp(-eps (K+1)) / (pi (1 - exp(-eps))) <= tol / 1000
    const double target = 1e-3 * tol.abs_tol * kPi * (-std::expm1(-eps));
    return static_cast<std::size_t>(std::ceil(-std::log(target) / eps));
  };
  const std::size_t K = cutoff(eps_min);
  const PhaseTable phase(p, t, K);
  double s[3];
  for (int i = 0; i < 3; ++i) s[i] = abel_sum(phase, cutoff(opt.abel_eps[i]), theta, opt.abel_eps[i]);
  // Two Richardson steps for eps halving: S(eps) = S0 + c1 eps + c2 eps^2 + ...
  const double r1 = 2.0 * s[1] - s[0];
  const double r2 = 2.0 * s[2] - s[1];
  return (4.0 * r2 - r1) / 3.0;
}

OddValue v_odd(int n, double theta, double t, const OddOptions& opt, const Tolerance& tol) {
  OddValue out;
  out.wrapped = v_odd_law(n, t, opt, tol).density(theta);
  out.abel = v_odd_abel(n, theta, t, opt, tol);
  out.discrepancy = std::abs(out.wrapped - out.abel);
  out.flagged = out.discrepancy > opt.agreement;
  return out;
}

double min_value(int n, double t, const Tolerance& tol) {
  return v_even(n, t, tol).density(kPi);
}

std::pair<double, double> grid_minimum(const HarmonicLaw& law, std::size_t points) {
  const auto thetas = uniform_angles(points);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double v = law.density(thetas[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double h = kTwoPi / static_cast<double>(points);
  double a = thetas[best] - h;
  double b = thetas[best] + h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = law.density(x1);
  double f2 = law.density(x2);
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = law.density(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = law.density(x2);
    }
  }
  double theta = 0.5 * (a + b);
  double value = law.density(theta);
  if (best_value < value) {
    theta = thetas[best];
    value = best_value;
  }
  theta = std::fmod(theta + kTwoPi, kTwoPi);
  return {theta, value};
}

PositivityResult positivity_time(int n, const Tolerance& tol) {
  detail::require(n >= 1, "n must be >= 1");
  PositivityResult out;
  if (n == 1) {
    // The wrapped Gaussian is strictly positive at every t > 0.
    out.t_bar = 0.0;
    out.min_theta = kPi;
    out.min_density = 0.0;
    out.minimum_at_pi = true;
    return out;
  }
  auto nonnegative = [&](double t) { return grid_minimum(v_even(n, t, tol)).second >= 0.0; };
  double hi = 0.1;
  while (!nonnegative(hi)) {
    hi *= 2.0;
    if (hi > 1e6) throw ConvergenceError("positivity_time: no nonnegative time found");
  }
  double lo = hi;
  do {
    lo *= 0.5;
    if (lo < 1e-6) {
      throw ConvergenceError("positivity_time: law is nonnegative down to t = 1e-6");
    }
  } while (nonnegative(lo));
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (nonnegative(mid) ? hi : lo) = mid;
  }
  // Later negativity would mean the nonnegative set is not a half-line.
  for (int i = 1; i <= 64; ++i) {
    const double s = hi * std::pow(20.0, i / 64.0);
    if (!nonnegative(s)) {
      throw ConvergenceError("positivity_time: law turns negative again after the bisection point");
    }
  }
  out.t_bar = hi;
  const auto [theta, value] = grid_minimum(v_even(n, hi, tol));
  out.min_theta = theta;
  out.min_density = value;
  out.minimum_at_pi = std::abs(theta - kPi) <= 1e-3;
  return out;
}

LawSampler::LawSampler(HarmonicLaw law) : law_(std::move(law)) {
  const auto thetas = uniform_angles(4096);
  double top = 0.0;
  for (double th : thetas) {
    const double v = law_.density(th);
    if (v < -law_.tail_bound) {
      throw SignedLawError("law takes negative values; refusing to sample a signed measure");
    }
    top = std::max(top, v);
  }
  if (!std::isfinite(top)) throw DomainError("law is unbounded; rejection sampling unavailable");
  bound_ = top * 1.05 + law_.tail_bound;
}

double LawSampler::operator()(RngStream& rng) const {
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    const double theta = kTwoPi * rng.uniform();
    const double y = bound_ * rng.uniform();
    const double f = law_.density(theta);
    if (f > bound_) throw ConvergenceError("sample: density exceeds the rejection envelope");
    if (y < f) return theta;
  }
  throw ConvergenceError("sample: rejection sampler made no progress");
}

double sample(const HarmonicLaw& law, RngStream& rng) { return LawSampler(law)(rng); }

}  // namespace circlaw::pseudo
