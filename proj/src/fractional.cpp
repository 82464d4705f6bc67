#include "circlaw/fractional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "circlaw/specfun.hpp"

namespace circlaw::frac {

namespace {

constexpr double kPi = std::numbers::pi;
// The algebraic expansion is trusted only past this argument.
constexpr double kAsymptoticStart = 20.0;
constexpr int kMaxAsymptoticTerms = 60;

void check_order(double v, const char* what) {
  detail::require(std::isfinite(v) && v > 0.0 && v <= 1.0, std::string(what) + " must lie in (0, 1]");
}

void check_time(double t) {
  detail::require(std::isfinite(t) && t > 0.0, "t must be positive");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Eigenvalue scale * k^(2q) of the spatial operator on cos k theta.
struct Spectrum {
  double scale;
  double q;
  [[nodiscard]] double at(double k) const { return scale * std::pow(k, 2.0 * q); }
};

// Coefficients exp(-lambda_k t) / pi.
HarmonicLaw exp_law(const Spectrum& sp, double t, const Tolerance& tol, std::string meta) {
  const double c = sp.scale * t;
  const double expo = 2.0 * sp.q;
  std::size_t K = 0;
  try {
    K = stretched_exp_cutoff(c, expo, 1.0 / kPi, tol.abs_tol, kMaxTerms);
  } catch (const ConvergenceError&) {
    K = kMaxTerms;
  }
  HarmonicLaw law;
  law.cos_coeffs.resize(K);
  for (std::size_t k = 1; k <= K; ++k) {
    law.cos_coeffs[k - 1] = std::exp(-sp.at(static_cast<double>(k)) * t) / kPi;
  }
  law.tail_bound = stretched_exp_tail(c, expo, K) / kPi;
  if (law.tail_bound > tol.abs_tol) meta += ", slow decay: remainder bound " + fmt(law.tail_bound);
  law.meta = std::move(meta);
  return law;
}

// Coefficients E_nu(-lambda_k T) / pi, T = t^nu, nu < 1.
HarmonicLaw ml_law(double nu, const Spectrum& sp, double t, const Tolerance& tol,
                   std::string meta) {
  const double T = std::pow(t, nu);
  const double c = sp.scale * T;
  const double q = sp.q;

  // Terms j = 1..J of the expansion; m is the first later index with a
  // nonzero coefficient, and 2 q m > 1 keeps the remainder summable.
  int J = std::max(3, static_cast<int>(std::ceil(1.0 / (2.0 * q))) + 1);
  J = std::min(J, kMaxAsymptoticTerms);
  int m = J + 1;
  while (specfun::reciprocal_gamma(1.0 - nu * m) == 0.0) ++m;
  const double rg_m = std::abs(specfun::reciprocal_gamma(1.0 - nu * m));
  if (2.0 * q * m <= 1.0) throw ConvergenceError("fractional law: beta too small for the tail model");

  std::array<double, kMaxAsymptoticTerms + 1> amp{};
  for (int j = 1; j <= J; ++j) {
    amp[j] = ((j % 2) ? 1.0 : -1.0) * specfun::reciprocal_gamma(1.0 - nu * j);
  }
  auto asymptotic = [&](double x) {
    double s = 0.0;
    for (int j = J; j >= 1; --j) s += amp[j] * std::pow(x, -j);
    return s;
  };
  auto remainder = [&](double x) { return 2.0 * rg_m * std::pow(x, -m); };
  // Sum over k > K of remainder(c k^(2q)) / pi, bounded by the integral from K.
  const double decay = 2.0 * q * m - 1.0;
  auto tail_sum = [&](double K) {
    return 2.0 * rg_m * std::pow(c, -m) * std::pow(K, -decay) / decay / kPi;
  };

  double K = std::max(1.0, std::ceil(std::pow(kAsymptoticStart / c, 1.0 / (2.0 * q))));
  const double needed = std::pow(2.0 * rg_m * std::pow(c, -m) / (decay * kPi * tol.abs_tol), 1.0 / decay);
  K = std::max(K, std::ceil(needed));
  Tolerance check_tol;
  check_tol.abs_tol = 1e-15;
  for (;;) {
    if (K > static_cast<double>(kMaxTerms)) {
      throw ConvergenceError("fractional law: coefficients need more than " +
                             std::to_string(kMaxTerms) + " explicit terms");
    }
    bool ok = true;
    for (double k : {K + 1.0, 2.0 * K, 8.0 * K}) {
      const double x = sp.at(k) * T;
      const double err = std::abs(specfun::mittag_leffler(nu, -x, check_tol) - asymptotic(x));
      if (err > remainder(x) + 1e-14) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    K *= 2.0;
  }

  const auto Kn = static_cast<std::size_t>(K);
  Tolerance coeff_tol;
  coeff_tol.abs_tol = std::max(1e-15, tol.abs_tol / static_cast<double>(Kn));
  HarmonicLaw law;
  law.cos_coeffs.resize(Kn);
  for (std::size_t k = 1; k <= Kn; ++k) {
    law.cos_coeffs[k - 1] =
        specfun::mittag_leffler(nu, -sp.at(static_cast<double>(k)) * T, coeff_tol) / kPi;
  }
  for (int j = 1; j <= J; ++j) {
    if (amp[j] == 0.0) continue;
    law.cos_tail.push_back({amp[j] * std::pow(c, -j) / kPi, 2.0 * q * j});
  }
  law.tail_bound = tail_sum(K);
  law.meta = std::move(meta);
  return law;
}

HarmonicLaw mixed_law(double nu, const Spectrum& sp, double t, const Tolerance& tol,
                      std::string meta) {
  tol.validate();
  if (nu == 1.0) return exp_law(sp, t, tol, std::move(meta));
  return ml_law(nu, sp, t, tol, std::move(meta));
}

}  // namespace

void FracParams::validate() const {
  check_order(nu, "nu");
  check_order(beta, "beta");
}

HarmonicLaw v_time_frac(int n, double nu, double t, const Tolerance& tol) {
  detail::require(n >= 1, "n must be >= 1");
  check_order(nu, "nu");
  check_time(t);
  return mixed_law(nu, {1.0, static_cast<double>(n)}, t, tol,
                   "time-fractional order " + std::to_string(2 * n) + ", nu=" + fmt(nu) +
                       ", t=" + fmt(t));
}

HarmonicLaw space_frac_law(double beta, double t, const Tolerance& tol) {
  check_order(beta, "beta");
  check_time(t);
  tol.validate();
  return exp_law({std::pow(2.0, -beta), beta}, t, tol,
                 "space-fractional beta=" + fmt(beta) + ", t=" + fmt(t));
}

double p_space_frac(double beta, double theta, double t, const Tolerance& tol) {
  return space_frac_law(beta, t, tol).density(theta);
}

double poisson_kernel_half(double theta, double t) {
  check_time(t);
  const double r = std::exp(-t / std::numbers::sqrt2);
  const double one_minus_r = -std::expm1(-t / std::numbers::sqrt2);
  const double num = -std::expm1(-std::numbers::sqrt2 * t);
  const double den = one_minus_r * one_minus_r + 2.0 * r * (1.0 - std::cos(theta));
  return num / den / (2.0 * kPi);
}

HarmonicLaw frac_laplacian_apply(double beta, const HarmonicLaw& law, bool generator) {
  check_order(beta, "beta");
  HarmonicLaw out = law;
  const double sign = generator ? -1.0 : 1.0;
  out.a0 = 0.0;
  for (std::size_t k = 1; k <= out.cos_coeffs.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double lam = sign * std::pow(0.5 * kd * kd, beta);
    out.cos_coeffs[k - 1] *= lam;
    if (!out.sin_coeffs.empty()) out.sin_coeffs[k - 1] *= lam;
  }
  for (auto& term : out.cos_tail) {
    term.amp *= sign * std::pow(2.0, -beta);
    term.power -= 2.0 * beta;
    detail::require(term.power > 0.0, "frac_laplacian_apply: tail does not decay");
  }
  if (out.tail_bound > 0.0) out.tail_bound = std::numeric_limits<double>::infinity();
  out.meta = (generator ? "-(-Delta/2)^" : "(-Delta/2)^") + fmt(beta) + " of " + law.meta;
  return out;
}

HarmonicLaw wrapped_stable_law(double beta, double t, const Tolerance& tol) {
  check_order(beta, "beta");
  check_time(t);
  tol.validate();
  return exp_law({1.0, beta}, t, tol, "wrapped stable beta=" + fmt(beta) + ", t=" + fmt(t));
}

double p_wrapped_stable(double beta, double theta, double t, const Tolerance& tol) {
  return wrapped_stable_law(beta, t, tol).density(theta);
}

HarmonicLaw space_time_frac_law(double nu, double beta, double t, const Tolerance& tol) {
  check_order(nu, "nu");
  check_order(beta, "beta");
  check_time(t);
  return mixed_law(nu, {std::pow(2.0, -beta), beta}, t, tol,
                   "space-time-fractional nu=" + fmt(nu) + ", beta=" + fmt(beta) +
                       ", t=" + fmt(t));
}

double p_space_time_frac(double nu, double beta, double theta, double t, const Tolerance& tol) {
  return space_time_frac_law(nu, beta, t, tol).density(theta);
}

}  // namespace circlaw::frac
