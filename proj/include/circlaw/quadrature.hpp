#ifndef CIRCLAW_QUADRATURE_HPP
#define CIRCLAW_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (7/15) quadrature with an absolute error
// target. Subintervals are bisected in order of decreasing error estimate,
// QUADPACK QAG style.

#include <array>
#include <cstdio>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "circlaw/error.hpp"

namespace circlaw::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
  return {a, b, kronrod, err};
}

}  // namespace detail

/// Integrates f over [a, b] until the summed error estimate drops below
/// max(abs_tol, rel_tol * |value|) or the subdivision budget is spent.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gauss_kronrod_15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  out.evaluations = 15;
  heap.push(first);
  std::size_t splits = 0;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (splits >= opt.max_subdivisions) break;
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  return out;
}

/// Sums integrals over consecutive panels [breaks[i], breaks[i+1]], splitting
/// the absolute budget evenly.
template <class F>
Result integrate_panels(F&& f, std::span<const double> breaks, const Options& opt = {}) {
  Result out;
  out.converged = true;
  if (breaks.size() < 2) return out;
  Options per = opt;
  per.abs_tol = opt.abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto r = integrate(f, breaks[i], breaks[i + 1], per);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// Integrates f over [a, inf) through the map x = a + u / (1 - u).
template <class F>
Result integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u;
    const double val = f(a + u / w);
    const double jac = 1.0 / (w * w);
    const double prod = val * jac;
    return std::isfinite(prod) ? prod : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Throws ConvergenceError when the result missed its target.
inline double value_or_throw(const Result& r, const std::string& context) {
  if (!r.converged) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", r.error);
    throw ConvergenceError(context + ": quadrature did not converge (error estimate " + buf + ")");
  }
  return r.value;
}

}  // namespace circlaw::quad

#endif  // CIRCLAW_QUADRATURE_HPP
