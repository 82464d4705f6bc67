// circlaw: evaluate circular laws on a grid, locate positivity times and run
// the acceptance suite.
//
// Exit codes: 0 success, 1 validation failure, 2 invalid parameters,
// 3 numerical non-convergence.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlaw/circular_bm.hpp"
#include "circlaw/circular_pseudo.hpp"
#include "circlaw/error.hpp"
#include "circlaw/fractional.hpp"
#include "circlaw/kernels.hpp"
#include "circlaw/validation.hpp"

namespace {

using namespace circlaw;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum Exit { kOk = 0, kValidationFailed = 1, kInvalid = 2, kNoConvergence = 3 };

struct RunConfig {
  std::string law = "even";
  int n = 1;
  double nu = 1.0;
  double beta = 1.0;
  double t = 1.0;
  std::size_t points = 512;
  double tol = 1e-10;
  std::uint64_t seed = validation::Config{}.seed;
  std::string out;
  std::vector<std::string> only;
  std::optional<double> ks_tol;
};

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return {buf, r.ptr};
}

void emit(const RunConfig& cfg, const std::string& data, const std::string& summary) {
  if (cfg.out.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + cfg.out);
  f << data;
  if (!f) throw DomainError("cannot write output file " + cfg.out);
  std::cout << summary << " -> " << cfg.out << "\n";
}

void check_config(const RunConfig& cfg) {
  detail::require(cfg.points >= 8, "points must be >= 8");
  detail::require(std::isfinite(cfg.t) && cfg.t > 0.0, "t must be positive");
  detail::require(cfg.n >= 1, "n must be >= 1");
  detail::require(cfg.tol > 0.0, "tol must be positive");
  detail::require(cfg.nu > 0.0 && cfg.nu <= 1.0, "nu must lie in (0, 1]");
  detail::require(cfg.beta > 0.0 && cfg.beta <= 1.0, "beta must lie in (0, 1]");
}

struct Evaluator {
  std::function<double(double)> density;
  std::function<double(double)> cdf;
};

Evaluator from_law(HarmonicLaw law) {
  auto shared = std::make_shared<HarmonicLaw>(std::move(law));
  return {[shared](double th) { return shared->density(th); },
          [shared](double th) { return shared->cdf(th); }};
}

Evaluator from_kernel(const kernels::KernelParams& p) {
  return {[p](double th) { return kernels::kernel_density(p, th); },
          [p](double th) { return kernels::kernel_cdf_closed(p, th); }};
}

Evaluator make_evaluator(const RunConfig& cfg) {
  const Tolerance tol{cfg.tol, Tolerance{}.max_terms};
  const std::string& l = cfg.law;
  if (l == "even") return from_law(pseudo::v_even(cfg.n, cfg.t, tol));
  if (l == "odd") return from_law(pseudo::v_odd_law(cfg.n, cfg.t, {}, tol));
  if (l == "bm") return from_law(bm::bm_law(cfg.t, tol));
  if (l == "timefrac") return from_law(frac::v_time_frac(cfg.n, cfg.nu, cfg.t, tol));
  if (l == "spacefrac") return from_law(frac::space_frac_law(cfg.beta, cfg.t, tol));
  if (l == "spacetimefrac") return from_law(frac::space_time_frac_law(cfg.nu, cfg.beta, cfg.t, tol));
  if (l == "wrappedstable") return from_law(frac::wrapped_stable_law(cfg.beta, cfg.t, tol));
  if (l == "kernel-even") return from_kernel(kernels::KernelParams::even(cfg.t));
  if (l == "kernel-odd") return from_kernel(kernels::KernelParams::odd(cfg.n, cfg.t));
  throw DomainError("unknown law " + l);
}

// Density rows sit on the periodic grid 2 pi i / N; CDF rows on
// 2 pi i / (N - 1), so the last row is theta = 2 pi.
int cmd_grid(const RunConfig& cfg, bool cumulative) {
  check_config(cfg);
  const auto ev = make_evaluator(cfg);
  const double denom = static_cast<double>(cumulative ? cfg.points - 1 : cfg.points);
  std::string csv = "theta,value\n";
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double th = i + 1 == cfg.points && cumulative ? kTwoPi : kTwoPi * static_cast<double>(i) / denom;
    const double v = cumulative ? ev.cdf(th) : ev.density(th);
    csv += format_double(th);
    csv += ',';
    csv += format_double(v);
    csv += '\n';
  }
  emit(cfg, csv,
       std::string(cumulative ? "cdf" : "density") + " of " + cfg.law + ", " + std::to_string(cfg.points) +
           " rows");
  return kOk;
}

int cmd_positivity(const RunConfig& cfg) {
  detail::require(cfg.n >= 1, "n must be >= 1");
  const auto r = pseudo::positivity_time(cfg.n, Tolerance{cfg.tol, Tolerance{}.max_terms});
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  j["t_bar"] = r.t_bar;
  j["min_theta_at_t_bar"] = r.min_theta;
  emit(cfg, j.dump(2) + "\n", "positivity time " + format_double(r.t_bar));
  return kOk;
}

int cmd_validate(const RunConfig& cfg) {
  validation::Config vc;
  vc.seed = cfg.seed;
  vc.only = cfg.only;
  vc.ks_threshold = cfg.ks_tol;
  const auto report = validation::run(vc);
  std::string failed;
  for (const auto& c : report.criteria) {
    if (!c.passed) failed += (failed.empty() ? "" : ",") + std::to_string(c.id);
  }
  emit(cfg, report.to_json(),
       std::to_string(report.criteria.size()) + " criteria, " + (failed.empty() ? "all passed" : "failed: " + failed));
  if (!failed.empty()) {
    std::cerr << "validation failed: criteria " << failed << "\n";
    return kValidationFailed;
  }
  return kOk;
}

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Circular laws: densities, distribution functions and validation"};
  app.require_subcommand(1);

  auto add_law_options = [&](CLI::App* sub) {
    sub->add_option("--law", cfg.law, "Law to evaluate")
        ->check(CLI::IsMember({"even", "odd", "bm", "timefrac", "spacefrac", "spacetimefrac", "wrappedstable",
                               "kernel-even", "kernel-odd"}));
    sub->add_option("--n", cfg.n, "Order index n");
    sub->add_option("--nu", cfg.nu, "Time-fractional order in (0, 1]");
    sub->add_option("--beta", cfg.beta, "Space-fractional order in (0, 1]");
    sub->add_option("--t", cfg.t, "Time t > 0");
    sub->add_option("--points", cfg.points, "Grid points (>= 8)");
    sub->add_option("--tol", cfg.tol, "Absolute series tolerance");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  };
  auto* density = app.add_subcommand("density", "Density on a uniform grid as CSV");
  add_law_options(density);
  auto* cdf = app.add_subcommand("cdf", "Distribution function on [0, 2pi] as CSV");
  add_law_options(cdf);
  auto* positivity = app.add_subcommand("positivity", "First time an even-order law is nonnegative");
  positivity->add_option("--n", cfg.n, "Order index n (law of order 2n)");
  positivity->add_option("--tol", cfg.tol, "Absolute series tolerance");
  positivity->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_option("--seed", cfg.seed, "Random seed");
  validate->add_option("--only", cfg.only, "Criterion groups or ids, comma separated");
  double ks_tol = 0.0;
  auto* ks_opt = validate->add_option("--ks-tol", ks_tol, "Override every KS threshold");
  validate->add_option("--out", cfg.out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  }
  if (*ks_opt) cfg.ks_tol = ks_tol;
  cfg.only = split_commas(cfg.only);

  try {
    if (*density) return cmd_grid(cfg, false);
    if (*cdf) return cmd_grid(cfg, true);
    if (*positivity) return cmd_positivity(cfg);
    return cmd_validate(cfg);
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const OverflowError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  }
}
