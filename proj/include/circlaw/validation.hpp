#ifndef CIRCLAW_VALIDATION_HPP
#define CIRCLAW_VALIDATION_HPP

// The acceptance suite: oracle, identity and Monte Carlo checks over every
// module, reported as deterministic JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace circlaw::validation {

/// One measured quantity compared against its threshold.
/// relation is one of "<=", "<", "==", ">".
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  bool passed = false;
};

struct Criterion {
  int id = 0;
  std::string group;
  std::string title;
  std::vector<Check> checks;
  bool passed = false;  // all checks passed
};

struct Config {
  std::uint64_t seed = 20261017;
  /// Group names ("kernels", "pseudo", "specfun", "fractional", "montecarlo",
  /// "bm", "determinism") or criterion ids ("7"). Empty selects everything.
  std::vector<std::string> only;
  /// Replaces every Kolmogorov-Smirnov threshold of criterion 7.
  std::optional<double> ks_threshold;
  unsigned workers = 0;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;
  bool passed = false;

  /// Two-space indented JSON. Contains no timings, so equal configs give
  /// equal bytes.
  [[nodiscard]] std::string to_json() const;
};

/// Criterion ids selected by `only`, ascending. Throws DomainError on an
/// unknown selector.
std::vector<int> select(const std::vector<std::string>& only);

/// The group a criterion id belongs to.
std::string group_of(int id);

Report run(const Config& cfg = {});

}  // namespace circlaw::validation

#endif  // CIRCLAW_VALIDATION_HPP
