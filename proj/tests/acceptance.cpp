// Runs every acceptance criterion with the default seed and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <cstdio>

#include "circlaw/validation.hpp"

int main() {
  const auto report = circlaw::validation::run();
  for (const auto& c : report.criteria) {
    std::printf("criterion %2d %s  %s\n", c.id, c.passed ? "PASS" : "FAIL", c.title.c_str());
    for (const auto& k : c.checks) {
      std::printf("    %s %-64s %.6g %s %.6g\n", k.passed ? "ok  " : "FAIL", k.name.c_str(), k.measured,
                  k.relation.c_str(), k.threshold);
    }
  }
  std::printf("%s\n", report.passed ? "all criteria passed" : "some criteria failed");
  return report.passed ? 0 : 1;
}
