#ifndef CIRCLAW_ERROR_HPP
#define CIRCLAW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circlaw {

/// Raised when an argument lies outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical scheme cannot meet its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when sampling is requested from a law that takes negative values.
class SignedLawError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double abs_tol = 1e-10;
  std::size_t max_terms = 1'000'000;

  void validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("tolerance: abs_tol must be positive");
    if (max_terms < 1) throw DomainError("tolerance: max_terms must be >= 1");
  }
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail

}  // namespace circlaw

#endif  // CIRCLAW_ERROR_HPP
