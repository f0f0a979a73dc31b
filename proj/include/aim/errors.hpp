#ifndef AIM_ERRORS_HPP
#define AIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aim {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an API contract (mismatched jet operands, bad config, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the mathematical domain of the operation
/// (e.g. expanding x^beta about a point where the function is singular).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iteration produced non-finite coefficients; `iteration` names the step.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, int iteration)
      : Error(what), iteration(iteration) {}
  int iteration;
};

/// A denominator collapsed (lambda_n(x) ~ 0); caller should move x.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An iterative evaluation failed to converge within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A root bracket could not be established or was lost.
class NoBracketError : public Error {
 public:
  using Error::Error;
};

/// Text input failed to parse; `offset` is the byte position of the error.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset(offset) {}
  std::size_t offset;
};

}  // namespace aim

#endif
