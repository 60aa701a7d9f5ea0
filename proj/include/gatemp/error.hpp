#pragma once

#include <stdexcept>
#include <string>

namespace gatemp {

// Failure categories double as CLI exit codes.
enum class ErrorCategory : int {
  InvalidArgument = 2,
  Dimension = 3,
  Domain = 4,
  Convergence = 5,
  Io = 6,
  Consistency = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCategory::InvalidArgument, what) {}
};

struct InvalidSizeError : Error {
  explicit InvalidSizeError(const std::string& what)
      : Error(ErrorCategory::InvalidArgument, what) {}
};

// All couplings zero: every configuration is a ground state.
struct DegenerateDisorderError : Error {
  explicit DegenerateDisorderError(const std::string& what)
      : Error(ErrorCategory::InvalidArgument, what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what)
      : Error(ErrorCategory::Dimension, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::Domain, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorCategory::Consistency, what) {}
};

// Carries the last iterate so callers can inspect how far the solver got.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double last_m, double last_q,
                   double last_residual, long iterations)
      : Error(ErrorCategory::Convergence, what),
        m(last_m),
        q(last_q),
        residual(last_residual),
        iterations(iterations) {}

  double m;
  double q;
  double residual;
  long iterations;
};

// Target value lies outside the oracle's range on the bracket.
struct UnbracketableError : Error {
  explicit UnbracketableError(const std::string& what)
      : Error(ErrorCategory::Domain, what) {}
};

}  // namespace gatemp
