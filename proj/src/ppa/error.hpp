#ifndef PPA_ERROR_HPP
#define PPA_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppa {

enum class ErrorCode : int {
  invalid_argument = 1,
  dimension_mismatch,
  solver_divergence,
  scan_limit,
  magnitude_limit,
  depth_limit,
  config,
  io,
};

// Base of every error the core raises. The C API maps `code()` onto its
// status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error(ErrorCode::dimension_mismatch,
              "dimension mismatch: expected " + std::to_string(expected) +
                  ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// Inner prox solver hit its iteration cap.
class SolverDivergence : public Error {
 public:
  SolverDivergence(double residual, std::uint64_t iterations)
      : Error(ErrorCode::solver_divergence,
              "inner solver did not converge after " +
                  std::to_string(iterations) +
                  " iterations (last displacement " +
                  std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A max-prefix or sup scan over a non-monotone function was asked to cover
// more arguments than the scan threshold allows.
class ScanLimitExceeded : public Error {
 public:
  explicit ScanLimitExceeded(const std::string& what)
      : Error(ErrorCode::scan_limit, what) {}
};

// An exact intermediate would exceed the configured bit budget.
class MagnitudeLimitExceeded : public Error {
 public:
  explicit MagnitudeLimitExceeded(const std::string& what)
      : Error(ErrorCode::magnitude_limit, what) {}
};

// Psi / Omega recursion depth above the guard without `force`.
class DepthLimitExceeded : public Error {
 public:
  explicit DepthLimitExceeded(const std::string& what)
      : Error(ErrorCode::depth_limit, what) {}
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(ErrorCode::config, field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

// Failure while producing step `step` of a trajectory.
class StepError : public Error {
 public:
  StepError(std::uint64_t step, const Error& cause)
      : Error(cause.code(),
              "step " + std::to_string(step) + ": " + cause.what()),
        step_(step) {}
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

}  // namespace ppa

#endif  // PPA_ERROR_HPP
