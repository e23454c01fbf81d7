#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cuspforge {

/// Machine-readable failure classes. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  validation = 2,
  budget_exceeded = 3,
  certificate = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorCode::budget_exceeded, what) {}
};

class CertificateError : public Error {
 public:
  explicit CertificateError(const std::string& what) : Error(ErrorCode::certificate, what) {}
};

/// Raised by checked integer kernels; callers retry with arbitrary precision.
class OverflowError : public std::overflow_error {
 public:
  OverflowError() : std::overflow_error("int64 overflow") {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace cuspforge
