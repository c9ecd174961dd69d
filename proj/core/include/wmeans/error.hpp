#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wmeans {

/// Every failure raised by the library carries one of these codes. The CLI
/// prints `code_name()` so scripts can match on it.
enum class ErrorCode {
  // domain
  NegativeWeight,
  AllWeightsZero,
  EntryOutOfDomain,
  LengthMismatch,
  MismatchedEntries,
  InvalidDomain,
  InvalidArgument,
  // expr
  SyntaxError,
  UnknownFunction,
  UnboundVariable,
  DomainError,
  NonFinite,
  StencilOutsideDomain,
  DerivativeMismatch,
  // classic means
  NonPositiveEntry,
  GeneratorNotMonotone,
  SolverFailure,
  VanishingFirstDerivative,
  Diverged,
  DegenerateDenominator,
  // semideviation
  KernelEvaluationError,
  AmbiguousClassification,
  NotNormalizable,
  NoSignChange,
  // homogenize
  AllEvaluationsFailed,
  EmptyAdmissibleSet,
  SignPropertyViolated,
  NotConverged,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<ErrorCode> cause = std::nullopt)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        cause_(cause) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  /// Code of the wrapped error when this one re-reports another.
  [[nodiscard]] std::optional<ErrorCode> cause() const noexcept { return cause_; }
  [[nodiscard]] std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
  std::optional<ErrorCode> cause_;
};

/// Syntax errors additionally report the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorCode::SyntaxError, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace wmeans
