#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdf {

/// Failure categories raised by the library. The CLI prints `error_name()`
/// of the code on standard error.
enum class ErrorCode {
  InvalidArgument,
  WeightUndefined,
  UnboundedSupport,
  IndexOverflow,
  WindowTooSmall,
  NumericalFailure,
  TooFewSamples,
  NotQuasidiagonalAlongFamily,
  SelectorOutOfRange,
  NotHermitian,
  RankStall,
  NotNormal,
  NonOrthogonalRanges,
  NonHermitianCompression,
  DegreeExceedsWindow,
  ParseError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace qdf
