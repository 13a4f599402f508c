#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlssh {

enum class ErrorCode {
  // validation: bad input, CLI exit code 2
  NonPositiveScale,
  NonFiniteValue,
  DegenerateCouplings,
  NonCommensurate,
  UnsupportedOrder,
  DegenerateLabel,
  LabelAboveNyquist,
  NonCommensurateBox,
  ZeroCoupling,
  GridMismatch,
  InvalidArgument,
  Usage,
  // numerical: CLI exit code 3
  GapClosure,
  CriticalPoint,
  CutoffTooSmall,
  ConvergenceFailure,
  InsufficientPeaks,
  Serialization,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for the codes that describe rejected input rather than a failed computation.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nlssh
