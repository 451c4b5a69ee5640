#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bgw {

enum class ErrorKind {
  NotAGroup,
  OrderExceedsLimit,
  UnsupportedName,
  InvalidInput,
  DimensionMismatch,
  DegenerateSpectrum,
  IdempotencyCheckFailed,
  ReconstructionFailed,
  CapMismatch,
  GenusUnderflow,
  PreconditionViolated,
  SingularMatrix,
  WorkCapExceeded,
  UnstableKey,
  VariableSystemMismatch,
  LevelCapExceeded,
  ToleranceExceeded,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Resource caps rather than malformed input.
  bool is_resource_error() const noexcept {
    return kind_ == ErrorKind::OrderExceedsLimit || kind_ == ErrorKind::WorkCapExceeded ||
           kind_ == ErrorKind::LevelCapExceeded;
  }

 private:
  ErrorKind kind_;
};

}  // namespace bgw
