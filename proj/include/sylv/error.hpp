#pragma once

#include <stdexcept>
#include <string>

namespace sylv {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Parse,
  Io,
  Singular,
  NotSpd,
  NonFinite,
  SizeGuard,
  DataNotPresent,
  EigenFailure,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type used throughout the library. The C API maps `code()` onto
/// its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sylv
