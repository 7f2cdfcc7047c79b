#include "sylv/error.hpp"

namespace sylv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::NotSpd: return "not symmetric positive definite";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::SizeGuard: return "size guard exceeded";
    case ErrorCode::DataNotPresent: return "data not present";
    case ErrorCode::EigenFailure: return "eigensolver failure";
  }
  return "unknown";
}

}  // namespace sylv
