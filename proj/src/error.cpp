// SPDX-License-Identifier: Apache-2.0

#include "rahl/error.hpp"

namespace rahl {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDegree: return "InvalidDegree";
    case ErrorCode::kInsufficientPrimes: return "InsufficientPrimes";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kNoRoot: return "NoRoot";
    case ErrorCode::kZeroModulus: return "ZeroModulus";
    case ErrorCode::kInputTooWide: return "InputTooWide";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBothZero: return "BothZero";
    case ErrorCode::kZeroInput: return "ZeroInput";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kChannelMismatch: return "ChannelMismatch";
    case ErrorCode::kBasisMismatch: return "BasisMismatch";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kNonBinaryMessage: return "NonBinaryMessage";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kParameterMismatch: return "ParameterMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

}  // namespace rahl
