// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rahl {

enum class ErrorCode {
  kInvalidDegree,
  kInsufficientPrimes,
  kNotPrime,
  kNoRoot,
  kZeroModulus,
  kInputTooWide,
  kOutOfRange,
  kBothZero,
  kZeroInput,
  kNotInvertible,
  kNotCoprime,
  kDomainMismatch,
  kChannelMismatch,
  kBasisMismatch,
  kDegreeMismatch,
  kNonBinaryMessage,
  kUnknownLabel,
  kFormat,
  kParameterMismatch,
  kInvalidArgument,
  kBudgetExhausted,
};

std::string_view ErrorCodeName(ErrorCode code);

// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define RAHL_CHECK(cond, code, msg)                  \
  do {                                               \
    if (!(cond)) throw ::rahl::Error((code), (msg)); \
  } while (0)

}  // namespace rahl
