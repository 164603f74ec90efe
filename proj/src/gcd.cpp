// SPDX-License-Identifier: Apache-2.0

#include "rahl/gcd.hpp"

#include <utility>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {

std::uint64_t GcdDivision(std::uint64_t a, std::uint64_t b, unsigned* steps) {
  RAHL_CHECK(a != 0 || b != 0, ErrorCode::kBothZero, "gcd(0, 0) is undefined");
  if (a < b) std::swap(a, b);
  unsigned count = 0;
  if (b == 0) {
    if (steps) *steps = 0;
    return a;
  }
  for (;;) {
    ++count;
    std::uint64_t r = a % b;
    if (r == 0) break;
    a = b;
    b = r;
  }
  if (steps) *steps = count;
  return b;
}

std::uint64_t GcdSubtraction(std::uint64_t a, std::uint64_t b) {
  RAHL_CHECK(a != 0 && b != 0, ErrorCode::kZeroInput, "subtraction gcd needs a, b >= 1");
  while (a != b) {
    perf::CountModAdd();
    if (a > b) {
      a -= b;
    } else {
      b -= a;
    }
  }
  return a;
}

std::uint64_t GcdBinary(std::uint64_t a, std::uint64_t b) {
  RAHL_CHECK(a != 0 && b != 0, ErrorCode::kZeroInput, "binary gcd needs a, b >= 1");
  std::uint64_t res = 1;
  while (a != b) {
    bool a_even = (a & 1u) == 0;
    bool b_even = (b & 1u) == 0;
    if (a_even && b_even) {
      a >>= 1;
      b >>= 1;
      res <<= 1;
      perf::CountShift(3);
    } else if (a_even) {
      a >>= 1;
      perf::CountShift();
    } else if (b_even) {
      b >>= 1;
      perf::CountShift();
    } else if (a > b) {
      a -= b;
      perf::CountModAdd();
    } else {
      b -= a;
      perf::CountModAdd();
    }
  }
  return res * a;
}

bool IsCoprime(std::uint64_t a, std::uint64_t b) {
  RAHL_CHECK(a != 0 || b != 0, ErrorCode::kBothZero, "gcd(0, 0) is undefined");
  if (a == 0 || b == 0) return (a | b) == 1;
  return GcdBinary(a, b) == 1;
}

}  // namespace rahl
