// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace rahl {

// Euclid by division: (a, b) -> (b, a mod b) until b divides a.
// Operands are reordered if a < b. BothZero if a == b == 0.
// `steps` (optional) receives the number of division steps taken.
std::uint64_t GcdDivision(std::uint64_t a, std::uint64_t b, unsigned* steps = nullptr);

// Euclid by repeated subtraction of the smaller operand. ZeroInput on 0.
std::uint64_t GcdSubtraction(std::uint64_t a, std::uint64_t b);

// Binary Euclid with an accumulated power of two:
//   a == b          -> res * a
//   a, b even       -> (a/2, b/2, 2 res)
//   a even          -> (a/2, b, res)
//   b even          -> (a, b/2, res)
//   a > b           -> (a - b, b, res)
//   otherwise       -> (a, b - a, res)
// ZeroInput on 0.
std::uint64_t GcdBinary(std::uint64_t a, std::uint64_t b);

// gcd(a, b) == 1. BothZero if a == b == 0; gcd(0, x) = x otherwise.
bool IsCoprime(std::uint64_t a, std::uint64_t b);

}  // namespace rahl
