// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace rahl {

// Deterministic Miller-Rabin for 64-bit inputs.
bool IsPrime(std::uint64_t n);

// Distinct prime factors of n (n >= 1), ascending, by trial division.
std::vector<std::uint64_t> DistinctPrimeFactors(std::uint64_t n);

}  // namespace rahl
