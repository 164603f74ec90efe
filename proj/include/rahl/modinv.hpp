// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace rahl {

struct FoldedBarrettContext;

// Bits of the Fermat exponent q - 2, most significant first. Precomputed
// once per modulus and reused by every inversion in that field.
std::vector<bool> FermatExponentBits(std::uint32_t q);

// a^(q-2) mod q by left-to-right square-and-multiply.
// NotInvertible if a == 0 mod q; NotPrime if q is composite.
std::uint32_t ModInvFermat(std::uint32_t a, std::uint32_t q);
// Same, reusing a precomputed exponent and reduction context. The caller
// vouches that q is prime.
std::uint32_t ModInvFermat(std::uint32_t a, const FoldedBarrettContext& ctx,
                           const std::vector<bool>& exponent_bits);

// Iterative extended Euclid; works for composite q. Result in [0, q).
// NotCoprime if gcd(a, q) != 1.
std::uint64_t ModInvEuclid(std::uint64_t a, std::uint64_t q);

}  // namespace rahl
