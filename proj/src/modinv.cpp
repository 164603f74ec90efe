// SPDX-License-Identifier: Apache-2.0

#include "rahl/modinv.hpp"

#include "rahl/error.hpp"
#include "rahl/modred.hpp"
#include "rahl/perf.hpp"
#include "rahl/primes.hpp"

namespace rahl {

std::vector<bool> FermatExponentBits(std::uint32_t q) {
  RAHL_CHECK(q >= 2, ErrorCode::kNotPrime, "modulus must be prime");
  std::uint64_t e = q - 2;
  std::vector<bool> bits;
  for (int b = static_cast<int>(std::bit_width(e)) - 1; b >= 0; --b) bits.push_back((e >> b) & 1u);
  return bits;
}

std::uint32_t ModInvFermat(std::uint32_t a, std::uint32_t q) {
  RAHL_CHECK(IsPrime(q), ErrorCode::kNotPrime, std::to_string(q) + " is not prime");
  FoldedBarrettContext ctx(q);
  return ModInvFermat(a, ctx, FermatExponentBits(q));
}

std::uint32_t ModInvFermat(std::uint32_t a, const FoldedBarrettContext& ctx,
                           const std::vector<bool>& exponent_bits) {
  const std::uint32_t q = ctx.q;
  RAHL_CHECK(a % q != 0, ErrorCode::kNotInvertible, "zero has no inverse");
  if (q == 2) return 1;
  std::uint32_t base = a % q;
  std::uint32_t result = 1;
  for (bool bit : exponent_bits) {
    result = ModMul(result, result, ctx);
    if (bit) result = ModMul(result, base, ctx);
  }
  return result;
}

std::uint64_t ModInvEuclid(std::uint64_t a, std::uint64_t q) {
  RAHL_CHECK(q >= 2, ErrorCode::kInvalidArgument, "modulus must be >= 2");
  // Invariant: old_r = a*old_x (mod q) and r = a*x (mod q); the pair
  // (old_r, r) shrinks while keeping gcd(old_r, r) = gcd(a, q).
  std::int64_t old_x = 1;
  std::int64_t x = 0;
  std::uint64_t old_r = a % q;
  std::uint64_t r = q;
  while (r != 0) {
    std::uint64_t quot = old_r / r;
    std::uint64_t next_r = old_r - quot * r;
    std::int64_t next_x = old_x - static_cast<std::int64_t>(quot) * x;
    old_r = r;
    r = next_r;
    old_x = x;
    x = next_x;
  }
  RAHL_CHECK(old_r == 1, ErrorCode::kNotCoprime,
             "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  std::int64_t m = static_cast<std::int64_t>(q);
  std::int64_t res = old_x % m;
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

}  // namespace rahl
