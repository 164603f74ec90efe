// SPDX-License-Identifier: Apache-2.0

#include "rahl/modred.hpp"

#include <limits>

namespace rahl {
namespace {

std::uint64_t Pow4Limit(unsigned kbits) {
  return 2 * kbits >= 64 ? std::numeric_limits<std::uint64_t>::max()
                         : (std::uint64_t{1} << (2 * kbits));
}

bool Fits(std::uint64_t a, unsigned kbits) { return 2 * kbits >= 64 || (a >> (2 * kbits)) == 0; }

unsigned KBits(std::uint32_t q) {
  // A modulus of 1 still needs one bit of headroom for the Barrett bounds.
  return q <= 2 ? 1 : CeilLog2(q);
}

}  // namespace

std::uint64_t ReduceReference(std::uint64_t a, std::uint64_t q) {
  RAHL_CHECK(q != 0, ErrorCode::kZeroModulus, "modulus must be non-zero");
  return a - q * (a / q);
}

BarrettContext::BarrettContext(std::uint32_t modulus) : q(modulus) {
  RAHL_CHECK(modulus != 0, ErrorCode::kZeroModulus, "modulus must be non-zero");
  kbits = KBits(modulus);
  r = static_cast<std::uint64_t>((u128{1} << (2 * kbits)) / modulus);
}

std::uint64_t BarrettContext::InputLimit() const { return Pow4Limit(kbits); }

std::uint32_t ReduceBarrett(std::uint64_t a, const BarrettContext& ctx, unsigned* corrections) {
  RAHL_CHECK(Fits(a, ctx.kbits), ErrorCode::kInputTooWide, "operand must be < 4^k");
  auto qhat = static_cast<std::uint64_t>((static_cast<u128>(a) * ctx.r) >> (2 * ctx.kbits));
  std::uint64_t t = a - qhat * ctx.q;
  unsigned fixes = 0;
  while (t >= ctx.q) {
    t -= ctx.q;
    ++fixes;
  }
  if (corrections) *corrections = fixes;
  return static_cast<std::uint32_t>(t);
}

FoldedBarrettContext::FoldedBarrettContext(std::uint32_t modulus) : q(modulus) {
  RAHL_CHECK(modulus != 0, ErrorCode::kZeroModulus, "modulus must be non-zero");
  kbits = KBits(modulus);
  fold_shift = (3 * kbits + 1) / 2;
  half_bits = (kbits + 1) / 2;
  fold_constant = static_cast<std::uint64_t>((u128{1} << fold_shift) % modulus);
  r_folded = static_cast<std::uint64_t>((u128{1} << (fold_shift + half_bits)) / modulus);
  fold_mask = (std::uint64_t{1} << fold_shift) - 1;
}

std::uint64_t FoldedBarrettContext::InputLimit() const { return Pow4Limit(kbits); }

std::uint32_t ReduceFolded(std::uint64_t a, const FoldedBarrettContext& ctx, unsigned* corrections) {
  RAHL_CHECK(Fits(a, ctx.kbits), ErrorCode::kInputTooWide, "operand must be < 4^k");
  std::uint64_t folded = (a & ctx.fold_mask) + (a >> ctx.fold_shift) * ctx.fold_constant;
  auto qhat = static_cast<std::uint64_t>(
      (static_cast<u128>(folded) * ctx.r_folded) >> (ctx.fold_shift + ctx.half_bits));
  std::uint64_t t = folded - qhat * ctx.q;
  unsigned fixes = 0;
  if (t >= ctx.q) {
    t -= ctx.q;
    fixes = 1;
  }
  if (corrections) *corrections = fixes;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t ModPow(std::uint32_t base, std::uint64_t exp, const FoldedBarrettContext& ctx) {
  std::uint32_t result = 1 % ctx.q;
  std::uint32_t b = base % ctx.q;
  for (int bit = static_cast<int>(std::bit_width(exp)) - 1; bit >= 0; --bit) {
    result = ModMul(result, result, ctx);
    if ((exp >> bit) & 1u) result = ModMul(result, b, ctx);
  }
  return result;
}

}  // namespace rahl
