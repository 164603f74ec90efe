// SPDX-License-Identifier: Apache-2.0
//
// Modular reduction kernels for word-sized moduli (q < 2^32):
//   * ReduceReference: plain remainder, the oracle for the other two.
//   * ReduceBarrett:   classic Barrett with r = floor(4^k / q).
//   * ReduceFolded:    single-fold variant. The high part of the operand is
//                      folded back with 2^f mod q (f = ceil(3k/2)), leaving a
//                      (f+1)-bit value that a narrower Barrett step finishes
//                      with at most one correction.

#pragma once

#include <bit>
#include <cstdint>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {

using u128 = unsigned __int128;

std::uint64_t ReduceReference(std::uint64_t a, std::uint64_t q);

// ceil(log2 q)
inline unsigned CeilLog2(std::uint64_t q) {
  return q <= 1 ? 0 : static_cast<unsigned>(std::bit_width(q - 1));
}

struct BarrettContext {
  std::uint32_t q = 0;
  unsigned kbits = 0;
  std::uint64_t r = 0;  // floor(4^kbits / q)

  explicit BarrettContext(std::uint32_t modulus);
  BarrettContext() = default;

  // Exclusive bound on accepted inputs: 4^kbits (saturated to 2^64 - 1).
  std::uint64_t InputLimit() const;
};

// Reduces a < 4^kbits; InputTooWide otherwise. When `corrections` is
// non-null it receives the number of trailing subtractions performed.
std::uint32_t ReduceBarrett(std::uint64_t a, const BarrettContext& ctx,
                            unsigned* corrections = nullptr);

struct FoldedBarrettContext {
  std::uint32_t q = 0;
  unsigned kbits = 0;
  unsigned fold_shift = 0;        // ceil(3 kbits / 2)
  unsigned half_bits = 0;         // ceil(kbits / 2)
  std::uint64_t fold_constant = 0;  // 2^fold_shift mod q
  std::uint64_t r_folded = 0;       // floor(2^(fold_shift + half_bits) / q)
  std::uint64_t fold_mask = 0;

  explicit FoldedBarrettContext(std::uint32_t modulus);
  FoldedBarrettContext() = default;

  std::uint64_t InputLimit() const;

  // Hot-path kernel: caller guarantees a < 4^kbits. Not counted.
  std::uint32_t ReduceUnchecked(std::uint64_t a) const {
    std::uint64_t folded = (a & fold_mask) + (a >> fold_shift) * fold_constant;
    auto qhat = static_cast<std::uint64_t>(
        (static_cast<u128>(folded) * r_folded) >> (fold_shift + half_bits));
    std::uint64_t t = folded - qhat * q;
    t -= (t >= q) ? q : 0;
    return static_cast<std::uint32_t>(t);
  }

  std::uint32_t MulUnchecked(std::uint32_t a, std::uint32_t b) const {
    return ReduceUnchecked(static_cast<std::uint64_t>(a) * b);
  }
};

std::uint32_t ReduceFolded(std::uint64_t a, const FoldedBarrettContext& ctx,
                           unsigned* corrections = nullptr);

// (a * b) mod q through ReduceFolded; counts one modular multiplication.
inline std::uint32_t ModMul(std::uint32_t a, std::uint32_t b, const FoldedBarrettContext& ctx) {
  perf::CountModMul();
  return ctx.MulUnchecked(a, b);
}

inline std::uint32_t AddModUnchecked(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<std::uint32_t>(s >= q ? s - q : s);
}

inline std::uint32_t SubModUnchecked(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  return a >= b ? a - b : static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) + q - b);
}

inline std::uint32_t ModAdd(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  perf::CountModAdd();
  return AddModUnchecked(a, b, q);
}

inline std::uint32_t ModSub(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  perf::CountModAdd();
  return SubModUnchecked(a, b, q);
}

// base^exp mod q by square-and-multiply on the folded kernel.
std::uint32_t ModPow(std::uint32_t base, std::uint64_t exp, const FoldedBarrettContext& ctx);

}  // namespace rahl
