// SPDX-License-Identifier: Apache-2.0
//
// Gate-level arithmetic on encrypted bits. A word is a little-endian vector of
// bits holding a two's-complement integer of fixed width; every bit is a
// ciphertext of the constant polynomial 0 or 1. XOR is a homomorphic add, AND
// a homomorphic multiply followed by relinearisation. Bits with a publicly
// known value stay in the clear so shifts and constant operands cost nothing.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rahl/fv.hpp"
#include "rahl/relin.hpp"

namespace rahl::circuit {

struct EncBit {
  bool known = true;
  bool value = false;
  Ciphertext ct;
  unsigned depth = 0;  // AND gates on the longest path to this bit

  static EncBit Const(bool v) { return EncBit{true, v, {}, 0}; }
};

using Word = std::vector<EncBit>;

struct GateStats {
  std::uint64_t and_gates = 0;
  std::uint64_t xor_gates = 0;
};

class Evaluator {
 public:
  Evaluator(const FvContext& ctx, RelinVersion version, const RelinKeysV1* v1,
            const RelinKeysV2* v2);

  EncBit Xor(const EncBit& a, const EncBit& b);
  EncBit And(const EncBit& a, const EncBit& b);
  EncBit Not(const EncBit& a);

  // All word operations wrap modulo 2^width.
  Word Add(const Word& a, const Word& b, bool carry_in = false);
  Word Sub(const Word& a, const Word& b);
  Word Mul(const Word& a, const Word& b);
  Word MulConst(const Word& a, std::int64_t c);
  Word AddConst(const Word& a, std::int64_t c);

  const GateStats& stats() const { return stats_; }
  const FvContext& ctx() const { return ctx_; }

 private:
  const FvContext& ctx_;
  RelinVersion version_;
  const RelinKeysV1* v1_;
  const RelinKeysV2* v2_;
  GateStats stats_;
  std::optional<Ciphertext> one_;
};

Word ConstWord(std::int64_t value, unsigned width);
Word ShiftLeft(const Word& a, unsigned s);
// Arithmetic shift: the sign bit is replicated.
Word ShiftRightArith(const Word& a, unsigned s);
unsigned Depth(const Word& a);

Word EncryptWord(const FvContext& ctx, const PublicKey& pk, std::int64_t value, unsigned width,
                 Rng& rng);
// Sign-extended value of the decrypted word.
std::int64_t DecryptWord(const FvContext& ctx, const SecretKey& sk, const Word& w);

// Y(X) = -0.004 X^3 + 0.197 X + 0.5 in fixed point. Inputs are integers x_i
// already scaled by `scale`; X = sum w_i x_i. With s = log2(scale):
//   cube = (((X X) >> s) X) >> s
//   Y    = ((c1 X - c3 cube) >> frac_bits) + scale / 2
// c1 and c3 are the coefficients rounded to frac_bits fractional bits.
struct LrConfig {
  unsigned width = 16;
  unsigned scale = 8;  // power of two
  unsigned frac_bits = 10;
  std::vector<std::int64_t> weights;  // empty means all ones

  std::int64_t c1() const;
  std::int64_t c3() const;
  void Validate(std::size_t features) const;
};

std::int64_t ToFixed(double x, unsigned scale);

Word LrEvaluate(Evaluator& ev, const LrConfig& cfg, const std::vector<Word>& features);

// Same fixed-point arithmetic on plain integers (two's complement, wrapping).
std::int64_t LrPlain(const LrConfig& cfg, const std::vector<std::int64_t>& features);

}  // namespace rahl::circuit
