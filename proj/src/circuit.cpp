// SPDX-License-Identifier: Apache-2.0

#include "rahl/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rahl/error.hpp"

namespace rahl::circuit {
namespace {

std::vector<std::uint8_t> ConstMessage(std::size_t n, bool bit) {
  std::vector<std::uint8_t> m(n, 0);
  m[0] = bit ? 1 : 0;
  return m;
}

std::uint64_t WidthMask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::int64_t SignExtend(std::uint64_t v, unsigned width) {
  v &= WidthMask(width);
  if (width < 64 && (v >> (width - 1)) & 1u) v |= ~WidthMask(width);
  return static_cast<std::int64_t>(v);
}

// Two's-complement helpers for the plain evaluation.
std::int64_t Wrap(std::int64_t v, unsigned width) {
  return SignExtend(static_cast<std::uint64_t>(v), width);
}

}  // namespace

Evaluator::Evaluator(const FvContext& ctx, RelinVersion version, const RelinKeysV1* v1,
                     const RelinKeysV2* v2)
    : ctx_(ctx), version_(version), v1_(v1), v2_(v2) {
  RAHL_CHECK(version == RelinVersion::kV1 ? v1 != nullptr : v2 != nullptr,
             ErrorCode::kInvalidArgument, "missing relinearisation keys");
}

EncBit Evaluator::Xor(const EncBit& a, const EncBit& b) {
  if (a.known && b.known) return EncBit::Const(a.value != b.value);
  if (a.known) return a.value ? Not(b) : b;
  if (b.known) return b.value ? Not(a) : a;
  ++stats_.xor_gates;
  return EncBit{false, false, HomAdd(a.ct, b.ct), std::max(a.depth, b.depth)};
}

EncBit Evaluator::Not(const EncBit& a) {
  if (a.known) return EncBit::Const(!a.value);
  if (!one_) one_ = EncryptTrivial(ctx_, ConstMessage(ctx_.n(), true));
  ++stats_.xor_gates;
  return EncBit{false, false, HomAdd(a.ct, *one_), a.depth};
}

EncBit Evaluator::And(const EncBit& a, const EncBit& b) {
  if (a.known) return a.value ? b : EncBit::Const(false);
  if (b.known) return b.value ? a : EncBit::Const(false);
  ++stats_.and_gates;
  Ciphertext sq = HomMul(ctx_, a.ct, b.ct);
  Ciphertext ct = version_ == RelinVersion::kV1 ? RelinearizeV1(ctx_, sq, *v1_)
                                                : RelinearizeV2(ctx_, sq, *v2_);
  return EncBit{false, false, std::move(ct), std::max(a.depth, b.depth) + 1};
}

Word Evaluator::Add(const Word& a, const Word& b, bool carry_in) {
  RAHL_CHECK(a.size() == b.size(), ErrorCode::kInvalidArgument, "word width mismatch");
  Word out(a.size());
  EncBit c = EncBit::Const(carry_in);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EncBit ac = Xor(a[i], c);
    EncBit bc = Xor(b[i], c);
    out[i] = Xor(ac, b[i]);
    if (i + 1 < a.size()) c = Xor(And(ac, bc), c);
  }
  return out;
}

Word Evaluator::Sub(const Word& a, const Word& b) {
  Word nb(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) nb[i] = Not(b[i]);
  return Add(a, nb, true);
}

Word Evaluator::Mul(const Word& a, const Word& b) {
  RAHL_CHECK(a.size() == b.size(), ErrorCode::kInvalidArgument, "word width mismatch");
  const std::size_t w = a.size();
  Word acc = ConstWord(0, static_cast<unsigned>(w));
  for (std::size_t i = 0; i < w; ++i) {
    if (b[i].known && !b[i].value) continue;
    Word pp = ConstWord(0, static_cast<unsigned>(w));
    for (std::size_t j = i; j < w; ++j) pp[j] = And(a[j - i], b[i]);
    acc = Add(acc, pp);
  }
  return acc;
}

Word Evaluator::MulConst(const Word& a, std::int64_t c) {
  const auto w = static_cast<unsigned>(a.size());
  if (c < 0) return Sub(ConstWord(0, w), MulConst(a, -c));
  const std::uint64_t u = static_cast<std::uint64_t>(c) & WidthMask(w);
  std::optional<Word> acc;
  for (unsigned i = 0; i < w; ++i) {
    if (!((u >> i) & 1u)) continue;
    Word term = ShiftLeft(a, i);
    acc = acc ? Add(*acc, term) : term;
  }
  return acc ? *acc : ConstWord(0, w);
}

Word Evaluator::AddConst(const Word& a, std::int64_t c) {
  return Add(a, ConstWord(c, static_cast<unsigned>(a.size())));
}

Word ConstWord(std::int64_t value, unsigned width) {
  Word w(width);
  const auto u = static_cast<std::uint64_t>(value);
  for (unsigned i = 0; i < width; ++i) w[i] = EncBit::Const(i < 64 && ((u >> i) & 1u));
  return w;
}

Word ShiftLeft(const Word& a, unsigned s) {
  Word out(a.size(), EncBit::Const(false));
  for (std::size_t i = s; i < a.size(); ++i) out[i] = a[i - s];
  return out;
}

Word ShiftRightArith(const Word& a, unsigned s) {
  Word out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[std::min(i + s, a.size() - 1)];
  return out;
}

unsigned Depth(const Word& a) {
  unsigned d = 0;
  for (const auto& b : a) d = std::max(d, b.depth);
  return d;
}

Word EncryptWord(const FvContext& ctx, const PublicKey& pk, std::int64_t value, unsigned width,
                 Rng& rng) {
  RAHL_CHECK(width >= 2 && width <= 63, ErrorCode::kInvalidArgument, "word width out of range");
  const auto u = static_cast<std::uint64_t>(value);
  Word w(width);
  for (unsigned i = 0; i < width; ++i) {
    w[i] = EncBit{false, false, Encrypt(ctx, pk, ConstMessage(ctx.n(), (u >> i) & 1u), rng), 0};
  }
  return w;
}

std::int64_t DecryptWord(const FvContext& ctx, const SecretKey& sk, const Word& w) {
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool bit = w[i].known ? w[i].value : Decrypt(ctx, w[i].ct, sk)[0] != 0;
    if (bit) u |= std::uint64_t{1} << i;
  }
  return SignExtend(u, static_cast<unsigned>(w.size()));
}

std::int64_t LrConfig::c1() const { return std::llround(0.197 * std::ldexp(1.0, frac_bits)); }
std::int64_t LrConfig::c3() const { return std::llround(0.004 * std::ldexp(1.0, frac_bits)); }

void LrConfig::Validate(std::size_t features) const {
  RAHL_CHECK(width >= 4 && width <= 63, ErrorCode::kInvalidArgument, "width out of range");
  RAHL_CHECK(scale >= 2 && std::has_single_bit(scale), ErrorCode::kInvalidArgument,
             "scale must be a power of two");
  RAHL_CHECK(frac_bits < width, ErrorCode::kInvalidArgument, "frac_bits must be < width");
  RAHL_CHECK(features > 0, ErrorCode::kInvalidArgument, "no features");
  RAHL_CHECK(weights.empty() || weights.size() == features, ErrorCode::kInvalidArgument,
             "weights and features differ in length");
}

std::int64_t ToFixed(double x, unsigned scale) { return std::llround(x * scale); }

Word LrEvaluate(Evaluator& ev, const LrConfig& cfg, const std::vector<Word>& features) {
  cfg.Validate(features.size());
  const unsigned s = static_cast<unsigned>(std::countr_zero(cfg.scale));
  Word x;
  for (std::size_t i = 0; i < features.size(); ++i) {
    RAHL_CHECK(features[i].size() == cfg.width, ErrorCode::kInvalidArgument,
               "feature width mismatch");
    Word term = cfg.weights.empty() ? features[i] : ev.MulConst(features[i], cfg.weights[i]);
    x = x.empty() ? term : ev.Add(x, term);
  }
  Word cube = ShiftRightArith(ev.Mul(ShiftRightArith(ev.Mul(x, x), s), x), s);
  Word lin = ev.MulConst(x, cfg.c1());
  Word y = ev.Sub(lin, ev.MulConst(cube, cfg.c3()));
  return ev.AddConst(ShiftRightArith(y, cfg.frac_bits), cfg.scale / 2);
}

std::int64_t LrPlain(const LrConfig& cfg, const std::vector<std::int64_t>& features) {
  cfg.Validate(features.size());
  const unsigned w = cfg.width;
  const unsigned s = static_cast<unsigned>(std::countr_zero(cfg.scale));
  std::int64_t x = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const std::int64_t b = cfg.weights.empty() ? 1 : cfg.weights[i];
    x = Wrap(x + Wrap(b * Wrap(features[i], w), w), w);
  }
  auto mul = [w](std::int64_t a, std::int64_t b) {
    return Wrap(static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                          static_cast<std::uint64_t>(b)),
                w);
  };
  std::int64_t cube = mul(mul(x, x) >> s, x) >> s;
  std::int64_t y = Wrap(mul(x, cfg.c1()) - mul(cube, cfg.c3()), w);
  return Wrap((y >> cfg.frac_bits) + cfg.scale / 2, w);
}

}  // namespace rahl::circuit
