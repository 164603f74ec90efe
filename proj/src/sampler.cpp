// SPDX-License-Identifier: Apache-2.0

#include "rahl/sampler.hpp"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "rahl/error.hpp"

namespace rahl {
namespace {

void EnsureSodium() {
  static const int ok = sodium_init();
  RAHL_CHECK(ok >= 0, ErrorCode::kInvalidArgument, "libsodium initialisation failed");
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view stream) {
  EnsureSodium();
  std::vector<unsigned char> material(8 + stream.size());
  for (int i = 0; i < 8; ++i) material[i] = static_cast<unsigned char>(seed >> (8 * i));
  std::memcpy(material.data() + 8, stream.data(), stream.size());
  crypto_generichash(key_.data(), key_.size(), material.data(), material.size(), nullptr, 0);
}

std::uint64_t Rng::EntropySeed() {
  EnsureSodium();
  std::uint64_t s = 0;
  randombytes_buf(&s, sizeof(s));
  return s;
}

void Rng::Refill() {
  static const std::array<unsigned char, crypto_stream_chacha20_NONCEBYTES> nonce{};
  std::fill(buf_.begin(), buf_.end(), 0);
  crypto_stream_chacha20_xor_ic(buf_.data(), buf_.data(), buf_.size(), nonce.data(), block_,
                                key_.data());
  block_ += buf_.size() / 64;
  pos_ = 0;
}

std::uint32_t Rng::NextU32() {
  if (pos_ + 4 > buf_.size()) Refill();
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t Rng::NextU64() {
  std::uint64_t lo = NextU32();
  return lo | (static_cast<std::uint64_t>(NextU32()) << 32);
}

std::uint64_t Rng::Uniform(std::uint64_t bound) {
  RAHL_CHECK(bound >= 1, ErrorCode::kInvalidArgument, "empty range");
  if (bound == 1) return 0;
  const unsigned bits = static_cast<unsigned>(std::bit_width(bound - 1));
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  for (;;) {
    std::uint64_t v = (bits <= 32 ? NextU32() : NextU64()) & mask;
    if (v < bound) return v;
  }
}

BigUnsigned Rng::UniformBig(const BigUnsigned& bound) {
  RAHL_CHECK(!bound.IsZero(), ErrorCode::kInvalidArgument, "empty range");
  const unsigned bits = bound.BitLength();
  const std::size_t limbs = (bits + 31) / 32;
  const unsigned top = bits % 32;
  std::vector<std::uint32_t> v(limbs);
  for (;;) {
    for (auto& l : v) l = NextU32();
    if (top != 0) v.back() &= (std::uint32_t{1} << top) - 1;
    BigUnsigned x = BigUnsigned::FromLimbs(v);
    if (x < bound) return x;
  }
}

std::uint8_t Rng::Bit() { return static_cast<std::uint8_t>(NextU32() & 1u); }

std::int64_t NoiseConfig::EffectiveTailBound() const {
  if (tail_bound > 0) return tail_bound;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(6.0 * sigma)));
}

GaussianSampler::GaussianSampler(const NoiseConfig& cfg) : cfg_(cfg) {
  RAHL_CHECK(cfg.sigma >= 0.0 && std::isfinite(cfg.sigma), ErrorCode::kInvalidArgument,
             "sigma must be finite and non-negative");
  bound_ = cfg.EffectiveTailBound();
  if (cfg.sigma == 0.0) return;
  std::vector<long double> rho;
  long double total = 0;
  for (std::int64_t x = -bound_; x <= bound_; ++x) {
    long double xd = static_cast<long double>(x);
    long double v = std::exp(-xd * xd / (2.0L * cfg.sigma * cfg.sigma));
    rho.push_back(v);
    total += v;
  }
  const long double scale = 18446744073709551616.0L;  // 2^64
  long double acc = 0;
  for (long double v : rho) {
    acc += v;
    long double c = acc / total * scale;
    cdt_.push_back(c >= scale ? ~std::uint64_t{0} : static_cast<std::uint64_t>(c));
  }
  cdt_.back() = ~std::uint64_t{0};
}

std::int64_t GaussianSampler::Sample(Rng& rng) const {
  if (cdt_.empty()) return 0;
  const std::uint64_t u = rng.NextU64();
  auto it = std::upper_bound(cdt_.begin(), cdt_.end(), u);
  if (it == cdt_.end()) --it;
  return static_cast<std::int64_t>(it - cdt_.begin()) - bound_;
}

RnsPolynomial SampleUniformPoly(const BasisPtr& basis, Rng& rng) {
  RnsPolynomial p(basis);
  std::vector<std::uint32_t> tmp(basis->k());
  for (std::size_t j = 0; j < basis->n(); ++j) {
    basis->DecomposeInto(rng.UniformBig(basis->Q()), tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) p.channel(i).coeffs[j] = tmp[i];
  }
  return p;
}

std::vector<std::uint8_t> SampleBinaryPoly(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = rng.Bit();
  return out;
}

std::vector<std::int64_t> SampleGaussianPoly(const GaussianSampler& sampler, std::size_t n,
                                             Rng& rng) {
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = sampler.Sample(rng);
  return out;
}

}  // namespace rahl
