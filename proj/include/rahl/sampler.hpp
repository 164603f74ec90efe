// SPDX-License-Identifier: Apache-2.0
//
// Seeded randomness: a ChaCha20 keystream (libsodium) and the three
// samplers of the scheme (uniform over R_Q, binary, discrete Gaussian).

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rahl/bigint.hpp"
#include "rahl/polyops.hpp"

namespace rahl {

class Rng {
 public:
  // Key = BLAKE2b-256(seed || stream label); distinct labels give
  // independent streams from one seed.
  Rng(std::uint64_t seed, std::string_view stream);
  // Seed drawn from the OS entropy source.
  static std::uint64_t EntropySeed();

  std::uint32_t NextU32();
  std::uint64_t NextU64();
  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t Uniform(std::uint64_t bound);
  // Uniform in [0, bound) by rejection on BitLength(bound) bits.
  BigUnsigned UniformBig(const BigUnsigned& bound);
  std::uint8_t Bit();

 private:
  void Refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 1024> buf_{};
  std::size_t pos_ = sizeof(buf_);
};

struct NoiseConfig {
  double sigma = 3.2;
  std::int64_t tail_bound = 0;  // 0 selects ceil(6 sigma), at least 1

  std::int64_t EffectiveTailBound() const;
};

// Cumulative-distribution-table sampler over [-B, B] with 64-bit integer
// thresholds. sigma = 0 always returns 0.
class GaussianSampler {
 public:
  explicit GaussianSampler(const NoiseConfig& cfg);

  std::int64_t Sample(Rng& rng) const;
  const NoiseConfig& config() const { return cfg_; }
  std::int64_t tail_bound() const { return bound_; }

 private:
  NoiseConfig cfg_;
  std::int64_t bound_ = 0;
  std::vector<std::uint64_t> cdt_;  // cdt_[i] = P(X <= i - B) * 2^64, last saturated
};

// Each coefficient: a uniform element of [0, Q) decomposed into channels.
RnsPolynomial SampleUniformPoly(const BasisPtr& basis, Rng& rng);
std::vector<std::uint8_t> SampleBinaryPoly(std::size_t n, Rng& rng);
std::vector<std::int64_t> SampleGaussianPoly(const GaussianSampler& sampler, std::size_t n,
                                             Rng& rng);

}  // namespace rahl
