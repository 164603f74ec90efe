// SPDX-License-Identifier: Apache-2.0
//
// Relinearisation of degree-2 ciphertexts.
//   v1: base-T gadget keys rlk_i = (-(a_i s + e_i) + T^i s^2, a_i), i = 0..ell.
//   v2: one key over p Q, rlk = (-(a s + e) + p s^2, a), p = 2^p_log2.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rahl/fv.hpp"

namespace rahl {

struct RelinKeysV1 {
  std::uint32_t T = 2;
  unsigned ell = 0;
  // levels[i] = {rlk_i[0], rlk_i[1]} over the working basis, stored in the
  // negacyclic ntt domain.
  std::vector<std::array<RnsPolynomial, 2>> levels;
};

struct RelinKeysV2 {
  unsigned p_log2 = 0;
  // Coefficients in [0, p Q) held over the relin basis, coefficient domain,
  // plus their ntt forms for the product.
  std::array<RnsPolynomial, 2> key;
  std::array<RnsPolynomial, 2> key_ntt;
};

// Errors drawn per level; exposed for transcript checks in tests.
struct RelinTranscriptV1 {
  std::vector<std::vector<std::int64_t>> e;
};

RelinKeysV1 RelinKeyGenV1(const FvContext& ctx, const SecretKey& sk, Rng& rng,
                          RelinTranscriptV1* transcript = nullptr);

struct RelinTranscriptV2 {
  std::vector<std::int64_t> e;
};

// The error comes from a second noise sampler instance (same sigma).
RelinKeysV2 RelinKeyGenV2(const FvContext& ctx, const SecretKey& sk, Rng& rng,
                          RelinTranscriptV2* transcript = nullptr);

// Base-T digits of every coefficient of c2 in [0, Q), least significant
// first: out[i][j] is digit i of coefficient j; ell + 1 levels.
std::vector<std::vector<std::uint32_t>> DecomposeBaseT(const std::vector<BigUnsigned>& c2,
                                                       std::uint32_t T, unsigned ell);

enum class InnerProduct {
  kNtt,         // twist digits by selection, transform, accumulate pointwise
  kSchoolbook,  // conditional adds of rotated key rows; O(ell n^2), small n only
};

Ciphertext RelinearizeV1(const FvContext& ctx, const Ciphertext& ct, const RelinKeysV1& keys,
                         InnerProduct mode = InnerProduct::kNtt);

Ciphertext RelinearizeV2(const FvContext& ctx, const Ciphertext& ct, const RelinKeysV2& keys);

// floor(x / 2^s + 1/2), i.e. (x + 2^(s-1)) >> s; identity for s = 0.
BigUnsigned DivRound(const BigUnsigned& x, unsigned s);
BigSigned DivRound(const BigSigned& x, unsigned s);

RelinKeysV2 RelinKeysV2FromKey(const FvContext& ctx, std::array<RnsPolynomial, 2> key);

enum class RelinVersion { kV1, kV2 };

struct DepthProbeResult {
  unsigned depth = 0;
  std::vector<double> budgets;  // after each successful squaring
};

// Encrypts m, squares (multiply + relinearise) until decryption disagrees
// with the plaintext square in R_2, and reports the last depth that
// decrypted correctly.
DepthProbeResult DepthProbe(const FvContext& ctx, const KeyPair& keys, RelinVersion version,
                            const RelinKeysV1* v1, const RelinKeysV2* v2, Rng& rng,
                            const std::vector<std::uint8_t>& m, unsigned max_depth = 200,
                            const MulOptions& opts = {});

}  // namespace rahl
