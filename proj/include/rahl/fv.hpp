// SPDX-License-Identifier: Apache-2.0
//
// FV scheme over R_Q = Z_Q[x]/(x^n + 1) with binary plaintexts.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "rahl/params.hpp"
#include "rahl/polyops.hpp"
#include "rahl/sampler.hpp"

namespace rahl {

using Fingerprint = std::array<std::uint8_t, 32>;

// Parameters plus the three RNS bases the scheme runs on:
//   basis         the working moduli, product Q
//   tensor_basis  working moduli + extension, product > 4 n Q^2
//   relin_basis   extension primes only, product > 2 n p Q^2
class FvContext {
 public:
  static std::shared_ptr<const FvContext> Create(const ParameterSet& params);

  const ParameterSet& params() const { return params_; }
  const Fingerprint& fingerprint() const { return fingerprint_; }
  std::size_t n() const { return params_.n; }
  const BigUnsigned& Q() const { return params_.Q; }
  const BigUnsigned& delta() const { return params_.delta; }

  const BasisPtr& basis() const { return basis_; }
  const BasisPtr& tensor_basis() const { return tensor_basis_; }
  const BasisPtr& extension_basis() const { return extension_basis_; }
  const BasisPtr& relin_basis() const { return relin_basis_; }
  // p * Q, the relin-v2 key modulus.
  const BigUnsigned& pQ() const { return pQ_; }

 private:
  FvContext() = default;

  ParameterSet params_;
  Fingerprint fingerprint_{};
  BasisPtr basis_;
  BasisPtr tensor_basis_;
  BasisPtr extension_basis_;
  BasisPtr relin_basis_;
  BigUnsigned pQ_;
};

using ContextPtr = std::shared_ptr<const FvContext>;

struct SecretKey {
  std::vector<std::uint8_t> s;  // binary, length n
};

struct PublicKey {
  RnsPolynomial b;  // -(a s + e)
  RnsPolynomial a;
};

struct KeyPair {
  SecretKey sk;
  PublicKey pk;
};

struct Ciphertext {
  std::vector<RnsPolynomial> parts;
  Fingerprint fingerprint{};

  unsigned degree() const { return parts.empty() ? 0 : static_cast<unsigned>(parts.size() - 1); }
};

struct KeyGenOptions {
  bool zero_secret = false;
  bool zero_error = false;
};

KeyPair KeyGen(const FvContext& ctx, Rng& rng, const KeyGenOptions& opts = {});

// Binary secret as an RnsPolynomial over `basis`.
RnsPolynomial SecretPoly(const SecretKey& sk, const BasisPtr& basis);
// s^2 in Z[x]/(x^n + 1), exact small integers.
std::vector<std::int64_t> SecretSquare(const SecretKey& sk);

// NonBinaryMessage, DegreeMismatch (length != n).
Ciphertext Encrypt(const FvContext& ctx, const PublicKey& pk, const std::vector<std::uint8_t>& m,
                   Rng& rng);
// Noiseless (delta m, 0).
Ciphertext EncryptTrivial(const FvContext& ctx, const std::vector<std::uint8_t>& m);

// u = c0 + c1 s (+ c2 s^2) reconstructed in [0, Q).
std::vector<BigUnsigned> Phase(const FvContext& ctx, const Ciphertext& ct, const SecretKey& sk);

std::vector<std::uint8_t> DecryptDeg1(const FvContext& ctx, const Ciphertext& ct,
                                      const SecretKey& sk);
std::vector<std::uint8_t> DecryptDeg2(const FvContext& ctx, const Ciphertext& ct,
                                      const SecretKey& sk);
std::vector<std::uint8_t> Decrypt(const FvContext& ctx, const Ciphertext& ct,
                                  const SecretKey& sk);

Ciphertext HomAdd(const Ciphertext& a, const Ciphertext& b);

enum class LiftMode { kCentered, kUnsigned };

struct MulOptions {
  LiftMode lift = LiftMode::kCentered;
  // Tensor product mod Q without the t/Q rescaling; for op counting only.
  bool paper_literal = false;
};

// Degree-1 x degree-1 -> degree 2.
Ciphertext HomMul(const FvContext& ctx, const Ciphertext& a, const Ciphertext& b,
                  const MulOptions& opts = {});

// Exact integer negacyclic products (c0, c1, c2) of the lifted parts,
// centered, before rescaling.
std::array<std::vector<BigSigned>, 3> TensorExact(const FvContext& ctx, const Ciphertext& a,
                                                  const Ciphertext& b, LiftMode lift);

// log2(delta/2) - log2(max_j |[u_j - delta m_j]_Q|), clamped at 0.
double NoiseBudget(const FvContext& ctx, const Ciphertext& ct, const SecretKey& sk,
                   const std::vector<std::uint8_t>& m);

// Plaintext ring operations in R_2.
std::vector<std::uint8_t> PlainAdd(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b);
std::vector<std::uint8_t> PlainMul(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b);

void CheckSameParams(const Ciphertext& a, const Ciphertext& b);

}  // namespace rahl
