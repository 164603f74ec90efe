// SPDX-License-Identifier: Apache-2.0
//
// Residue number system over a list of NTT-friendly primes: decomposition of
// big coefficients into per-channel residues and CRT reconstruction.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rahl/bigint.hpp"
#include "rahl/params.hpp"

namespace rahl {

enum class ExecMode { kSerial, kParallel };

class RnsBasis {
 public:
  static std::shared_ptr<const RnsBasis> Create(const std::vector<std::uint32_t>& moduli,
                                                std::size_t n);

  std::size_t k() const { return contexts_.size(); }
  std::size_t n() const { return n_; }
  const ModulusContext& ctx(std::size_t i) const { return contexts_[i]; }
  const std::vector<ModulusContext>& contexts() const { return contexts_; }
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  const BigUnsigned& Q() const { return Q_; }
  const BigUnsigned& HalfQ() const { return half_Q_; }
  const BigUnsigned& M(std::size_t i) const { return M_[i]; }
  std::uint32_t y(std::size_t i) const { return y_[i]; }
  // FNV-1a over n and the moduli; equal bases have equal ids.
  std::uint64_t id() const { return id_; }

  // Residues of x into out[0..k). x must be below Q; callers on hot paths
  // use the unchecked form.
  std::uint32_t ResidueOf(const BigUnsigned& x, std::size_t i) const;
  void DecomposeInto(const BigUnsigned& x, std::span<std::uint32_t> out) const;
  // x is reduced into each channel; negative values map to q - (|x| mod q).
  void DecomposeSignedInto(const BigSigned& x, std::span<std::uint32_t> out) const;

  // Sum of M_i * ((v_i y_i) mod q_i), reduced mod Q.
  BigUnsigned ReconstructLut(std::span<const std::uint32_t> v) const;
  // Centered representative in (-Q/2, Q/2].
  BigSigned ReconstructCentered(std::span<const std::uint32_t> v) const;

 private:
  RnsBasis() = default;
  std::uint32_t Residue(std::span<const BigUnsigned::Limb> limbs, std::size_t i) const;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> moduli_;
  std::vector<ModulusContext> contexts_;
  std::vector<std::uint32_t> limb_factor_;  // 2^32 mod q_i
  std::vector<bool> fast_;
  std::size_t weight_limbs_ = 0;
  std::vector<std::uint32_t> weights_;  // 2^(32 l) mod q_i, channel-major
  BigUnsigned Q_;
  BigUnsigned half_Q_;
  std::vector<BigUnsigned> M_;
  std::vector<std::uint32_t> y_;
  std::vector<long double> inv_q_;
  std::uint64_t id_ = 0;
};

using BasisPtr = std::shared_ptr<const RnsBasis>;

struct ResidueVector {
  std::vector<std::uint32_t> values;
};

// OutOfRange if x >= Q. Parallel mode spreads channels over worker threads
// and merges their op counters back; the output is identical to serial.
ResidueVector RnsDecompose(const BigUnsigned& x, const RnsBasis& basis,
                           ExecMode mode = ExecMode::kSerial);

// Folds channels two at a time, inverting the running modulus with the
// extended Euclidean algorithm at call time.
BigUnsigned CrtReconstructPairwise(const ResidueVector& v, const RnsBasis& basis);

BigUnsigned CrtReconstructLut(const ResidueVector& v, const RnsBasis& basis);

}  // namespace rahl
