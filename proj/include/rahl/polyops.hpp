// SPDX-License-Identifier: Apache-2.0
//
// RNS polynomials (k residue channels of n coefficients) and the simple
// coefficient-wise submodules: addition, conditional-select scalar
// multiplication and nearest-binary decoding.

#pragma once

#include <cstdint>
#include <vector>

#include "rahl/bigint.hpp"
#include "rahl/ntt.hpp"
#include "rahl/residue.hpp"

namespace rahl {

class RnsPolynomial {
 public:
  RnsPolynomial() = default;
  // Zero polynomial over `basis`.
  explicit RnsPolynomial(BasisPtr basis, Domain domain = Domain::kCoefficient);

  const BasisPtr& basis() const { return basis_; }
  std::size_t k() const { return channels_.size(); }
  std::size_t n() const { return basis_ ? basis_->n() : 0; }
  Domain domain() const { return channels_.empty() ? Domain::kCoefficient : channels_[0].domain; }
  std::uint64_t basis_id() const { return basis_ ? basis_->id() : 0; }

  ChannelPolynomial& channel(std::size_t i) { return channels_[i]; }
  const ChannelPolynomial& channel(std::size_t i) const { return channels_[i]; }
  std::vector<ChannelPolynomial>& channels() { return channels_; }
  const std::vector<ChannelPolynomial>& channels() const { return channels_; }

  // Per-coefficient residues into a temporary.
  void Gather(std::size_t j, std::vector<std::uint32_t>& out) const;

  // Throws DomainMismatch / ChannelMismatch if channels disagree.
  void CheckInvariants() const;

  friend bool operator==(const RnsPolynomial& a, const RnsPolynomial& b) {
    return a.basis_id() == b.basis_id() && a.channels_ == b.channels_;
  }

 private:
  BasisPtr basis_;
  std::vector<ChannelPolynomial> channels_;
};

RnsPolynomial FromBig(const BasisPtr& basis, const std::vector<BigUnsigned>& coeffs);
RnsPolynomial FromSigned(const BasisPtr& basis, const std::vector<BigSigned>& coeffs);
RnsPolynomial FromSmall(const BasisPtr& basis, const std::vector<std::int64_t>& coeffs);
// Coefficient-domain input; each coefficient reconstructed in [0, Q).
std::vector<BigUnsigned> ToBig(const RnsPolynomial& p);
std::vector<BigSigned> ToCentered(const RnsPolynomial& p);

// BasisMismatch, DomainMismatch.
RnsPolynomial PolyAdd(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial PolySub(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial PolyNeg(const RnsPolynomial& a);
void PolyAddInPlace(RnsPolynomial& a, const RnsPolynomial& b);

// Channel-wise negacyclic product of two coefficient-domain polynomials.
RnsPolynomial PolyMul(const RnsPolynomial& a, const RnsPolynomial& b);
// Pointwise product of two ntt-domain polynomials.
RnsPolynomial PolyMulPointwise(const RnsPolynomial& a, const RnsPolynomial& b);
// Negacyclic (psi-twisted) transforms of every channel.
RnsPolynomial ToNtt(const RnsPolynomial& a);
RnsPolynomial FromNtt(const RnsPolynomial& a);

// out[j] = value if m[j] == 1 else 0, by selection. NonBinaryMessage if some
// m[j] is not 0 or 1.
std::vector<BigUnsigned> ScalarMulBinary(const std::vector<std::uint8_t>& m,
                                         const BigUnsigned& value);

// 1 iff |u - delta| < floor(delta / 2); comparisons only. OutOfRange if
// u >= Q.
std::uint8_t NearestBinary(const BigUnsigned& u, const BigUnsigned& delta, const BigUnsigned& Q);

}  // namespace rahl
