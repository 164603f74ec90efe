// SPDX-License-Identifier: Apache-2.0

#include "rahl/polyops.hpp"

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {

RnsPolynomial::RnsPolynomial(BasisPtr basis, Domain domain) : basis_(std::move(basis)) {
  channels_.reserve(basis_->k());
  for (std::uint32_t q : basis_->moduli()) {
    channels_.emplace_back(q, std::vector<std::uint32_t>(basis_->n(), 0), domain);
  }
}

void RnsPolynomial::Gather(std::size_t j, std::vector<std::uint32_t>& out) const {
  out.resize(channels_.size());
  for (std::size_t i = 0; i < channels_.size(); ++i) out[i] = channels_[i].coeffs[j];
}

void RnsPolynomial::CheckInvariants() const {
  RAHL_CHECK(basis_ != nullptr, ErrorCode::kBasisMismatch, "polynomial has no basis");
  RAHL_CHECK(channels_.size() == basis_->k(), ErrorCode::kChannelMismatch,
             "channel count does not match basis");
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    const auto& c = channels_[i];
    RAHL_CHECK(c.q == basis_->moduli()[i], ErrorCode::kChannelMismatch, "channel modulus");
    RAHL_CHECK(c.coeffs.size() == basis_->n(), ErrorCode::kDegreeMismatch, "channel length");
    RAHL_CHECK(c.domain == channels_[0].domain, ErrorCode::kDomainMismatch, "mixed domains");
    for (std::uint32_t x : c.coeffs) {
      RAHL_CHECK(x < c.q, ErrorCode::kOutOfRange, "coefficient not below its modulus");
    }
  }
}

namespace {

void CheckCompatible(const RnsPolynomial& a, const RnsPolynomial& b) {
  RAHL_CHECK(a.basis() && b.basis() && a.basis_id() == b.basis_id(), ErrorCode::kBasisMismatch,
             "polynomials live in different bases");
  RAHL_CHECK(a.domain() == b.domain(), ErrorCode::kDomainMismatch,
             "polynomials live in different domains");
}

}  // namespace

RnsPolynomial FromBig(const BasisPtr& basis, const std::vector<BigUnsigned>& coeffs) {
  RAHL_CHECK(coeffs.size() == basis->n(), ErrorCode::kDegreeMismatch, "wrong coefficient count");
  RnsPolynomial p(basis);
  std::vector<std::uint32_t> tmp(basis->k());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    RAHL_CHECK(coeffs[j] < basis->Q(), ErrorCode::kOutOfRange, "coefficient not below Q");
    basis->DecomposeInto(coeffs[j], tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) p.channel(i).coeffs[j] = tmp[i];
  }
  return p;
}

RnsPolynomial FromSigned(const BasisPtr& basis, const std::vector<BigSigned>& coeffs) {
  RAHL_CHECK(coeffs.size() == basis->n(), ErrorCode::kDegreeMismatch, "wrong coefficient count");
  RnsPolynomial p(basis);
  std::vector<std::uint32_t> tmp(basis->k());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    basis->DecomposeSignedInto(coeffs[j], tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) p.channel(i).coeffs[j] = tmp[i];
  }
  return p;
}

RnsPolynomial FromSmall(const BasisPtr& basis, const std::vector<std::int64_t>& coeffs) {
  RAHL_CHECK(coeffs.size() == basis->n(), ErrorCode::kDegreeMismatch, "wrong coefficient count");
  RnsPolynomial p(basis);
  for (std::size_t i = 0; i < basis->k(); ++i) {
    const std::uint32_t q = basis->moduli()[i];
    auto& c = p.channel(i).coeffs;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const std::int64_t v = coeffs[j];
      const auto mag = static_cast<std::uint64_t>(v < 0 ? -v : v) % q;
      c[j] = static_cast<std::uint32_t>(v < 0 && mag != 0 ? q - mag : mag);
    }
  }
  return p;
}

std::vector<BigUnsigned> ToBig(const RnsPolynomial& p) {
  RAHL_CHECK(p.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "reconstruction needs coefficient-domain input");
  std::vector<BigUnsigned> out(p.n());
  std::vector<std::uint32_t> tmp;
  for (std::size_t j = 0; j < p.n(); ++j) {
    p.Gather(j, tmp);
    out[j] = p.basis()->ReconstructLut(tmp);
  }
  return out;
}

std::vector<BigSigned> ToCentered(const RnsPolynomial& p) {
  RAHL_CHECK(p.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "reconstruction needs coefficient-domain input");
  std::vector<BigSigned> out(p.n());
  std::vector<std::uint32_t> tmp;
  for (std::size_t j = 0; j < p.n(); ++j) {
    p.Gather(j, tmp);
    out[j] = p.basis()->ReconstructCentered(tmp);
  }
  return out;
}

void PolyAddInPlace(RnsPolynomial& a, const RnsPolynomial& b) {
  CheckCompatible(a, b);
  for (std::size_t i = 0; i < a.k(); ++i) {
    auto& x = a.channel(i).coeffs;
    const auto& y = b.channel(i).coeffs;
    const std::uint32_t q = a.channel(i).q;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = AddModUnchecked(x[j], y[j], q);
  }
  perf::CountModAdd(a.k() * a.n());
}

RnsPolynomial PolyAdd(const RnsPolynomial& a, const RnsPolynomial& b) {
  RnsPolynomial out = a;
  PolyAddInPlace(out, b);
  return out;
}

RnsPolynomial PolySub(const RnsPolynomial& a, const RnsPolynomial& b) {
  CheckCompatible(a, b);
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    auto& x = out.channel(i).coeffs;
    const auto& y = b.channel(i).coeffs;
    const std::uint32_t q = a.channel(i).q;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = SubModUnchecked(x[j], y[j], q);
  }
  perf::CountModAdd(a.k() * a.n());
  return out;
}

RnsPolynomial PolyNeg(const RnsPolynomial& a) {
  RnsPolynomial out = a;
  for (auto& ch : out.channels()) {
    for (auto& x : ch.coeffs) x = x == 0 ? 0 : ch.q - x;
  }
  perf::CountModAdd(a.k() * a.n());
  return out;
}

RnsPolynomial PolyMul(const RnsPolynomial& a, const RnsPolynomial& b) {
  CheckCompatible(a, b);
  RAHL_CHECK(a.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "negacyclic multiply takes coefficient-domain inputs");
  RnsPolynomial out(a.basis());
  for (std::size_t i = 0; i < a.k(); ++i) {
    out.channel(i) = NegacyclicMultiply(a.channel(i), b.channel(i), a.basis()->ctx(i));
  }
  return out;
}

RnsPolynomial PolyMulPointwise(const RnsPolynomial& a, const RnsPolynomial& b) {
  CheckCompatible(a, b);
  RAHL_CHECK(a.domain() == Domain::kNtt, ErrorCode::kDomainMismatch,
             "pointwise product takes ntt-domain inputs");
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    const auto& f = a.basis()->ctx(i).folded;
    auto& x = out.channel(i).coeffs;
    const auto& y = b.channel(i).coeffs;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.MulUnchecked(x[j], y[j]);
  }
  perf::CountModMul(a.k() * a.n());
  return out;
}

RnsPolynomial ToNtt(const RnsPolynomial& a) {
  RAHL_CHECK(a.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "already in ntt domain");
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    TwistForwardInPlace(out.channel(i).coeffs, a.basis()->ctx(i));
    out.channel(i).domain = Domain::kNtt;
  }
  return out;
}

RnsPolynomial FromNtt(const RnsPolynomial& a) {
  RAHL_CHECK(a.domain() == Domain::kNtt, ErrorCode::kDomainMismatch,
             "already in coefficient domain");
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.k(); ++i) {
    InverseUntwistInPlace(out.channel(i).coeffs, a.basis()->ctx(i));
    out.channel(i).domain = Domain::kCoefficient;
  }
  return out;
}

std::vector<BigUnsigned> ScalarMulBinary(const std::vector<std::uint8_t>& m,
                                         const BigUnsigned& value) {
  std::vector<BigUnsigned> out(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    RAHL_CHECK(m[j] <= 1, ErrorCode::kNonBinaryMessage,
               "message coefficient " + std::to_string(j) + " is not a bit");
    if (m[j]) out[j] = value;
  }
  perf::CountSelect(m.size());
  return out;
}

std::uint8_t NearestBinary(const BigUnsigned& u, const BigUnsigned& delta, const BigUnsigned& Q) {
  RAHL_CHECK(u < Q, ErrorCode::kOutOfRange, "u is not below Q");
  const BigUnsigned half = delta >> 1;
  const BigUnsigned dist = u >= delta ? u - delta : delta - u;
  return dist < half ? 1 : 0;
}

}  // namespace rahl
