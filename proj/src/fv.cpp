// SPDX-License-Identifier: Apache-2.0

#include "rahl/fv.hpp"

#include <algorithm>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {
namespace {

std::vector<std::uint32_t> Concat(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void CheckContext(const FvContext& ctx, const Ciphertext& ct) {
  RAHL_CHECK(ct.fingerprint == ctx.fingerprint(), ErrorCode::kParameterMismatch,
             "ciphertext was produced under different parameters");
  for (const auto& p : ct.parts) {
    RAHL_CHECK(p.basis_id() == ctx.basis()->id(), ErrorCode::kBasisMismatch,
               "ciphertext part is not over the working basis");
  }
}

void CheckMessage(const FvContext& ctx, const std::vector<std::uint8_t>& m) {
  RAHL_CHECK(m.size() == ctx.n(), ErrorCode::kDegreeMismatch,
             "message length " + std::to_string(m.size()) + " != n = " + std::to_string(ctx.n()));
}

// Integer lift of a working-basis polynomial onto the tensor basis. The
// working channels carry over unchanged because Q vanishes modulo every q_i.
RnsPolynomial LiftToTensor(const FvContext& ctx, const RnsPolynomial& p, LiftMode lift) {
  const auto& main = *ctx.basis();
  const auto& ext = *ctx.extension_basis();
  RnsPolynomial out(ctx.tensor_basis());
  for (std::size_t i = 0; i < main.k(); ++i) out.channel(i).coeffs = p.channel(i).coeffs;
  std::vector<std::uint32_t> v;
  std::vector<std::uint32_t> r(ext.k());
  for (std::size_t j = 0; j < ctx.n(); ++j) {
    p.Gather(j, v);
    if (lift == LiftMode::kCentered) {
      ext.DecomposeSignedInto(main.ReconstructCentered(v), r);
    } else {
      ext.DecomposeInto(main.ReconstructLut(v), r);
    }
    for (std::size_t i = 0; i < ext.k(); ++i) out.channel(main.k() + i).coeffs[j] = r[i];
  }
  return out;
}

RnsPolynomial Gaussian(const BasisPtr& basis, const GaussianSampler& g, Rng& rng) {
  return FromSmall(basis, SampleGaussianPoly(g, basis->n(), rng));
}

}  // namespace

std::shared_ptr<const FvContext> FvContext::Create(const ParameterSet& params) {
  params.Validate();
  std::shared_ptr<FvContext> c(new FvContext());
  c->params_ = params;
  c->fingerprint_ = params.Fingerprint();
  const std::size_t n = params.n;
  c->basis_ = RnsBasis::Create(params.moduli, n);
  const BigUnsigned& Q = params.Q;
  const BigUnsigned n_big(n);

  BigUnsigned tensor_target = (Q * Q * n_big) << 2;
  auto ext = ExtensionPrimes(n, Q, tensor_target, params.moduli);
  c->extension_basis_ = RnsBasis::Create(ext, n);
  c->tensor_basis_ = RnsBasis::Create(Concat(params.moduli, ext), n);

  c->pQ_ = Q << params.p_log2;
  BigUnsigned relin_target = ((Q * Q * n_big) << params.p_log2) << 1;
  auto relin = ExtensionPrimes(n, BigUnsigned(1), relin_target, params.moduli);
  c->relin_basis_ = RnsBasis::Create(relin, n);
  return c;
}

RnsPolynomial SecretPoly(const SecretKey& sk, const BasisPtr& basis) {
  std::vector<std::int64_t> v(sk.s.begin(), sk.s.end());
  return FromSmall(basis, v);
}

std::vector<std::int64_t> SecretSquare(const SecretKey& sk) {
  const std::size_t n = sk.s.size();
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!sk.s[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!sk.s[j]) continue;
      const std::size_t idx = i + j;
      if (idx < n) {
        ++out[idx];
      } else {
        --out[idx - n];
      }
    }
  }
  return out;
}

KeyPair KeyGen(const FvContext& ctx, Rng& rng, const KeyGenOptions& opts) {
  const auto& basis = ctx.basis();
  const std::size_t n = ctx.n();
  KeyPair kp;
  kp.sk.s = SampleBinaryPoly(n, rng);
  if (opts.zero_secret) std::fill(kp.sk.s.begin(), kp.sk.s.end(), 0);
  RnsPolynomial a = SampleUniformPoly(basis, rng);
  GaussianSampler g(NoiseConfig{ctx.params().sigma});
  RnsPolynomial e = Gaussian(basis, g, rng);
  if (opts.zero_error) e = RnsPolynomial(basis);
  RnsPolynomial as = PolyMul(a, SecretPoly(kp.sk, basis));
  kp.pk.b = PolyNeg(PolyAdd(as, e));
  kp.pk.a = std::move(a);
  return kp;
}

Ciphertext Encrypt(const FvContext& ctx, const PublicKey& pk, const std::vector<std::uint8_t>& m,
                   Rng& rng) {
  CheckMessage(ctx, m);
  auto dm = ScalarMulBinary(m, ctx.delta());
  const auto& basis = ctx.basis();
  RAHL_CHECK(pk.b.basis_id() == basis->id() && pk.a.basis_id() == basis->id(),
             ErrorCode::kParameterMismatch, "public key does not match the parameters");
  std::vector<std::int64_t> r0(ctx.n());
  for (auto& x : r0) x = rng.Bit();
  GaussianSampler g(NoiseConfig{ctx.params().sigma});
  RnsPolynomial r1 = Gaussian(basis, g, rng);
  RnsPolynomial r2 = Gaussian(basis, g, rng);
  RnsPolynomial u = ToNtt(FromSmall(basis, r0));
  Ciphertext ct;
  ct.fingerprint = ctx.fingerprint();
  RnsPolynomial c0 = FromNtt(PolyMulPointwise(ToNtt(pk.b), u));
  PolyAddInPlace(c0, r2);
  PolyAddInPlace(c0, FromBig(basis, dm));
  RnsPolynomial c1 = FromNtt(PolyMulPointwise(ToNtt(pk.a), u));
  PolyAddInPlace(c1, r1);
  ct.parts.push_back(std::move(c0));
  ct.parts.push_back(std::move(c1));
  return ct;
}

Ciphertext EncryptTrivial(const FvContext& ctx, const std::vector<std::uint8_t>& m) {
  CheckMessage(ctx, m);
  Ciphertext ct;
  ct.fingerprint = ctx.fingerprint();
  ct.parts.push_back(FromBig(ctx.basis(), ScalarMulBinary(m, ctx.delta())));
  ct.parts.emplace_back(ctx.basis());
  return ct;
}

std::vector<BigUnsigned> Phase(const FvContext& ctx, const Ciphertext& ct, const SecretKey& sk) {
  CheckContext(ctx, ct);
  RAHL_CHECK(ct.degree() == 1 || ct.degree() == 2, ErrorCode::kDegreeMismatch,
             "ciphertext degree must be 1 or 2");
  RAHL_CHECK(sk.s.size() == ctx.n(), ErrorCode::kDegreeMismatch, "secret key length");
  const auto& basis = ctx.basis();
  RnsPolynomial s = ToNtt(SecretPoly(sk, basis));
  RnsPolynomial u = PolyAdd(ct.parts[0], FromNtt(PolyMulPointwise(ToNtt(ct.parts[1]), s)));
  if (ct.degree() == 2) {
    RnsPolynomial s2 = ToNtt(FromSmall(basis, SecretSquare(sk)));
    PolyAddInPlace(u, FromNtt(PolyMulPointwise(ToNtt(ct.parts[2]), s2)));
  }
  return ToBig(u);
}

namespace {

std::vector<std::uint8_t> DecodePhase(const FvContext& ctx, const std::vector<BigUnsigned>& u) {
  std::vector<std::uint8_t> m(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) m[j] = NearestBinary(u[j], ctx.delta(), ctx.Q());
  return m;
}

}  // namespace

std::vector<std::uint8_t> DecryptDeg1(const FvContext& ctx, const Ciphertext& ct,
                                      const SecretKey& sk) {
  RAHL_CHECK(ct.degree() == 1, ErrorCode::kDegreeMismatch, "expected a degree-1 ciphertext");
  return DecodePhase(ctx, Phase(ctx, ct, sk));
}

std::vector<std::uint8_t> DecryptDeg2(const FvContext& ctx, const Ciphertext& ct,
                                      const SecretKey& sk) {
  RAHL_CHECK(ct.degree() == 2, ErrorCode::kDegreeMismatch, "expected a degree-2 ciphertext");
  return DecodePhase(ctx, Phase(ctx, ct, sk));
}

std::vector<std::uint8_t> Decrypt(const FvContext& ctx, const Ciphertext& ct,
                                  const SecretKey& sk) {
  return ct.degree() == 2 ? DecryptDeg2(ctx, ct, sk) : DecryptDeg1(ctx, ct, sk);
}

void CheckSameParams(const Ciphertext& a, const Ciphertext& b) {
  RAHL_CHECK(a.fingerprint == b.fingerprint, ErrorCode::kParameterMismatch,
             "ciphertexts were produced under different parameters");
  RAHL_CHECK(!a.parts.empty() && !b.parts.empty() &&
                 a.parts[0].basis_id() == b.parts[0].basis_id(),
             ErrorCode::kBasisMismatch, "ciphertexts live in different bases");
}

Ciphertext HomAdd(const Ciphertext& a, const Ciphertext& b) {
  CheckSameParams(a, b);
  RAHL_CHECK(a.degree() == b.degree(), ErrorCode::kDegreeMismatch,
             "cannot add ciphertexts of different degree");
  Ciphertext out = a;
  for (std::size_t i = 0; i < out.parts.size(); ++i) PolyAddInPlace(out.parts[i], b.parts[i]);
  return out;
}

namespace {

std::array<RnsPolynomial, 3> TensorOverBasis(const std::array<RnsPolynomial, 2>& x,
                                             const std::array<RnsPolynomial, 2>& y) {
  RnsPolynomial x0 = ToNtt(x[0]), x1 = ToNtt(x[1]);
  RnsPolynomial y0 = ToNtt(y[0]), y1 = ToNtt(y[1]);
  RnsPolynomial c0 = PolyMulPointwise(x0, y0);
  RnsPolynomial c1 = PolyAdd(PolyMulPointwise(x0, y1), PolyMulPointwise(x1, y0));
  RnsPolynomial c2 = PolyMulPointwise(x1, y1);
  return {FromNtt(c0), FromNtt(c1), FromNtt(c2)};
}

void CheckMulInputs(const FvContext& ctx, const Ciphertext& a, const Ciphertext& b) {
  CheckContext(ctx, a);
  CheckContext(ctx, b);
  RAHL_CHECK(a.degree() == 1 && b.degree() == 1, ErrorCode::kDegreeMismatch,
             "multiplication takes degree-1 ciphertexts");
}

std::array<RnsPolynomial, 3> TensorLifted(const FvContext& ctx, const Ciphertext& a,
                                          const Ciphertext& b, LiftMode lift) {
  std::array<RnsPolynomial, 2> x{LiftToTensor(ctx, a.parts[0], lift),
                                 LiftToTensor(ctx, a.parts[1], lift)};
  std::array<RnsPolynomial, 2> y{LiftToTensor(ctx, b.parts[0], lift),
                                 LiftToTensor(ctx, b.parts[1], lift)};
  return TensorOverBasis(x, y);
}

}  // namespace

std::array<std::vector<BigSigned>, 3> TensorExact(const FvContext& ctx, const Ciphertext& a,
                                                  const Ciphertext& b, LiftMode lift) {
  CheckMulInputs(ctx, a, b);
  auto t = TensorLifted(ctx, a, b, lift);
  return {ToCentered(t[0]), ToCentered(t[1]), ToCentered(t[2])};
}

Ciphertext HomMul(const FvContext& ctx, const Ciphertext& a, const Ciphertext& b,
                  const MulOptions& opts) {
  CheckMulInputs(ctx, a, b);
  Ciphertext out;
  out.fingerprint = ctx.fingerprint();
  if (opts.paper_literal) {
    auto t = TensorOverBasis({a.parts[0], a.parts[1]}, {b.parts[0], b.parts[1]});
    for (auto& p : t) out.parts.push_back(std::move(p));
    return out;
  }
  auto t = TensorLifted(ctx, a, b, opts.lift);
  const auto& tensor = *ctx.tensor_basis();
  const auto& main = *ctx.basis();
  const BigUnsigned& Q = ctx.Q();
  const BigSigned half{Q >> 1, false};
  const std::uint32_t tp = ctx.params().t;
  std::vector<std::uint32_t> v;
  std::vector<std::uint32_t> r(main.k());
  for (auto& poly : t) {
    RnsPolynomial scaled(ctx.basis());
    for (std::size_t j = 0; j < ctx.n(); ++j) {
      poly.Gather(j, v);
      BigSigned x = tensor.ReconstructCentered(v);
      x.mag = x.mag.MulSmall(tp);
      // round(t x / Q) = floor((t x + floor(Q/2)) / Q)
      BigSigned y = (x + half).FloorDiv(Q);
      main.DecomposeSignedInto(y, r);
      for (std::size_t i = 0; i < main.k(); ++i) scaled.channel(i).coeffs[j] = r[i];
    }
    out.parts.push_back(std::move(scaled));
  }
  return out;
}

double NoiseBudget(const FvContext& ctx, const Ciphertext& ct, const SecretKey& sk,
                   const std::vector<std::uint8_t>& m) {
  CheckMessage(ctx, m);
  const auto u = Phase(ctx, ct, sk);
  const BigUnsigned& Q = ctx.Q();
  const BigUnsigned& delta = ctx.delta();
  BigUnsigned worst;
  for (std::size_t j = 0; j < u.size(); ++j) {
    BigUnsigned d = u[j];
    if (m[j]) d = d >= delta ? d - delta : d + Q - delta;
    BigUnsigned mag = (d << 1) > Q ? Q - d : d;
    if (mag > worst) worst = mag;
  }
  const double cap = delta.Log2() - 1.0;
  if (worst.IsZero()) return cap;
  return std::max(0.0, cap - worst.Log2());
}

std::vector<std::uint8_t> PlainAdd(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b) {
  RAHL_CHECK(a.size() == b.size(), ErrorCode::kDegreeMismatch, "length mismatch");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] ^ b[i]) & 1u;
  return out;
}

std::vector<std::uint8_t> PlainMul(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b) {
  RAHL_CHECK(a.size() == b.size(), ErrorCode::kDegreeMismatch, "length mismatch");
  const std::size_t n = a.size();
  std::vector<std::uint8_t> out(n, 0);
  // Signs from x^n = -1 vanish mod 2.
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n; ++j) out[(i + j) % n] ^= b[j] & 1u;
  }
  return out;
}

}  // namespace rahl
