// SPDX-License-Identifier: Apache-2.0

#include "rahl/relin.hpp"

#include <bit>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {
namespace {

BigSigned FromInt(std::int64_t v) {
  const auto mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
  return BigSigned{BigUnsigned(mag), v < 0};
}

// x <- T x in every channel; a shift and a conditional subtract when T = 2.
void ScaleByBase(RnsPolynomial& p, std::uint32_t T) {
  for (std::size_t i = 0; i < p.k(); ++i) {
    auto& ch = p.channel(i);
    if (T == 2) {
      for (auto& x : ch.coeffs) {
        std::uint64_t y = static_cast<std::uint64_t>(x) << 1;
        x = static_cast<std::uint32_t>(y >= ch.q ? y - ch.q : y);
      }
      perf::CountShift(ch.coeffs.size());
      perf::CountSelect(ch.coeffs.size());
    } else {
      const auto& f = p.basis()->ctx(i).folded;
      const std::uint32_t t = T % ch.q;
      for (auto& x : ch.coeffs) x = f.MulUnchecked(x, t);
      perf::CountModMul(ch.coeffs.size());
    }
  }
}

void CheckDegree2(const FvContext& ctx, const Ciphertext& ct) {
  RAHL_CHECK(ct.degree() == 2, ErrorCode::kDegreeMismatch,
             "relinearisation takes a degree-2 ciphertext");
  RAHL_CHECK(ct.fingerprint == ctx.fingerprint(), ErrorCode::kParameterMismatch,
             "ciphertext was produced under different parameters");
}

}  // namespace

RelinKeysV1 RelinKeyGenV1(const FvContext& ctx, const SecretKey& sk, Rng& rng,
                          RelinTranscriptV1* transcript) {
  const auto& basis = ctx.basis();
  const auto& params = ctx.params();
  RelinKeysV1 keys;
  keys.T = params.relin_base;
  keys.ell = params.ell;
  keys.levels.reserve(keys.ell + 1);
  RnsPolynomial s = ToNtt(SecretPoly(sk, basis));
  // T^i s^2, starting from the exact integer square.
  RnsPolynomial power = FromSmall(basis, SecretSquare(sk));
  GaussianSampler g(NoiseConfig{params.sigma});
  for (unsigned i = 0; i <= keys.ell; ++i) {
    RnsPolynomial a = ToNtt(SampleUniformPoly(basis, rng));
    auto e = SampleGaussianPoly(g, ctx.n(), rng);
    RnsPolynomial b = ToNtt(PolySub(power, FromSmall(basis, e)));
    b = PolySub(b, PolyMulPointwise(a, s));
    keys.levels.push_back({std::move(b), std::move(a)});
    if (transcript) transcript->e.push_back(std::move(e));
    if (i < keys.ell) ScaleByBase(power, keys.T);
  }
  return keys;
}

RelinKeysV2 RelinKeysV2FromKey(const FvContext& ctx, std::array<RnsPolynomial, 2> key) {
  RelinKeysV2 keys;
  keys.p_log2 = ctx.params().p_log2;
  for (int t = 0; t < 2; ++t) {
    RAHL_CHECK(key[t].basis_id() == ctx.relin_basis()->id(), ErrorCode::kBasisMismatch,
               "relin v2 key is not over the relin basis");
    keys.key_ntt[t] = ToNtt(key[t]);
  }
  keys.key = std::move(key);
  return keys;
}

RelinKeysV2 RelinKeyGenV2(const FvContext& ctx, const SecretKey& sk, Rng& rng,
                          RelinTranscriptV2* transcript) {
  const auto& B = ctx.relin_basis();
  const BigUnsigned& pQ = ctx.pQ();
  const unsigned s_bits = ctx.params().p_log2;
  const std::size_t n = ctx.n();
  std::vector<BigUnsigned> a(n);
  for (auto& x : a) x = rng.UniformBig(pQ);
  GaussianSampler second(NoiseConfig{ctx.params().sigma});
  auto e = SampleGaussianPoly(second, n, rng);
  RnsPolynomial aB = FromBig(B, a);
  RnsPolynomial sB = ToNtt(SecretPoly(sk, B));
  auto as = ToCentered(FromNtt(PolyMulPointwise(ToNtt(aB), sB)));
  auto s2 = SecretSquare(sk);
  std::vector<BigUnsigned> k0(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigSigned ps2 = FromInt(s2[j]);
    ps2.mag <<= s_bits;
    k0[j] = (ps2 - as[j] - FromInt(e[j])).Mod(pQ);
  }
  if (transcript) transcript->e = e;
  return RelinKeysV2FromKey(ctx, {FromBig(B, k0), std::move(aB)});
}

std::vector<std::vector<std::uint32_t>> DecomposeBaseT(const std::vector<BigUnsigned>& c2,
                                                       std::uint32_t T, unsigned ell) {
  RAHL_CHECK(T >= 2, ErrorCode::kInvalidArgument, "base must be >= 2");
  std::vector<std::vector<std::uint32_t>> out(ell + 1, std::vector<std::uint32_t>(c2.size(), 0));
  const bool pow2 = std::has_single_bit(T);
  const unsigned w = static_cast<unsigned>(std::countr_zero(T));
  for (std::size_t j = 0; j < c2.size(); ++j) {
    if (pow2) {
      const auto limbs = c2[j].limbs();
      for (unsigned i = 0; i <= ell; ++i) {
        std::uint32_t d = 0;
        for (unsigned b = 0; b < w; ++b) {
          const std::size_t bit = static_cast<std::size_t>(i) * w + b;
          const std::size_t limb = bit / 32;
          if (limb < limbs.size()) d |= ((limbs[limb] >> (bit % 32)) & 1u) << b;
        }
        out[i][j] = d;
      }
      perf::CountShift(static_cast<std::uint64_t>(ell + 1) * w);
    } else {
      BigUnsigned cur = c2[j];
      for (unsigned i = 0; i <= ell && !cur.IsZero(); ++i) {
        auto [qt, r] = BigUnsigned::DivModSmall(cur, T);
        out[i][j] = r;
        cur = std::move(qt);
      }
    }
  }
  return out;
}

Ciphertext RelinearizeV1(const FvContext& ctx, const Ciphertext& ct, const RelinKeysV1& keys,
                         InnerProduct mode) {
  CheckDegree2(ctx, ct);
  RAHL_CHECK(keys.levels.size() == keys.ell + 1 && keys.ell == ctx.params().ell &&
                 keys.T == ctx.params().relin_base,
             ErrorCode::kParameterMismatch, "relin v1 keys do not match the parameters");
  const auto& basis = *ctx.basis();
  const std::size_t n = ctx.n();
  const auto digits = DecomposeBaseT(ToBig(ct.parts[2]), keys.T, keys.ell);

  Ciphertext out;
  out.fingerprint = ct.fingerprint;
  out.parts = {ct.parts[0], ct.parts[1]};
  std::vector<std::uint32_t> tw(n);
  std::array<std::vector<std::uint32_t>, 2> acc;

  for (std::size_t ch = 0; ch < basis.k(); ++ch) {
    const ModulusContext& c = basis.ctx(ch);
    const std::uint32_t q = c.q;
    acc[0].assign(n, 0);
    acc[1].assign(n, 0);
    if (mode == InnerProduct::kNtt) {
      for (unsigned i = 0; i <= keys.ell; ++i) {
        const auto& d = digits[i];
        if (keys.T == 2) {
          for (std::size_t j = 0; j < n; ++j) tw[j] = d[j] ? c.psi_pows[j] : 0;
          perf::CountSelect(n);
        } else {
          for (std::size_t j = 0; j < n; ++j) tw[j] = c.folded.MulUnchecked(d[j] % q, c.psi_pows[j]);
          perf::CountModMul(n);
        }
        NttForwardInPlace(tw, c);
        for (int t = 0; t < 2; ++t) {
          const auto& key = keys.levels[i][t].channel(ch).coeffs;
          auto& a = acc[t];
          for (std::size_t j = 0; j < n; ++j) {
            a[j] = AddModUnchecked(a[j], c.folded.MulUnchecked(tw[j], key[j]), q);
          }
        }
        perf::CountModMul(2 * n);
        perf::CountModAdd(2 * n);
      }
      InverseUntwistInPlace(acc[0], c);
      InverseUntwistInPlace(acc[1], c);
    } else {
      RAHL_CHECK(keys.T == 2, ErrorCode::kInvalidArgument,
                 "schoolbook inner product needs binary digits");
      for (unsigned i = 0; i <= keys.ell; ++i) {
        const auto& d = digits[i];
        for (int t = 0; t < 2; ++t) {
          std::vector<std::uint32_t> key = keys.levels[i][t].channel(ch).coeffs;
          InverseUntwistInPlace(key, c);
          auto& a = acc[t];
          for (std::size_t j = 0; j < n; ++j) {
            if (!d[j]) continue;
            for (std::size_t l = 0; l < n; ++l) {
              const std::size_t idx = j + l;
              if (idx < n) {
                a[idx] = AddModUnchecked(a[idx], key[l], q);
              } else {
                a[idx - n] = SubModUnchecked(a[idx - n], key[l], q);
              }
            }
            perf::CountModAdd(n);
          }
          perf::CountSelect(n);
        }
      }
    }
    for (int t = 0; t < 2; ++t) {
      auto& dst = out.parts[t].channel(ch).coeffs;
      for (std::size_t j = 0; j < n; ++j) dst[j] = AddModUnchecked(dst[j], acc[t][j], q);
    }
    perf::CountModAdd(2 * n);
  }
  return out;
}

BigUnsigned DivRound(const BigUnsigned& x, unsigned s) {
  if (s == 0) return x;
  return (x + BigUnsigned::Pow2(s - 1)) >> s;
}

BigSigned DivRound(const BigSigned& x, unsigned s) {
  if (s == 0) return x;
  return (x + BigSigned{BigUnsigned::Pow2(s - 1), false}).FloorShift(s);
}

Ciphertext RelinearizeV2(const FvContext& ctx, const Ciphertext& ct, const RelinKeysV2& keys) {
  CheckDegree2(ctx, ct);
  RAHL_CHECK(keys.p_log2 == ctx.params().p_log2, ErrorCode::kParameterMismatch,
             "relin v2 keys do not match the parameters");
  const auto& B = ctx.relin_basis();
  const auto& main = *ctx.basis();
  const BigUnsigned& Q = ctx.Q();
  RnsPolynomial c2 = ToNtt(FromSigned(B, ToCentered(ct.parts[2])));
  Ciphertext out;
  out.fingerprint = ct.fingerprint;
  out.parts = {ct.parts[0], ct.parts[1]};
  std::vector<std::uint32_t> r(main.k());
  for (int t = 0; t < 2; ++t) {
    auto prod = ToCentered(FromNtt(PolyMulPointwise(c2, keys.key_ntt[t])));
    RnsPolynomial add(ctx.basis());
    for (std::size_t j = 0; j < ctx.n(); ++j) {
      main.DecomposeInto(DivRound(prod[j], keys.p_log2).Mod(Q), r);
      for (std::size_t i = 0; i < main.k(); ++i) add.channel(i).coeffs[j] = r[i];
    }
    PolyAddInPlace(out.parts[t], add);
  }
  return out;
}

DepthProbeResult DepthProbe(const FvContext& ctx, const KeyPair& keys, RelinVersion version,
                            const RelinKeysV1* v1, const RelinKeysV2* v2, Rng& rng,
                            const std::vector<std::uint8_t>& m, unsigned max_depth,
                            const MulOptions& opts) {
  RAHL_CHECK(version == RelinVersion::kV1 ? v1 != nullptr : v2 != nullptr,
             ErrorCode::kInvalidArgument, "missing relinearisation keys");
  DepthProbeResult res;
  Ciphertext ct = Encrypt(ctx, keys.pk, m, rng);
  std::vector<std::uint8_t> expected = m;
  if (DecryptDeg1(ctx, ct, keys.sk) != expected) return res;
  for (unsigned d = 1; d <= max_depth; ++d) {
    Ciphertext sq = HomMul(ctx, ct, ct, opts);
    ct = version == RelinVersion::kV1 ? RelinearizeV1(ctx, sq, *v1) : RelinearizeV2(ctx, sq, *v2);
    expected = PlainMul(expected, expected);
    if (DecryptDeg1(ctx, ct, keys.sk) != expected) break;
    res.depth = d;
    res.budgets.push_back(NoiseBudget(ctx, ct, keys.sk, expected));
  }
  return res;
}

}  // namespace rahl
