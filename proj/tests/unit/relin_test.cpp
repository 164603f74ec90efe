// SPDX-License-Identifier: Apache-2.0

#include "rahl/relin.hpp"

#include <cmath>

#include "rahl/perf.hpp"
#include "test_util.hpp"

namespace rahl {
namespace {

using testing::FromMpz;
using testing::ToMpz;

std::vector<mpz_class> ToMpzVec(const std::vector<BigUnsigned>& v) {
  std::vector<mpz_class> out;
  for (const auto& x : v) out.push_back(ToMpz(x));
  return out;
}

std::vector<std::uint8_t> Constant(std::size_t n, int bit) {
  std::vector<std::uint8_t> m(n, 0);
  m[0] = static_cast<std::uint8_t>(bit);
  return m;
}

class RelinSmall : public ::testing::Test {
 protected:
  void SetUp() override {
    ctx_ = FvContext::Create(GenerateParameters(16, 2, 3, 30));
    kp_ = KeyGen(*ctx_, rng_);
    v1_ = RelinKeyGenV1(*ctx_, kp_.sk, rng_, &t1_);
    v2_ = RelinKeyGenV2(*ctx_, kp_.sk, rng_, &t2_);
    for (auto b : kp_.sk.s) s_.push_back(b);
    s2_ = testing::NegacyclicZ(s_, s_);
  }
  Ciphertext Fresh(const std::vector<std::uint8_t>& m) { return Encrypt(*ctx_, kp_.pk, m, rng_); }

  Rng rng_{99, "relin-test"};
  std::shared_ptr<const FvContext> ctx_;
  KeyPair kp_;
  RelinTranscriptV1 t1_;
  RelinTranscriptV2 t2_;
  RelinKeysV1 v1_;
  RelinKeysV2 v2_;
  std::vector<mpz_class> s_, s2_;
};

TEST_F(RelinSmall, V1Shape) {
  EXPECT_EQ(v1_.T, 2u);
  EXPECT_EQ(v1_.ell, ctx_->Q().BitLength() - 1);
  EXPECT_EQ(v1_.levels.size(), v1_.ell + 1);
  EXPECT_EQ(t1_.e.size(), v1_.ell + 1);
}

TEST_F(RelinSmall, V1TranscriptInvariant) {
  const mpz_class Q = ToMpz(ctx_->Q());
  for (unsigned i = 0; i <= v1_.ell; ++i) {
    auto k0 = ToMpzVec(ToBig(FromNtt(v1_.levels[i][0])));
    auto k1 = ToMpzVec(ToBig(FromNtt(v1_.levels[i][1])));
    auto k1s = testing::NegacyclicZ(k1, s_);
    mpz_class pow = 1;
    pow <<= i;
    for (std::size_t j = 0; j < 16; ++j) {
      ASSERT_LE(std::llabs(t1_.e[i][j]), 20);
      const mpz_class lhs = testing::ModPositive(k0[j] + k1s[j], Q);
      const mpz_class rhs = testing::ModPositive(pow * s2_[j] - t1_.e[i][j], Q);
      ASSERT_EQ(lhs, rhs) << "level " << i << " coeff " << j;
    }
  }
}

TEST_F(RelinSmall, V2TranscriptInvariant) {
  const mpz_class Q = ToMpz(ctx_->Q());
  mpz_class p = 1;
  p <<= ctx_->params().p_log2;
  const mpz_class pQ = p * Q;
  EXPECT_EQ(v2_.p_log2, ctx_->params().p_log2);
  EXPECT_GE(p, Q * Q * Q);
  auto k0 = ToMpzVec(ToBig(v2_.key[0]));
  auto k1 = ToMpzVec(ToBig(v2_.key[1]));
  auto k1s = testing::NegacyclicZ(k1, s_);
  for (std::size_t j = 0; j < 16; ++j) {
    EXPECT_LT(k0[j], pQ);
    EXPECT_LE(std::llabs(t2_.e[j]), 20);
    EXPECT_EQ(testing::ModPositive(k0[j] + k1s[j], pQ),
              testing::ModPositive(p * s2_[j] - t2_.e[j], pQ));
  }
}

TEST(DecomposeBaseT, Examples) {
  auto d = DecomposeBaseT({BigUnsigned(13), BigUnsigned(0)}, 2, 5);
  ASSERT_EQ(d.size(), 6u);
  std::vector<std::uint32_t> digits;
  for (const auto& level : d) digits.push_back(level[0]);
  EXPECT_EQ(digits, (std::vector<std::uint32_t>{1, 0, 1, 1, 0, 0}));
  for (const auto& level : d) EXPECT_EQ(level[1], 0u);
  auto t3 = DecomposeBaseT({BigUnsigned(100)}, 3, 4);  // 100 = 10201 in base 3
  std::vector<std::uint32_t> d3;
  for (const auto& level : t3) d3.push_back(level[0]);
  EXPECT_EQ(d3, (std::vector<std::uint32_t>{1, 0, 2, 0, 1}));
}

TEST(DecomposeBaseT, Reassembly) {
  gmp_randclass r(gmp_randinit_default);
  r.seed(3);
  std::vector<BigUnsigned> coeffs;
  std::vector<mpz_class> values;
  for (int i = 0; i < 1000; ++i) {
    values.push_back(r.get_z_bits(300));
    coeffs.push_back(FromMpz(values.back()));
  }
  auto d = DecomposeBaseT(coeffs, 2, 299);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    mpz_class acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = 2 * acc + d[i][j];
    ASSERT_EQ(acc, values[j]);
  }
}

TEST(DivRound, Examples) {
  EXPECT_EQ(DivRound(BigUnsigned(13), 2), BigUnsigned(3));
  EXPECT_EQ(DivRound(BigUnsigned(14), 2), BigUnsigned(4));
  EXPECT_EQ(DivRound(BigUnsigned(12345), 0), BigUnsigned(12345));
  auto neg = DivRound(BigSigned{BigUnsigned(13), true}, 2);  // -3.25
  EXPECT_EQ(ToMpz(neg), -3);
  auto tie = DivRound(BigSigned{BigUnsigned(14), true}, 2);  // -3.5 rounds up
  EXPECT_EQ(ToMpz(tie), -3);
}

TEST_F(RelinSmall, V1AndV2PreserveAnd) {
  for (int t = 0; t < 1000; ++t) {
    const int a = t & 1, b = (t >> 1) & 1;
    auto d = HomMul(*ctx_, Fresh(Constant(16, a)), Fresh(Constant(16, b)));
    auto r1 = RelinearizeV1(*ctx_, d, v1_);
    auto r2 = RelinearizeV2(*ctx_, d, v2_);
    ASSERT_EQ(r1.degree(), 1u);
    ASSERT_EQ(DecryptDeg1(*ctx_, r1, kp_.sk), Constant(16, a & b));
    ASSERT_EQ(DecryptDeg1(*ctx_, r2, kp_.sk), Constant(16, a & b));
  }
}

TEST_F(RelinSmall, RandomMessagesMatchRingProduct) {
  for (int t = 0; t < 100; ++t) {
    auto m1 = SampleBinaryPoly(16, rng_), m2 = SampleBinaryPoly(16, rng_);
    auto d = HomMul(*ctx_, Fresh(m1), Fresh(m2));
    auto want = DecryptDeg2(*ctx_, d, kp_.sk);
    ASSERT_EQ(want, PlainMul(m1, m2));
    ASSERT_EQ(DecryptDeg1(*ctx_, RelinearizeV1(*ctx_, d, v1_), kp_.sk), want);
    ASSERT_EQ(DecryptDeg1(*ctx_, RelinearizeV2(*ctx_, d, v2_), kp_.sk), want);
  }
}

TEST_F(RelinSmall, ZeroC2LeavesCiphertext) {
  auto ct = Fresh(SampleBinaryPoly(16, rng_));
  auto d = ct;
  d.parts.push_back(RnsPolynomial(ctx_->basis()));
  for (const auto& out : {RelinearizeV1(*ctx_, d, v1_), RelinearizeV2(*ctx_, d, v2_),
                          RelinearizeV1(*ctx_, d, v1_, InnerProduct::kSchoolbook)}) {
    EXPECT_EQ(out.parts[0], ct.parts[0]);
    EXPECT_EQ(out.parts[1], ct.parts[1]);
  }
}

TEST_F(RelinSmall, SchoolbookInnerProductAgrees) {
  for (int t = 0; t < 5; ++t) {
    auto d = HomMul(*ctx_, Fresh(SampleBinaryPoly(16, rng_)), Fresh(SampleBinaryPoly(16, rng_)));
    auto a = RelinearizeV1(*ctx_, d, v1_, InnerProduct::kNtt);
    auto b = RelinearizeV1(*ctx_, d, v1_, InnerProduct::kSchoolbook);
    EXPECT_EQ(a.parts[0], b.parts[0]);
    EXPECT_EQ(a.parts[1], b.parts[1]);
    for (std::size_t i = 0; i < ctx_->basis()->k(); ++i) {
      for (auto x : a.parts[0].channel(i).coeffs) ASSERT_LT(x, ctx_->basis()->moduli()[i]);
    }
  }
}

TEST_F(RelinSmall, V1OperationCounts) {
  auto d = HomMul(*ctx_, Fresh(SampleBinaryPoly(16, rng_)), Fresh(SampleBinaryPoly(16, rng_)));
  const std::uint64_t k = ctx_->basis()->k(), n = 16, log_n = 4, levels = v1_.ell + 1;
  const std::uint64_t ntt = (n / 2) * log_n;
  // Reconstructing c2 for the digit split is charged separately.
  const auto crt = perf::MeasureScope("crt", [&] { return ToBig(d.parts[2]); }).delta.modmul;
  auto m = perf::MeasureScope("relin_v1", [&] { return RelinearizeV1(*ctx_, d, v1_); });
  EXPECT_EQ(m.delta.modmul - crt, k * (levels * (ntt + 2 * n) + 2 * (ntt + n)));
  // Digits weight the key by selection only.
  EXPECT_EQ(m.delta.select, k * levels * n);
  auto s = perf::MeasureScope("relin_v1_schoolbook", [&] {
    return RelinearizeV1(*ctx_, d, v1_, InnerProduct::kSchoolbook);
  });
  // Only the key conversion out of the ntt domain multiplies.
  EXPECT_EQ(s.delta.modmul - crt, k * levels * 2 * (ntt + n));
}

TEST_F(RelinSmall, Errors) {
  auto ct = Fresh(SampleBinaryPoly(16, rng_));
  EXPECT_RAHL_ERROR(RelinearizeV1(*ctx_, ct, v1_), ErrorCode::kDegreeMismatch);
  EXPECT_RAHL_ERROR(RelinearizeV2(*ctx_, ct, v2_), ErrorCode::kDegreeMismatch);
  auto other = FvContext::Create(GenerateParameters(16, 2, 4, 30));
  auto okp = KeyGen(*other, rng_);
  auto foreign = Encrypt(*other, okp.pk, SampleBinaryPoly(16, rng_), rng_);
  auto d = HomMul(*other, foreign, foreign);
  EXPECT_RAHL_ERROR(RelinearizeV1(*ctx_, d, v1_), ErrorCode::kParameterMismatch);
}

TEST_F(RelinSmall, NoiseAfterRelinStaysClose) {
  double sum1 = 0, sum2 = 0, sum_mul = 0;
  for (int t = 0; t < 20; ++t) {
    auto m = Constant(16, 1);
    auto d = HomMul(*ctx_, Fresh(m), Fresh(m));
    sum_mul += NoiseBudget(*ctx_, d, kp_.sk, m);
    sum1 += NoiseBudget(*ctx_, RelinearizeV1(*ctx_, d, v1_), kp_.sk, m);
    sum2 += NoiseBudget(*ctx_, RelinearizeV2(*ctx_, d, v2_), kp_.sk, m);
  }
  EXPECT_LE(sum1 / 20, sum_mul / 20 + 0.5);
  EXPECT_LE(sum2 / 20, sum_mul / 20 + 0.5);
  EXPECT_NEAR(sum1 / 20, sum2 / 20, 2.0);
}

TEST_F(RelinSmall, DepthProbe) {
  std::vector<std::uint8_t> ones(16, 1);
  auto r1 = DepthProbe(*ctx_, kp_, RelinVersion::kV1, &v1_, nullptr, rng_, ones);
  auto r2 = DepthProbe(*ctx_, kp_, RelinVersion::kV2, nullptr, &v2_, rng_, ones);
  EXPECT_GE(r1.depth, 10u);
  EXPECT_GE(r2.depth, 10u);
  EXPECT_EQ(r1.budgets.size(), r1.depth);
  for (std::size_t i = 1; i < r1.budgets.size(); ++i) EXPECT_LT(r1.budgets[i], r1.budgets[i - 1]);
  auto capped = DepthProbe(*ctx_, kp_, RelinVersion::kV2, nullptr, &v2_, rng_, ones, 3);
  EXPECT_EQ(capped.depth, 3u);
  EXPECT_RAHL_ERROR(DepthProbe(*ctx_, kp_, RelinVersion::kV1, nullptr, &v2_, rng_, ones),
                    ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace rahl
