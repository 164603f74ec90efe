// SPDX-License-Identifier: Apache-2.0

#include "rahl/sampler.hpp"

#include <cmath>
#include <set>

#include "test_util.hpp"

namespace rahl {
namespace {

TEST(Rng, DeterministicAndStreamSeparated) {
  Rng a(42, "x"), b(42, "x"), c(42, "y"), d(43, "x");
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 600; ++i) {
    va.push_back(a.NextU64());
    vb.push_back(b.NextU64());
    vc.push_back(c.NextU64());
    vd.push_back(d.NextU64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
}

TEST(Rng, UniformRange) {
  Rng r(1, "u");
  for (int i = 0; i < 10000; ++i) EXPECT_LT(r.Uniform(7), 7u);
  const BigUnsigned bound = BigUnsigned::FromDecimal("1000000000000000000000000000007");
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.UniformBig(bound), bound);
  EXPECT_RAHL_ERROR(r.Uniform(0), ErrorCode::kInvalidArgument);
}

TEST(SampleUniformPoly, RangeDeterminismAndChiSquare) {
  const auto p = GenerateParameters(1024, 2, 3, 30);
  auto basis = RnsBasis::Create(p.moduli, 1024);
  Rng r1(5, "uniform"), r2(5, "uniform");
  auto a = SampleUniformPoly(basis, r1);
  EXPECT_EQ(a, SampleUniformPoly(basis, r2));
  constexpr int kBins = 16;
  constexpr int kTrials = 100;  // 102400 samples per channel
  std::vector<std::vector<double>> counts(basis->k(), std::vector<double>(kBins, 0));
  Rng r(6, "uniform");
  for (int t = 0; t < kTrials; ++t) {
    auto poly = SampleUniformPoly(basis, r);
    for (std::size_t i = 0; i < basis->k(); ++i) {
      for (auto x : poly.channel(i).coeffs) {
        ASSERT_LT(x, p.moduli[i]);
        counts[i][static_cast<std::uint64_t>(x) * kBins / p.moduli[i]] += 1;
      }
    }
  }
  const double expected = 1024.0 * kTrials / kBins;
  for (const auto& c : counts) {
    double chi = 0;
    for (double v : c) chi += (v - expected) * (v - expected) / expected;
    EXPECT_LT(chi, 30.58);  // chi-square critical value, 15 dof, alpha = 0.01
  }
}

TEST(SampleBinaryPoly, MeanAndDeterminism) {
  Rng r(7, "bits");
  double ones = 0;
  for (int t = 0; t < 100; ++t) {
    auto m = SampleBinaryPoly(1024, r);
    ASSERT_EQ(m.size(), 1024u);
    for (auto b : m) {
      ASSERT_LE(b, 1);
      ones += b;
    }
  }
  EXPECT_NEAR(ones / 102400.0, 0.5, 0.02);
  Rng a(8, "bits"), b(8, "bits");
  EXPECT_EQ(SampleBinaryPoly(64, a), SampleBinaryPoly(64, b));
}

TEST(GaussianSampler, Statistics) {
  GaussianSampler g(NoiseConfig{3.2, 0});
  EXPECT_EQ(g.tail_bound(), 20);
  Rng r(9, "gauss");
  double sum = 0, sq = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const std::int64_t x = g.Sample(r);
    ASSERT_LE(std::llabs(x), 20);
    sum += static_cast<double>(x);
    sq += static_cast<double>(x * x);
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_GT(var, 0.85 * 3.2 * 3.2);
  EXPECT_LT(var, 1.15 * 3.2 * 3.2);
}

TEST(GaussianSampler, TailBoundAndZeroSigma) {
  GaussianSampler narrow(NoiseConfig{3.2, 2});
  Rng r(10, "gauss");
  std::set<std::int64_t> seen;
  for (int i = 0; i < 5000; ++i) seen.insert(narrow.Sample(r));
  EXPECT_EQ(seen, (std::set<std::int64_t>{-2, -1, 0, 1, 2}));
  GaussianSampler zero(NoiseConfig{0.0, 0});
  for (auto x : SampleGaussianPoly(zero, 256, r)) EXPECT_EQ(x, 0);
  EXPECT_RAHL_ERROR(GaussianSampler(NoiseConfig{-1.0, 0}), ErrorCode::kInvalidArgument);
}

TEST(GaussianSampler, LiftRoundTrip) {
  const auto p = GenerateParameters(256, 2, 3, 30);
  auto basis = RnsBasis::Create(p.moduli, 256);
  GaussianSampler g(NoiseConfig{3.2, 0});
  Rng r(11, "gauss");
  auto e = SampleGaussianPoly(g, 256, r);
  auto lifted = FromSmall(basis, e);
  for (std::size_t j = 0; j < 256; ++j) {
    for (std::size_t i = 0; i < basis->k(); ++i) {
      const std::uint32_t q = p.moduli[i];
      const std::uint32_t want = e[j] < 0 ? q - static_cast<std::uint32_t>(-e[j])
                                          : static_cast<std::uint32_t>(e[j]);
      ASSERT_EQ(lifted.channel(i).coeffs[j], want);
    }
  }
  auto back = ToCentered(lifted);
  for (std::size_t j = 0; j < 256; ++j) EXPECT_EQ(testing::ToMpz(back[j]), e[j]);
}

}  // namespace
}  // namespace rahl
