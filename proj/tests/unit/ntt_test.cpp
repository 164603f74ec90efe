// SPDX-License-Identifier: Apache-2.0

#include "rahl/ntt.hpp"

#include <random>

#include "rahl/perf.hpp"
#include "test_util.hpp"

namespace rahl {
namespace {

std::vector<std::uint32_t> RandomVec(std::size_t n, std::uint32_t q, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % q);
  return v;
}

std::vector<std::uint32_t> SchoolbookOracle(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b, std::uint64_t q) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t p = static_cast<std::uint64_t>(a[i]) * b[j] % q;
      if (i + j < n) {
        acc[i + j] = (acc[i + j] + p) % q;
      } else {
        acc[i + j - n] = (acc[i + j - n] + q - p) % q;
      }
    }
  }
  return {acc.begin(), acc.end()};
}

TEST(Ntt, DeltaAndConstant) {
  auto ctx = ModulusContext::Create(17, 4);
  ChannelPolynomial delta(17, {1, 0, 0, 0});
  EXPECT_EQ(NttForward(delta, ctx).coeffs, (std::vector<std::uint32_t>{1, 1, 1, 1}));
  ChannelPolynomial c(17, {5, 5, 5, 5});
  EXPECT_EQ(NttForward(c, ctx).coeffs, (std::vector<std::uint32_t>{3, 0, 0, 0}));
  ChannelPolynomial ones(17, {1, 1, 1, 1}, Domain::kNtt);
  EXPECT_EQ(NttInverse(ones, ctx).coeffs, (std::vector<std::uint32_t>{1, 0, 0, 0}));
}

TEST(Ntt, SmallExampleMatchesDirectSum) {
  auto ctx = ModulusContext::Create(17, 4);
  ChannelPolynomial x(17, {1, 2, 3, 4});
  EXPECT_EQ(NttForward(x, ctx).coeffs, NaiveTransform(x.coeffs, ctx.omega, 17));
  // Independent direct sum with the named root 13.
  std::vector<std::uint32_t> want(4);
  for (std::uint64_t i = 0; i < 4; ++i) {
    std::uint64_t s = 0, w = 1;
    std::uint64_t wi = 1;
    for (std::uint64_t e = 0; e < i; ++e) wi = wi * ctx.omega % 17;
    for (std::uint64_t k = 0; k < 4; ++k) {
      s = (s + x.coeffs[k] * w) % 17;
      w = w * wi % 17;
    }
    want[i] = static_cast<std::uint32_t>(s);
  }
  EXPECT_EQ(NttForward(x, ctx).coeffs, want);
}

TEST(Ntt, InverseMatchesDirectSumAtN8) {
  auto ctx = ModulusContext::Create(17, 8);
  std::mt19937_64 rng(1);
  ChannelPolynomial x(17, RandomVec(8, 17, rng), Domain::kNtt);
  auto raw = NaiveTransform(x.coeffs, ctx.omega_inv, 17);
  for (auto& v : raw) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * ctx.n_inv % 17);
  EXPECT_EQ(NttInverse(x, ctx).coeffs, raw);
}

TEST(Ntt, RoundTripAndLinearity) {
  const auto p = GenerateParameters(256, 2, 3, 30);
  std::mt19937_64 rng(2);
  for (auto q : p.moduli) {
    auto ctx = ModulusContext::Create(q, 256);
    for (int t = 0; t < 1000; ++t) {
      ChannelPolynomial x(q, RandomVec(256, q, rng));
      ASSERT_EQ(NttInverse(NttForward(x, ctx), ctx), x);
    }
    ChannelPolynomial x(q, RandomVec(256, q, rng)), y(q, RandomVec(256, q, rng));
    const std::uint64_t alpha = rng() % q, beta = rng() % q;
    ChannelPolynomial comb(q, std::vector<std::uint32_t>(256));
    for (std::size_t i = 0; i < 256; ++i) {
      comb.coeffs[i] = static_cast<std::uint32_t>((alpha * x.coeffs[i] + beta * y.coeffs[i]) % q);
    }
    auto fx = NttForward(x, ctx), fy = NttForward(y, ctx), fc = NttForward(comb, ctx);
    for (std::size_t i = 0; i < 256; ++i) {
      ASSERT_EQ(fc.coeffs[i], (alpha * fx.coeffs[i] + beta * fy.coeffs[i]) % q);
    }
  }
}

TEST(Ntt, DomainAndChannelChecks) {
  auto ctx = ModulusContext::Create(17, 4);
  ChannelPolynomial x(17, {1, 2, 3, 4}, Domain::kNtt);
  EXPECT_RAHL_ERROR(NttForward(x, ctx), ErrorCode::kDomainMismatch);
  ChannelPolynomial y(17, {1, 2, 3, 4});
  EXPECT_RAHL_ERROR(NttInverse(y, ctx), ErrorCode::kDomainMismatch);
  ChannelPolynomial z(97, {1, 2, 3, 4});
  EXPECT_RAHL_ERROR(NegacyclicMultiply(y, z, ctx), ErrorCode::kChannelMismatch);
}

TEST(Negacyclic, Examples) {
  auto ctx = ModulusContext::Create(5, 2);
  ChannelPolynomial x(5, {0, 1});
  EXPECT_EQ(NegacyclicMultiply(x, x, ctx).coeffs, (std::vector<std::uint32_t>{4, 0}));
  const auto p = GenerateParameters(64, 2, 1, 30);
  auto big = ModulusContext::Create(p.moduli[0], 64);
  std::mt19937_64 rng(3);
  ChannelPolynomial b(p.moduli[0], RandomVec(64, p.moduli[0], rng));
  std::vector<std::uint32_t> one(64, 0);
  one[0] = 1;
  EXPECT_EQ(NegacyclicMultiply(ChannelPolynomial(p.moduli[0], one), b, big), b);
}

TEST(Negacyclic, MatchesSchoolbookAcrossSizes) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 4; n <= 256; n *= 2) {
    for (auto q : GenerateParameters(n, 2, 3, 30).moduli) {
      auto ctx = ModulusContext::Create(q, n);
      for (int t = 0; t < 20; ++t) {
        ChannelPolynomial a(q, RandomVec(n, q, rng)), b(q, RandomVec(n, q, rng));
        const auto want = SchoolbookOracle(a.coeffs, b.coeffs, q);
        ASSERT_EQ(NegacyclicMultiply(a, b, ctx).coeffs, want) << "n=" << n << " q=" << q;
        ASSERT_EQ(SchoolbookNegacyclic(a, b, ctx).coeffs, want);
      }
    }
  }
}

TEST(Negacyclic, ConvolutionTheorem) {
  const auto p = GenerateParameters(32, 2, 1, 30);
  const std::uint32_t q = p.moduli[0];
  auto ctx = ModulusContext::Create(q, 32);
  std::mt19937_64 rng(8);
  std::vector<std::uint32_t> a = RandomVec(32, q, rng), b = RandomVec(32, q, rng);
  auto prod = SchoolbookOracle(a, b, q);
  TwistForwardInPlace(prod, ctx);
  TwistForwardInPlace(a, ctx);
  TwistForwardInPlace(b, ctx);
  for (std::size_t i = 0; i < 32; ++i) {
    ASSERT_EQ(prod[i], static_cast<std::uint64_t>(a[i]) * b[i] % q);
  }
}

TEST(Negacyclic, OperationCounts) {
  std::mt19937_64 rng(6);
  for (std::size_t n = 4; n <= 1024; n *= 2) {
    const std::uint32_t q = GenerateParameters(n, 2, 1, 30).moduli[0];
    auto ctx = ModulusContext::Create(q, n);
    ChannelPolynomial a(q, RandomVec(n, q, rng)), b(q, RandomVec(n, q, rng));
    const unsigned log_n = ctx.log_n;
    auto m = perf::MeasureScope("negacyclic", [&] { return NegacyclicMultiply(a, b, ctx); });
    EXPECT_LE(m.delta.modmul, 3 * (n / 2) * log_n + 4 * n);
    EXPECT_EQ(m.delta.modmul, 3 * (n / 2) * log_n + 4 * n);
    EXPECT_EQ(m.delta.bigmul, 0u);
    if (n <= 256) {
      auto s = perf::MeasureScope("schoolbook", [&] { return SchoolbookNegacyclic(a, b, ctx); });
      EXPECT_EQ(s.delta.modmul, n * n);
    }
  }
}

}  // namespace
}  // namespace rahl
