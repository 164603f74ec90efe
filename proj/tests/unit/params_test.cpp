// SPDX-License-Identifier: Apache-2.0

#include "rahl/params.hpp"

#include <cstdio>
#include <filesystem>

#include "rahl/primes.hpp"
#include "test_util.hpp"

namespace rahl {
namespace {

std::uint64_t PowMod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  unsigned __int128 r = 1, x = b % q;
  for (; e; e >>= 1) {
    if (e & 1) r = r * x % q;
    x = x * x % q;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Order(std::uint64_t a, std::uint64_t q) {
  std::uint64_t x = a % q;
  for (std::uint64_t k = 1; k < q; ++k) {
    if (x == 1) return k;
    x = x * a % q;
  }
  return 0;
}

TEST(GenerateParameters, PaperScale) {
  const auto p = GenerateParameters(1024, 2, 40, 30);
  EXPECT_EQ(p.k(), 40u);
  const unsigned bits = p.Q.BitLength();
  EXPECT_GE(bits, 1160u);
  EXPECT_LE(bits, 1240u);
  EXPECT_EQ(p.ell, bits - 1);
  EXPECT_NO_THROW(p.Validate());
  for (std::size_t i = 1; i < p.k(); ++i) EXPECT_GT(p.moduli[i - 1], p.moduli[i]);
}

TEST(GenerateParameters, SmallExamples) {
  EXPECT_EQ(GenerateParameters(2, 2, 1, 5).moduli, std::vector<std::uint32_t>{29});
  EXPECT_EQ(GenerateParameters(4, 2, 1, 5).moduli, std::vector<std::uint32_t>{17});
}

TEST(GenerateParameters, DescendingEnumeration) {
  const auto p = GenerateParameters(16, 2, 3, 20);
  std::vector<std::uint32_t> expected;
  for (std::uint32_t c = (1u << 20) - 1; expected.size() < 3; --c) {
    if (testing::BruteIsPrime(c) && c % 32 == 1) expected.push_back(c);
  }
  EXPECT_EQ(p.moduli, expected);
}

TEST(GenerateParameters, DerivedFields) {
  const auto p = GenerateParameters(16, 2, 3, 30);
  const mpz_class Q = testing::Product(p.moduli);
  EXPECT_EQ(testing::ToMpz(p.Q), Q);
  EXPECT_EQ(testing::ToMpz(p.delta), mpz_class(Q / 2));
  EXPECT_EQ(p.ell, mpz_sizeinbase(Q.get_mpz_t(), 2) - 1);
  mpz_class cube = Q * Q * Q;
  mpz_class pw = 1;
  pw <<= p.p_log2;
  EXPECT_GE(pw, cube);
  pw >>= 1;
  EXPECT_LT(pw, cube);
}

TEST(GenerateParameters, Errors) {
  EXPECT_RAHL_ERROR(GenerateParameters(1024, 2, 5, 5), ErrorCode::kInsufficientPrimes);
  EXPECT_RAHL_ERROR(GenerateParameters(12, 2, 1, 20), ErrorCode::kInvalidDegree);
}

TEST(GenerateParameters, Deterministic) {
  EXPECT_EQ(GenerateParameters(256, 2, 8, 30, 3.2, 99), GenerateParameters(256, 2, 8, 30, 3.2, 99));
}

TEST(FindPrimitiveRoot, Examples) {
  EXPECT_EQ(FindPrimitiveRoot(7), 3u);
  EXPECT_EQ(FindPrimitiveRoot(17), 3u);
  EXPECT_EQ(FindPrimitiveRoot(2), 1u);
  EXPECT_RAHL_ERROR(FindPrimitiveRoot(15), ErrorCode::kNotPrime);
  for (std::uint32_t q : {5u, 11u, 13u, 97u, 12289u}) {
    std::uint32_t smallest = 2;
    while (Order(smallest, q) != q - 1) ++smallest;
    EXPECT_EQ(FindPrimitiveRoot(q), smallest);
  }
}

TEST(ComputeRootOfUnity, Examples) {
  const std::uint32_t w = ComputeRootOfUnity(17, 4);
  EXPECT_EQ(PowMod(w, 4, 17), 1u);
  EXPECT_NE(PowMod(w, 2, 17), 1u);
  EXPECT_EQ(w, 13u);
  const std::uint32_t w5 = ComputeRootOfUnity(5, 4);
  EXPECT_TRUE(w5 == 2 || w5 == 3);
  EXPECT_EQ(ComputeRootOfUnity(1073741441, 1), 1u);
  EXPECT_RAHL_ERROR(ComputeRootOfUnity(17, 5), ErrorCode::kNoRoot);
}

TEST(ModulusContext, Invariants) {
  const auto p = GenerateParameters(64, 2, 4, 30);
  for (std::uint32_t q : p.moduli) {
    const auto c = ModulusContext::Create(q, 64);
    EXPECT_EQ(PowMod(c.omega, 64, q), 1u);
    for (std::uint64_t i = 1; i < 64; ++i) ASSERT_NE(PowMod(c.omega, i, q), 1u);
    EXPECT_EQ(static_cast<std::uint64_t>(c.psi) * c.psi % q, c.omega);
    EXPECT_EQ(PowMod(c.psi, 128, q), 1u);
    EXPECT_EQ(PowMod(c.psi, 64, q), q - 1);
    EXPECT_EQ(static_cast<std::uint64_t>(c.n_inv) * 64 % q, 1u);
    EXPECT_EQ(static_cast<std::uint64_t>(c.omega) * c.omega_inv % q, 1u);
    EXPECT_EQ(static_cast<std::uint64_t>(c.psi) * c.psi_inv % q, 1u);
    EXPECT_EQ(c.bitwidth, 30u);
  }
}

TEST(ParameterSet, ValidateCatchesBrokenSets) {
  auto p = GenerateParameters(16, 2, 3, 30);
  auto dup = p;
  dup.moduli[1] = dup.moduli[0];
  dup.Finalize();
  EXPECT_RAHL_ERROR(dup.Validate(), ErrorCode::kInvalidArgument);
  auto stale = p;
  stale.moduli.pop_back();
  EXPECT_THROW(stale.Validate(), Error);
  auto bad_n = p;
  bad_n.n = 24;
  EXPECT_RAHL_ERROR(bad_n.Validate(), ErrorCode::kInvalidDegree);
}

TEST(ParameterSet, TextRoundTrip) {
  auto p = GenerateParameters(32, 2, 4, 28, 2.5, 1234);
  const std::string text = p.ToText();
  EXPECT_NE(text.find("moduli="), std::string::npos);
  EXPECT_EQ(ParameterSet::FromText(text), p);
  EXPECT_EQ(ParameterSet::FromText(text).Fingerprint(), p.Fingerprint());
  auto q = p;
  q.sigma = 3.2;
  EXPECT_NE(q.Fingerprint(), p.Fingerprint());
  EXPECT_RAHL_ERROR(ParameterSet::FromText("n=16\nt=2\n"), ErrorCode::kFormat);
  EXPECT_RAHL_ERROR(ParameterSet::FromText("garbage"), ErrorCode::kFormat);
}

TEST(ParameterSet, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "rahl_params_test.params";
  auto p = GenerateParameters(16, 2, 3, 30, 3.2, 7);
  WriteParamFile(p, path.string());
  EXPECT_EQ(ReadParamFile(path.string()), p);
  std::filesystem::remove(path);
  EXPECT_RAHL_ERROR(ReadParamFile(path.string()), ErrorCode::kFormat);
}

TEST(ExtensionPrimes, CoverTarget) {
  const auto p = GenerateParameters(16, 2, 3, 30);
  const BigUnsigned target = p.Q * p.Q * BigUnsigned(64);
  const auto ext = ExtensionPrimes(16, p.Q, target, p.moduli);
  mpz_class prod = testing::ToMpz(p.Q);
  for (auto q : ext) {
    EXPECT_EQ(q % 32, 1u);
    EXPECT_TRUE(IsPrime(q));
    EXPECT_EQ(std::count(p.moduli.begin(), p.moduli.end(), q), 0);
    prod *= q;
  }
  EXPECT_GT(prod, testing::ToMpz(target));
}

}  // namespace
}  // namespace rahl
