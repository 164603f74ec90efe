// SPDX-License-Identifier: Apache-2.0

#include "rahl/perf.hpp"

#include "rahl/fv.hpp"
#include "rahl/ntt.hpp"
#include "test_util.hpp"

namespace rahl {
namespace {

class PerfTest : public ::testing::Test {
 protected:
  void SetUp() override { perf::Registry::Local().Clear(); }
};

TEST_F(PerfTest, PolyAddAtPaperScale) {
  const auto p = GenerateParameters(1024, 2, 40, 30);
  auto basis = RnsBasis::Create(p.moduli, 1024);
  Rng rng(1, "perf");
  auto a = SampleUniformPoly(basis, rng), b = SampleUniformPoly(basis, rng);
  auto m = perf::MeasureScope("poly_add", [&] { return PolyAdd(a, b); });
  EXPECT_EQ(m.delta.modadd, 40960u);
  EXPECT_EQ(m.delta.modmul, 0u);
  EXPECT_EQ(m.result, PolyAdd(a, b));
}

TEST_F(PerfTest, EmptyThunk) {
  auto m = perf::MeasureScope("nothing", [] {});
  EXPECT_TRUE(m.delta.IsZero());
  EXPECT_TRUE(perf::Registry::Local().Contains("nothing"));
  EXPECT_EQ(perf::Registry::Local().Get("nothing").calls, 1u);
}

TEST_F(PerfTest, NestedScopes) {
  auto outer = perf::MeasureScope("outer", [] {
    perf::CountModMul(3);
    perf::MeasureScope("inner_a", [] { perf::CountModMul(5); });
    perf::MeasureScope("inner_b", [] { perf::CountModAdd(7); });
  });
  const auto& reg = perf::Registry::Local();
  EXPECT_EQ(outer.delta.modmul, 8u);
  EXPECT_EQ(outer.delta.modadd, 7u);
  EXPECT_EQ(reg.Get("outer").inclusive,
            reg.Get("inner_a").inclusive + reg.Get("inner_b").inclusive + reg.Get("outer").exclusive);
  EXPECT_EQ(reg.Get("outer").exclusive.modmul, 3u);
}

TEST_F(PerfTest, CompareReport) {
  perf::MeasureScope("x", [] { perf::CountModMul(10); });
  auto same = perf::CompareReport("x", "x");
  EXPECT_DOUBLE_EQ(same.weighted_ratio, 1.0);
  for (const auto& row : same.rows) EXPECT_DOUBLE_EQ(row.ratio, 1.0) << row.counter;
  EXPECT_RAHL_ERROR(perf::CompareReport("x", "missing"), ErrorCode::kUnknownLabel);
  EXPECT_FALSE(same.Text().empty());
  EXPECT_NE(same.Csv().find("weighted"), std::string::npos);
}

TEST_F(PerfTest, SchoolbookVersusNtt) {
  const std::uint32_t q = GenerateParameters(1024, 2, 1, 30).moduli[0];
  auto ctx = ModulusContext::Create(q, 1024);
  Rng rng(2, "perf");
  ChannelPolynomial a(q, std::vector<std::uint32_t>(1024)), b = a;
  for (auto& x : a.coeffs) x = static_cast<std::uint32_t>(rng.Uniform(q));
  for (auto& x : b.coeffs) x = static_cast<std::uint32_t>(rng.Uniform(q));
  perf::MeasureScope("ntt", [&] { return NegacyclicMultiply(a, b, ctx); });
  perf::MeasureScope("schoolbook", [&] { return SchoolbookNegacyclic(a, b, ctx); });
  auto r = perf::CompareReport("ntt", "schoolbook");
  EXPECT_GE(r.weighted_ratio, 20.0);
}

TEST_F(PerfTest, HomMulVersusHomAdd) {
  auto ctx = FvContext::Create(GenerateParameters(1024, 2, 40, 30));
  Rng rng(3, "perf");
  auto kp = KeyGen(*ctx, rng);
  auto c1 = Encrypt(*ctx, kp.pk, SampleBinaryPoly(1024, rng), rng);
  auto c2 = Encrypt(*ctx, kp.pk, SampleBinaryPoly(1024, rng), rng);
  auto add = perf::MeasureScope("he_add", [&] { return HomAdd(c1, c2); });
  auto mul = perf::MeasureScope("he_mul", [&] { return HomMul(*ctx, c1, c2); });
  EXPECT_GE(perf::CompareReport("he_add", "he_mul").weighted_ratio, 10.0);
  // Counting does not perturb the results.
  EXPECT_EQ(add.result.parts, HomAdd(c1, c2).parts);
  EXPECT_EQ(mul.result.parts, HomMul(*ctx, c1, c2).parts);
}

TEST_F(PerfTest, Csv) {
  EXPECT_EQ(perf::CsvHeader().rfind("label,modmul,modadd,shift,select,bigmul,bigadd,wall_ns", 0), 0u);
  perf::MeasureScope("row", [] { perf::CountShift(2); });
  const auto row = perf::CsvRow("row", perf::Registry::Local().Get("row"));
  EXPECT_EQ(row.rfind("row,0,0,2,0,0,0,", 0), 0u);
}

TEST_F(PerfTest, WeightedTotal) {
  perf::OpCounters c{10, 10, 0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(perf::WeightedTotal(c), 11.0);
  EXPECT_DOUBLE_EQ(perf::WeightedTotal(c, perf::Weights{2, 0, 0, 0, 0, 0}), 20.0);
}

}  // namespace
}  // namespace rahl
