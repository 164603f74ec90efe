// SPDX-License-Identifier: Apache-2.0

#include "rahl/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "test_util.hpp"

namespace rahl {
namespace {

template <typename W>
std::string Bytes(W&& write) {
  std::ostringstream os(std::ios::binary);
  write(os);
  return os.str();
}

class SerializeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ctx_ = FvContext::Create(GenerateParameters(16, 2, 3, 30));
    kp_ = KeyGen(*ctx_, rng_);
    v1_ = RelinKeyGenV1(*ctx_, kp_.sk, rng_);
    v2_ = RelinKeyGenV2(*ctx_, kp_.sk, rng_);
    ct_ = Encrypt(*ctx_, kp_.pk, SampleBinaryPoly(16, rng_), rng_);
  }
  std::istringstream In(const std::string& s) { return std::istringstream(s, std::ios::binary); }

  Rng rng_{5, "serialize-test"};
  ContextPtr ctx_;
  KeyPair kp_;
  RelinKeysV1 v1_;
  RelinKeysV2 v2_;
  Ciphertext ct_;
};

TEST_F(SerializeTest, RoundTripEveryKind) {
  auto in = In(ToBytes(*ctx_, ct_));
  EXPECT_EQ(ReadCiphertext(in, *ctx_).parts, ct_.parts);

  auto deg2 = HomMul(*ctx_, ct_, ct_);
  in = In(ToBytes(*ctx_, deg2));
  auto back = ReadCiphertext(in, *ctx_);
  EXPECT_EQ(back.degree(), 2u);
  EXPECT_EQ(back.parts, deg2.parts);

  in = In(Bytes([&](std::ostream& os) { WriteSecretKey(os, *ctx_, kp_.sk); }));
  EXPECT_EQ(ReadSecretKey(in, *ctx_).s, kp_.sk.s);

  in = In(Bytes([&](std::ostream& os) { WritePublicKey(os, *ctx_, kp_.pk); }));
  auto pk = ReadPublicKey(in, *ctx_);
  EXPECT_EQ(pk.a, kp_.pk.a);
  EXPECT_EQ(pk.b, kp_.pk.b);

  in = In(Bytes([&](std::ostream& os) { WriteRelinV1(os, *ctx_, v1_); }));
  auto r1 = ReadRelinV1(in, *ctx_);
  ASSERT_EQ(r1.levels.size(), v1_.levels.size());
  for (std::size_t i = 0; i < r1.levels.size(); ++i) {
    EXPECT_EQ(r1.levels[i][0], v1_.levels[i][0]);
    EXPECT_EQ(r1.levels[i][1], v1_.levels[i][1]);
  }

  in = In(Bytes([&](std::ostream& os) { WriteRelinV2(os, *ctx_, v2_); }));
  auto r2 = ReadRelinV2(in, *ctx_);
  EXPECT_EQ(r2.key[0], v2_.key[0]);
  EXPECT_EQ(r2.key_ntt[1], v2_.key_ntt[1]);
}

TEST_F(SerializeTest, HeaderLayout) {
  const std::string b = ToBytes(*ctx_, ct_);
  ASSERT_EQ(b.size(), 4u + 2 + 32 + 1 + 2 + 4 + 2 * 3 * 16 * 4);
  EXPECT_EQ(b.substr(0, 4), "RAHL");
  EXPECT_EQ(static_cast<unsigned char>(b[4]), 1);
  EXPECT_EQ(static_cast<unsigned char>(b[38]), 0x01);
  EXPECT_EQ(static_cast<unsigned char>(b[39]), 3);
  EXPECT_EQ(static_cast<unsigned char>(b[41]), 16);
}

TEST_F(SerializeTest, MalformedInput) {
  const std::string good = ToBytes(*ctx_, ct_);
  std::string bad = good;
  bad[0] = 'X';
  auto in = In(bad);
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *ctx_), ErrorCode::kFormat);
  in = In(good.substr(0, good.size() - 1));
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *ctx_), ErrorCode::kFormat);
  in = In(good.substr(0, 20));
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *ctx_), ErrorCode::kFormat);
  in = In(good + "x");
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *ctx_), ErrorCode::kFormat);
  in = In(good);
  EXPECT_RAHL_ERROR(ReadPublicKey(in, *ctx_), ErrorCode::kFormat);
  std::string big = good;
  for (int i = 0; i < 4; ++i) big[43 + i] = static_cast<char>(0xff);
  in = In(big);
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *ctx_), ErrorCode::kFormat);
}

TEST_F(SerializeTest, FingerprintMismatch) {
  auto params = GenerateParameters(16, 2, 3, 30);
  params.seed = 777;
  auto other = FvContext::Create(params);
  ASSERT_NE(other->fingerprint(), ctx_->fingerprint());
  auto in = In(ToBytes(*ctx_, ct_));
  EXPECT_RAHL_ERROR(ReadCiphertext(in, *other), ErrorCode::kParameterMismatch);
  in = In(Bytes([&](std::ostream& os) { WriteSecretKey(os, *ctx_, kp_.sk); }));
  EXPECT_RAHL_ERROR(ReadSecretKey(in, *other), ErrorCode::kParameterMismatch);
}

TEST_F(SerializeTest, FilesAndPeekKind) {
  const auto dir = std::filesystem::temp_directory_path() / "rahl_serialize_test";
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) { return (dir / name).string(); };
  SaveFile(path("c"), *ctx_, ct_);
  SaveFile(path("sk"), *ctx_, kp_.sk);
  SaveFile(path("pk"), *ctx_, kp_.pk);
  SaveFile(path("r1"), *ctx_, v1_);
  SaveFile(path("r2"), *ctx_, v2_);
  EXPECT_EQ(PeekKind(path("c")), ArtifactKind::kCiphertextDeg1);
  EXPECT_EQ(PeekKind(path("sk")), ArtifactKind::kSecretKey);
  EXPECT_EQ(PeekKind(path("pk")), ArtifactKind::kPublicKey);
  EXPECT_EQ(PeekKind(path("r1")), ArtifactKind::kRelinV1);
  EXPECT_EQ(PeekKind(path("r2")), ArtifactKind::kRelinV2);
  EXPECT_EQ(LoadCiphertext(path("c"), *ctx_).parts, ct_.parts);
  EXPECT_EQ(LoadSecretKey(path("sk"), *ctx_).s, kp_.sk.s);
  EXPECT_EQ(LoadRelinV2(path("r2"), *ctx_).key[1], v2_.key[1]);
  EXPECT_RAHL_ERROR(PeekKind(path("missing")), ErrorCode::kFormat);
  std::filesystem::remove_all(dir);
}

TEST(SerializeDeterminism, SeededRunsAreByteIdentical) {
  auto run = [] {
    auto ctx = FvContext::Create(GenerateParameters(16, 2, 3, 30));
    Rng rng(2024, "keygen");
    auto kp = KeyGen(*ctx, rng);
    auto v2 = RelinKeyGenV2(*ctx, kp.sk, rng);
    Rng enc(2024, "encrypt");
    auto ct = Encrypt(*ctx, kp.pk, std::vector<std::uint8_t>(16, 1), enc);
    return Bytes([&](std::ostream& os) {
      WritePublicKey(os, *ctx, kp.pk);
      WriteRelinV2(os, *ctx, v2);
      WriteCiphertext(os, *ctx, ct);
    });
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace rahl
