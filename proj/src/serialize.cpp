// SPDX-License-Identifier: Apache-2.0

#include "rahl/serialize.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rahl/error.hpp"

namespace rahl {
namespace {

constexpr std::array<char, 4> kMagic{'R', 'A', 'H', 'L'};

template <typename T>
void PutLe(std::ostream& os, T v) {
  char b[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, sizeof(T));
}

template <typename T>
T GetLe(std::istream& is) {
  unsigned char b[sizeof(T)];
  is.read(reinterpret_cast<char*>(b), sizeof(T));
  RAHL_CHECK(is.gcount() == static_cast<std::streamsize>(sizeof(T)), ErrorCode::kFormat,
             "truncated input");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return v;
}

struct Header {
  Fingerprint fingerprint{};
  ArtifactKind kind{};
  std::uint16_t k = 0;
  std::uint32_t n = 0;
};

void WriteHeader(std::ostream& os, const FvContext& ctx, ArtifactKind kind, std::size_t k) {
  os.write(kMagic.data(), kMagic.size());
  PutLe<std::uint16_t>(os, kFormatVersion);
  os.write(reinterpret_cast<const char*>(ctx.fingerprint().data()), 32);
  PutLe<std::uint8_t>(os, static_cast<std::uint8_t>(kind));
  PutLe<std::uint16_t>(os, static_cast<std::uint16_t>(k));
  PutLe<std::uint32_t>(os, static_cast<std::uint32_t>(ctx.n()));
}

Header ReadHeader(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  RAHL_CHECK(is.gcount() == 4 && magic == kMagic, ErrorCode::kFormat, "bad magic");
  const auto version = GetLe<std::uint16_t>(is);
  RAHL_CHECK(version == kFormatVersion, ErrorCode::kFormat,
             "unsupported format version " + std::to_string(version));
  Header h;
  is.read(reinterpret_cast<char*>(h.fingerprint.data()), 32);
  RAHL_CHECK(is.gcount() == 32, ErrorCode::kFormat, "truncated header");
  h.kind = static_cast<ArtifactKind>(GetLe<std::uint8_t>(is));
  h.k = GetLe<std::uint16_t>(is);
  h.n = GetLe<std::uint32_t>(is);
  return h;
}

Header ExpectHeader(std::istream& is, const FvContext& ctx, ArtifactKind kind, std::size_t k) {
  Header h = ReadHeader(is);
  RAHL_CHECK(h.kind == kind, ErrorCode::kFormat,
             "unexpected artifact kind " + std::to_string(static_cast<int>(h.kind)));
  RAHL_CHECK(h.fingerprint == ctx.fingerprint(), ErrorCode::kParameterMismatch,
             "artifact was produced under different parameters");
  RAHL_CHECK(h.k == k && h.n == ctx.n(), ErrorCode::kFormat, "header dimensions do not match");
  return h;
}

void WritePoly(std::ostream& os, const RnsPolynomial& p) {
  RAHL_CHECK(p.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "serialization writes the coefficient domain");
  std::vector<char> buf;
  for (const auto& ch : p.channels()) {
    buf.resize(ch.coeffs.size() * 4);
    for (std::size_t j = 0; j < ch.coeffs.size(); ++j) {
      for (int b = 0; b < 4; ++b) buf[4 * j + b] = static_cast<char>((ch.coeffs[j] >> (8 * b)) & 0xff);
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

RnsPolynomial ReadPoly(std::istream& is, const BasisPtr& basis) {
  RnsPolynomial p(basis);
  std::vector<unsigned char> buf(basis->n() * 4);
  for (auto& ch : p.channels()) {
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    RAHL_CHECK(is.gcount() == static_cast<std::streamsize>(buf.size()), ErrorCode::kFormat,
               "truncated coefficient data");
    for (std::size_t j = 0; j < ch.coeffs.size(); ++j) {
      std::uint32_t v = 0;
      for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(buf[4 * j + b]) << (8 * b);
      RAHL_CHECK(v < ch.q, ErrorCode::kFormat, "residue not below its modulus");
      ch.coeffs[j] = v;
    }
  }
  return p;
}

void ExpectEnd(std::istream& is) {
  is.peek();
  RAHL_CHECK(is.eof(), ErrorCode::kFormat, "trailing bytes after artifact");
}

}  // namespace

void WriteCiphertext(std::ostream& os, const FvContext& ctx, const Ciphertext& ct) {
  RAHL_CHECK(ct.degree() == 1 || ct.degree() == 2, ErrorCode::kDegreeMismatch, "degree");
  RAHL_CHECK(ct.fingerprint == ctx.fingerprint(), ErrorCode::kParameterMismatch,
             "ciphertext does not match the parameters");
  WriteHeader(os, ctx, static_cast<ArtifactKind>(ct.degree()), ctx.basis()->k());
  for (const auto& p : ct.parts) WritePoly(os, p);
}

Ciphertext ReadCiphertext(std::istream& is, const FvContext& ctx) {
  Header h = ReadHeader(is);
  RAHL_CHECK(h.kind == ArtifactKind::kCiphertextDeg1 || h.kind == ArtifactKind::kCiphertextDeg2,
             ErrorCode::kFormat, "not a ciphertext");
  RAHL_CHECK(h.fingerprint == ctx.fingerprint(), ErrorCode::kParameterMismatch,
             "ciphertext was produced under different parameters");
  RAHL_CHECK(h.k == ctx.basis()->k() && h.n == ctx.n(), ErrorCode::kFormat,
             "header dimensions do not match");
  Ciphertext ct;
  ct.fingerprint = h.fingerprint;
  const int parts = static_cast<int>(h.kind) + 1;
  for (int i = 0; i < parts; ++i) ct.parts.push_back(ReadPoly(is, ctx.basis()));
  ExpectEnd(is);
  return ct;
}

void WriteSecretKey(std::ostream& os, const FvContext& ctx, const SecretKey& sk) {
  RAHL_CHECK(sk.s.size() == ctx.n(), ErrorCode::kDegreeMismatch, "secret key length");
  WriteHeader(os, ctx, ArtifactKind::kSecretKey, 0);
  std::vector<char> packed((ctx.n() + 7) / 8, 0);
  for (std::size_t j = 0; j < sk.s.size(); ++j) {
    if (sk.s[j]) packed[j / 8] = static_cast<char>(packed[j / 8] | (1 << (j % 8)));
  }
  os.write(packed.data(), static_cast<std::streamsize>(packed.size()));
}

SecretKey ReadSecretKey(std::istream& is, const FvContext& ctx) {
  ExpectHeader(is, ctx, ArtifactKind::kSecretKey, 0);
  std::vector<unsigned char> packed((ctx.n() + 7) / 8);
  is.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
  RAHL_CHECK(is.gcount() == static_cast<std::streamsize>(packed.size()), ErrorCode::kFormat,
             "truncated secret key");
  SecretKey sk;
  sk.s.resize(ctx.n());
  for (std::size_t j = 0; j < sk.s.size(); ++j) sk.s[j] = (packed[j / 8] >> (j % 8)) & 1u;
  ExpectEnd(is);
  return sk;
}

void WritePublicKey(std::ostream& os, const FvContext& ctx, const PublicKey& pk) {
  WriteHeader(os, ctx, ArtifactKind::kPublicKey, ctx.basis()->k());
  WritePoly(os, pk.b);
  WritePoly(os, pk.a);
}

PublicKey ReadPublicKey(std::istream& is, const FvContext& ctx) {
  ExpectHeader(is, ctx, ArtifactKind::kPublicKey, ctx.basis()->k());
  PublicKey pk;
  pk.b = ReadPoly(is, ctx.basis());
  pk.a = ReadPoly(is, ctx.basis());
  ExpectEnd(is);
  return pk;
}

void WriteRelinV1(std::ostream& os, const FvContext& ctx, const RelinKeysV1& keys) {
  WriteHeader(os, ctx, ArtifactKind::kRelinV1, ctx.basis()->k());
  for (const auto& level : keys.levels) {
    for (const auto& part : level) {
      WritePoly(os, part.domain() == Domain::kNtt ? FromNtt(part) : part);
    }
  }
}

RelinKeysV1 ReadRelinV1(std::istream& is, const FvContext& ctx) {
  ExpectHeader(is, ctx, ArtifactKind::kRelinV1, ctx.basis()->k());
  RelinKeysV1 keys;
  keys.T = ctx.params().relin_base;
  keys.ell = ctx.params().ell;
  keys.levels.reserve(keys.ell + 1);
  for (unsigned i = 0; i <= keys.ell; ++i) {
    RnsPolynomial b = ToNtt(ReadPoly(is, ctx.basis()));
    RnsPolynomial a = ToNtt(ReadPoly(is, ctx.basis()));
    keys.levels.push_back({std::move(b), std::move(a)});
  }
  ExpectEnd(is);
  return keys;
}

void WriteRelinV2(std::ostream& os, const FvContext& ctx, const RelinKeysV2& keys) {
  WriteHeader(os, ctx, ArtifactKind::kRelinV2, ctx.relin_basis()->k());
  WritePoly(os, keys.key[0]);
  WritePoly(os, keys.key[1]);
}

RelinKeysV2 ReadRelinV2(std::istream& is, const FvContext& ctx) {
  ExpectHeader(is, ctx, ArtifactKind::kRelinV2, ctx.relin_basis()->k());
  RnsPolynomial k0 = ReadPoly(is, ctx.relin_basis());
  RnsPolynomial k1 = ReadPoly(is, ctx.relin_basis());
  ExpectEnd(is);
  return RelinKeysV2FromKey(ctx, {std::move(k0), std::move(k1)});
}

ArtifactKind PeekKind(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  RAHL_CHECK(in.good(), ErrorCode::kFormat, "cannot open " + path);
  return ReadHeader(in).kind;
}

namespace {

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  RAHL_CHECK(out.good(), ErrorCode::kFormat, "cannot write " + path);
  return out;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  RAHL_CHECK(in.good(), ErrorCode::kFormat, "cannot open " + path);
  return in;
}

}  // namespace

void SaveFile(const std::string& path, const FvContext& ctx, const Ciphertext& v) {
  auto out = OpenOut(path);
  WriteCiphertext(out, ctx, v);
}
void SaveFile(const std::string& path, const FvContext& ctx, const SecretKey& v) {
  auto out = OpenOut(path);
  WriteSecretKey(out, ctx, v);
}
void SaveFile(const std::string& path, const FvContext& ctx, const PublicKey& v) {
  auto out = OpenOut(path);
  WritePublicKey(out, ctx, v);
}
void SaveFile(const std::string& path, const FvContext& ctx, const RelinKeysV1& v) {
  auto out = OpenOut(path);
  WriteRelinV1(out, ctx, v);
}
void SaveFile(const std::string& path, const FvContext& ctx, const RelinKeysV2& v) {
  auto out = OpenOut(path);
  WriteRelinV2(out, ctx, v);
}

Ciphertext LoadCiphertext(const std::string& path, const FvContext& ctx) {
  auto in = OpenIn(path);
  return ReadCiphertext(in, ctx);
}
SecretKey LoadSecretKey(const std::string& path, const FvContext& ctx) {
  auto in = OpenIn(path);
  return ReadSecretKey(in, ctx);
}
PublicKey LoadPublicKey(const std::string& path, const FvContext& ctx) {
  auto in = OpenIn(path);
  return ReadPublicKey(in, ctx);
}
RelinKeysV1 LoadRelinV1(const std::string& path, const FvContext& ctx) {
  auto in = OpenIn(path);
  return ReadRelinV1(in, ctx);
}
RelinKeysV2 LoadRelinV2(const std::string& path, const FvContext& ctx) {
  auto in = OpenIn(path);
  return ReadRelinV2(in, ctx);
}

std::string ToBytes(const FvContext& ctx, const Ciphertext& ct) {
  std::ostringstream os(std::ios::binary);
  WriteCiphertext(os, ctx, ct);
  return os.str();
}

}  // namespace rahl
