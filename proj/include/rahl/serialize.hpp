// SPDX-License-Identifier: Apache-2.0
//
// Binary container shared by keys and ciphertexts:
//   "RAHL" | version u16 | fingerprint[32] | kind u8 | k u16 | n u32 | payload
// All integers little-endian. Payload is channel-major u32 residues in the
// coefficient domain; secret keys pack their bits LSB-first.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rahl/fv.hpp"
#include "rahl/relin.hpp"

namespace rahl {

inline constexpr std::uint16_t kFormatVersion = 1;

enum class ArtifactKind : std::uint8_t {
  kSecretKey = 0x00,
  kCiphertextDeg1 = 0x01,
  kCiphertextDeg2 = 0x02,
  kPublicKey = 0x40,
  kRelinV1 = 0x81,
  kRelinV2 = 0x82,
};

void WriteCiphertext(std::ostream& os, const FvContext& ctx, const Ciphertext& ct);
void WriteSecretKey(std::ostream& os, const FvContext& ctx, const SecretKey& sk);
void WritePublicKey(std::ostream& os, const FvContext& ctx, const PublicKey& pk);
void WriteRelinV1(std::ostream& os, const FvContext& ctx, const RelinKeysV1& keys);
void WriteRelinV2(std::ostream& os, const FvContext& ctx, const RelinKeysV2& keys);

// Format on malformed input, ParameterMismatch on a fingerprint mismatch.
Ciphertext ReadCiphertext(std::istream& is, const FvContext& ctx);
SecretKey ReadSecretKey(std::istream& is, const FvContext& ctx);
PublicKey ReadPublicKey(std::istream& is, const FvContext& ctx);
RelinKeysV1 ReadRelinV1(std::istream& is, const FvContext& ctx);
RelinKeysV2 ReadRelinV2(std::istream& is, const FvContext& ctx);

// Kind byte of a serialized artifact without consuming the payload.
ArtifactKind PeekKind(const std::string& path);

// File helpers.
void SaveFile(const std::string& path, const FvContext& ctx, const Ciphertext& ct);
void SaveFile(const std::string& path, const FvContext& ctx, const SecretKey& sk);
void SaveFile(const std::string& path, const FvContext& ctx, const PublicKey& pk);
void SaveFile(const std::string& path, const FvContext& ctx, const RelinKeysV1& keys);
void SaveFile(const std::string& path, const FvContext& ctx, const RelinKeysV2& keys);
Ciphertext LoadCiphertext(const std::string& path, const FvContext& ctx);
SecretKey LoadSecretKey(const std::string& path, const FvContext& ctx);
PublicKey LoadPublicKey(const std::string& path, const FvContext& ctx);
RelinKeysV1 LoadRelinV1(const std::string& path, const FvContext& ctx);
RelinKeysV2 LoadRelinV2(const std::string& path, const FvContext& ctx);

std::string ToBytes(const FvContext& ctx, const Ciphertext& ct);

}  // namespace rahl
