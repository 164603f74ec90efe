// SPDX-License-Identifier: Apache-2.0
//
// Arbitrary-precision unsigned integers on 32-bit limbs, sized for the
// ~1200-bit composite moduli of the scheme and the ~7000-bit products that
// appear during exact tensoring.

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rahl {

class BigUnsigned {
 public:
  using Limb = std::uint32_t;
  static constexpr int kLimbBits = 32;

  BigUnsigned() = default;
  BigUnsigned(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  static BigUnsigned FromLimbs(std::vector<Limb> limbs);
  static BigUnsigned FromDecimal(std::string_view s);
  static BigUnsigned Pow2(unsigned s);

  std::string ToDecimal() const;
  std::string ToHex() const;

  bool IsZero() const { return limbs_.empty(); }
  bool IsOdd() const { return !limbs_.empty() && (limbs_[0] & 1u); }
  unsigned BitLength() const;
  bool Bit(unsigned i) const;
  std::span<const Limb> limbs() const { return limbs_; }
  std::size_t LimbCount() const { return limbs_.size(); }
  Limb LimbAt(std::size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }

  // Throws OutOfRange if the value does not fit.
  std::uint64_t ToU64() const;
  // Approximate log2; -inf for zero.
  double Log2() const;

  friend std::strong_ordering operator<=>(const BigUnsigned& a, const BigUnsigned& b);
  friend bool operator==(const BigUnsigned& a, const BigUnsigned& b) = default;

  BigUnsigned& operator+=(const BigUnsigned& o);
  // Throws OutOfRange on underflow.
  BigUnsigned& operator-=(const BigUnsigned& o);
  BigUnsigned& operator<<=(unsigned s);
  BigUnsigned& operator>>=(unsigned s);

  friend BigUnsigned operator+(BigUnsigned a, const BigUnsigned& b) { return a += b; }
  friend BigUnsigned operator-(BigUnsigned a, const BigUnsigned& b) { return a -= b; }
  friend BigUnsigned operator<<(BigUnsigned a, unsigned s) { return a <<= s; }
  friend BigUnsigned operator>>(BigUnsigned a, unsigned s) { return a >>= s; }
  friend BigUnsigned operator*(const BigUnsigned& a, const BigUnsigned& b);
  friend BigUnsigned operator/(const BigUnsigned& a, const BigUnsigned& b) {
    return DivMod(a, b).first;
  }
  friend BigUnsigned operator%(const BigUnsigned& a, const BigUnsigned& b) {
    return DivMod(a, b).second;
  }

  // this += m * c
  void AddMulSmall(const BigUnsigned& m, Limb c);
  BigUnsigned MulSmall(Limb c) const;
  // Returns {quotient, remainder}; ZeroModulus on d == 0.
  static std::pair<BigUnsigned, Limb> DivModSmall(const BigUnsigned& a, Limb d);
  static std::pair<BigUnsigned, BigUnsigned> DivMod(const BigUnsigned& a, const BigUnsigned& d);

  // Value modulo 2^s.
  BigUnsigned LowBits(unsigned s) const;

 private:
  void Normalize();
  std::vector<Limb> limbs_;  // little-endian, no high zero limbs
};

// Sign-magnitude wrapper for the few places that need negative integers
// (negacyclic wrap-around, centred representatives, signed rounding).
struct BigSigned {
  BigUnsigned mag;
  bool negative = false;

  bool IsZero() const { return mag.IsZero(); }

  // x mod m in [0, m).
  BigUnsigned Mod(const BigUnsigned& m) const;
  // floor(x / 2^s)
  BigSigned FloorShift(unsigned s) const;
  // floor(x / d) for d > 0.
  BigSigned FloorDiv(const BigUnsigned& d) const;

  friend BigSigned operator+(const BigSigned& a, const BigSigned& b);
  friend BigSigned operator-(const BigSigned& a, const BigSigned& b) {
    return a + BigSigned{b.mag, !b.negative && !b.mag.IsZero()};
  }
};

// Representative of x (taken mod m, x < m) in (-m/2, m/2].
BigSigned Centered(const BigUnsigned& x, const BigUnsigned& m);

}  // namespace rahl
