// SPDX-License-Identifier: Apache-2.0

#include "rahl/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {
namespace {

using Limb = BigUnsigned::Limb;
using Wide = std::uint64_t;

constexpr Limb kDecChunk = 1000000000u;  // 10^9

int Cmp(std::span<const Limb> a, std::span<const Limb> b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

BigUnsigned::BigUnsigned(std::uint64_t v) {
  if (v) {
    limbs_.push_back(static_cast<Limb>(v));
    if (v >> 32) limbs_.push_back(static_cast<Limb>(v >> 32));
  }
}

BigUnsigned BigUnsigned::FromLimbs(std::vector<Limb> limbs) {
  BigUnsigned r;
  r.limbs_ = std::move(limbs);
  r.Normalize();
  return r;
}

BigUnsigned BigUnsigned::FromDecimal(std::string_view s) {
  RAHL_CHECK(!s.empty(), ErrorCode::kFormat, "empty decimal string");
  BigUnsigned r;
  for (char ch : s) {
    RAHL_CHECK(ch >= '0' && ch <= '9', ErrorCode::kFormat, "bad decimal digit");
    BigUnsigned t = r.MulSmall(10);
    t += BigUnsigned(static_cast<std::uint64_t>(ch - '0'));
    r = std::move(t);
  }
  return r;
}

BigUnsigned BigUnsigned::Pow2(unsigned s) {
  BigUnsigned r;
  r.limbs_.assign(s / kLimbBits + 1, 0);
  r.limbs_.back() = Limb{1} << (s % kLimbBits);
  return r;
}

std::string BigUnsigned::ToDecimal() const {
  if (IsZero()) return "0";
  std::vector<Limb> chunks;
  BigUnsigned cur = *this;
  while (!cur.IsZero()) {
    auto [q, r] = DivModSmall(cur, kDecChunk);
    chunks.push_back(r);
    cur = std::move(q);
  }
  std::string out = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out.append(9 - part.size(), '0');
    out += part;
  }
  return out;
}

std::string BigUnsigned::ToHex() const {
  if (IsZero()) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    for (int nib = 7; nib >= 0; --nib) out += kDigits[(limbs_[i] >> (4 * nib)) & 0xF];
  }
  return out.substr(out.find_first_not_of('0'));
}

unsigned BigUnsigned::BitLength() const {
  if (limbs_.empty()) return 0;
  return static_cast<unsigned>((limbs_.size() - 1) * kLimbBits) +
         static_cast<unsigned>(std::bit_width(limbs_.back()));
}

bool BigUnsigned::Bit(unsigned i) const {
  std::size_t li = i / kLimbBits;
  return li < limbs_.size() && ((limbs_[li] >> (i % kLimbBits)) & 1u);
}

std::uint64_t BigUnsigned::ToU64() const {
  RAHL_CHECK(limbs_.size() <= 2, ErrorCode::kOutOfRange, "value exceeds 64 bits");
  return (static_cast<std::uint64_t>(LimbAt(1)) << 32) | LimbAt(0);
}

double BigUnsigned::Log2() const {
  if (IsZero()) return -std::numeric_limits<double>::infinity();
  unsigned bl = BitLength();
  if (bl <= 64) return std::log2(static_cast<double>(ToU64()));
  // Top 64 bits carry all the precision a double can hold.
  BigUnsigned top = *this >> (bl - 64);
  return std::log2(static_cast<double>(top.ToU64())) + (bl - 64);
}

std::strong_ordering operator<=>(const BigUnsigned& a, const BigUnsigned& b) {
  int c = Cmp(a.limbs_, b.limbs_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

void BigUnsigned::Normalize() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUnsigned& BigUnsigned::operator+=(const BigUnsigned& o) {
  perf::CountBigAdd();
  if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
  Wide carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    Wide s = static_cast<Wide>(limbs_[i]) + o.LimbAt(i) + carry;
    limbs_[i] = static_cast<Limb>(s);
    carry = s >> 32;
    if (!carry && i >= o.limbs_.size()) break;
  }
  if (carry) limbs_.push_back(static_cast<Limb>(carry));
  return *this;
}

BigUnsigned& BigUnsigned::operator-=(const BigUnsigned& o) {
  perf::CountBigAdd();
  RAHL_CHECK(Cmp(limbs_, o.limbs_) >= 0, ErrorCode::kOutOfRange, "unsigned subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - o.LimbAt(i) - borrow;
    borrow = d < 0;
    limbs_[i] = static_cast<Limb>(d + (borrow << 32));
    if (!borrow && i >= o.limbs_.size()) break;
  }
  Normalize();
  return *this;
}

BigUnsigned& BigUnsigned::operator<<=(unsigned s) {
  if (IsZero() || s == 0) return *this;
  perf::CountShift();
  unsigned limb_shift = s / kLimbBits;
  unsigned bit_shift = s % kLimbBits;
  std::vector<Limb> out(limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    Wide v = static_cast<Wide>(limbs_[i]) << bit_shift;
    out[i + limb_shift] |= static_cast<Limb>(v);
    out[i + limb_shift + 1] |= static_cast<Limb>(v >> 32);
  }
  limbs_ = std::move(out);
  Normalize();
  return *this;
}

BigUnsigned& BigUnsigned::operator>>=(unsigned s) {
  if (IsZero() || s == 0) return *this;
  perf::CountShift();
  std::size_t limb_shift = s / kLimbBits;
  unsigned bit_shift = s % kLimbBits;
  if (limb_shift >= limbs_.size()) {
    limbs_.clear();
    return *this;
  }
  std::size_t n = limbs_.size() - limb_shift;
  for (std::size_t i = 0; i < n; ++i) {
    Wide v = limbs_[i + limb_shift];
    if (i + limb_shift + 1 < limbs_.size()) v |= static_cast<Wide>(limbs_[i + limb_shift + 1]) << 32;
    limbs_[i] = static_cast<Limb>(v >> bit_shift);
  }
  limbs_.resize(n);
  Normalize();
  return *this;
}

BigUnsigned operator*(const BigUnsigned& a, const BigUnsigned& b) {
  perf::CountBigMul();
  if (a.IsZero() || b.IsZero()) return {};
  std::vector<Limb> out(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    Wide carry = 0;
    Wide ai = a.limbs_[i];
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      Wide t = ai * b.limbs_[j] + out[i + j] + carry;
      out[i + j] = static_cast<Limb>(t);
      carry = t >> 32;
    }
    out[i + b.limbs_.size()] = static_cast<Limb>(carry);
  }
  return BigUnsigned::FromLimbs(std::move(out));
}

void BigUnsigned::AddMulSmall(const BigUnsigned& m, Limb c) {
  perf::CountBigMul();
  if (c == 0 || m.IsZero()) return;
  if (limbs_.size() < m.limbs_.size() + 1) limbs_.resize(m.limbs_.size() + 1, 0);
  Wide carry = 0;
  std::size_t i = 0;
  for (; i < m.limbs_.size(); ++i) {
    Wide t = static_cast<Wide>(m.limbs_[i]) * c + limbs_[i] + carry;
    limbs_[i] = static_cast<Limb>(t);
    carry = t >> 32;
  }
  for (; carry && i < limbs_.size(); ++i) {
    Wide t = static_cast<Wide>(limbs_[i]) + carry;
    limbs_[i] = static_cast<Limb>(t);
    carry = t >> 32;
  }
  if (carry) limbs_.push_back(static_cast<Limb>(carry));
  Normalize();
}

BigUnsigned BigUnsigned::MulSmall(Limb c) const {
  BigUnsigned r;
  r.AddMulSmall(*this, c);
  return r;
}

std::pair<BigUnsigned, Limb> BigUnsigned::DivModSmall(const BigUnsigned& a, Limb d) {
  RAHL_CHECK(d != 0, ErrorCode::kZeroModulus, "division by zero");
  std::vector<Limb> q(a.limbs_.size(), 0);
  Wide rem = 0;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    Wide cur = (rem << 32) | a.limbs_[i];
    q[i] = static_cast<Limb>(cur / d);
    rem = cur % d;
  }
  return {FromLimbs(std::move(q)), static_cast<Limb>(rem)};
}

// Knuth, TAOCP vol. 2, 4.3.1 Algorithm D.
std::pair<BigUnsigned, BigUnsigned> BigUnsigned::DivMod(const BigUnsigned& a,
                                                        const BigUnsigned& d) {
  RAHL_CHECK(!d.IsZero(), ErrorCode::kZeroModulus, "division by zero");
  if (a < d) return {BigUnsigned{}, a};
  if (d.limbs_.size() == 1) {
    auto [q, r] = DivModSmall(a, d.limbs_[0]);
    return {std::move(q), BigUnsigned(r)};
  }
  perf::CountBigMul();
  const std::size_t n = d.limbs_.size();
  const std::size_t m = a.limbs_.size() - n;
  const int s = std::countl_zero(d.limbs_.back());

  std::vector<Limb> v(n), u(a.limbs_.size() + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    Wide w = static_cast<Wide>(d.limbs_[i]) << s;
    if (s && i > 0) w |= d.limbs_[i - 1] >> (32 - s);
    v[i] = static_cast<Limb>(w);
  }
  u[a.limbs_.size()] = s ? static_cast<Limb>(a.limbs_.back() >> (32 - s)) : 0;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    Wide w = static_cast<Wide>(a.limbs_[i]) << s;
    if (s && i > 0) w |= a.limbs_[i - 1] >> (32 - s);
    u[i] = static_cast<Limb>(w);
  }

  std::vector<Limb> q(m + 1, 0);
  const Wide base = Wide{1} << 32;
  for (std::size_t j = m + 1; j-- > 0;) {
    Wide num = (static_cast<Wide>(u[j + n]) << 32) | u[j + n - 1];
    Wide qhat = num / v[n - 1];
    Wide rhat = num % v[n - 1];
    while (qhat >= base || qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= base) break;
    }
    std::int64_t borrow = 0;
    Wide carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Wide p = qhat * v[i] + carry;
      carry = p >> 32;
      std::int64_t t = static_cast<std::int64_t>(u[i + j]) - static_cast<Limb>(p) - borrow;
      borrow = t < 0;
      u[i + j] = static_cast<Limb>(t + (borrow << 32));
    }
    std::int64_t t = static_cast<std::int64_t>(u[j + n]) - static_cast<std::int64_t>(carry) - borrow;
    borrow = t < 0;
    u[j + n] = static_cast<Limb>(t + (borrow << 32));
    if (borrow) {
      --qhat;
      Wide c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        Wide sum = static_cast<Wide>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<Limb>(sum);
        c = sum >> 32;
      }
      u[j + n] = static_cast<Limb>(u[j + n] + c);
    }
    q[j] = static_cast<Limb>(qhat);
  }

  std::vector<Limb> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    Wide w = u[i] >> s;
    if (s) w |= (static_cast<Wide>(u[i + 1]) << (32 - s)) & 0xFFFFFFFFu;
    r[i] = static_cast<Limb>(w);
  }
  return {FromLimbs(std::move(q)), FromLimbs(std::move(r))};
}

BigUnsigned BigUnsigned::LowBits(unsigned s) const {
  std::size_t full = s / kLimbBits;
  if (full >= limbs_.size()) return *this;
  std::vector<Limb> out(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(full) + 1);
  unsigned rem = s % kLimbBits;
  out.back() &= rem ? ((Limb{1} << rem) - 1) : 0;
  return FromLimbs(std::move(out));
}

BigUnsigned BigSigned::Mod(const BigUnsigned& m) const {
  BigUnsigned r = mag % m;
  if (negative && !r.IsZero()) return m - r;
  return r;
}

BigSigned BigSigned::FloorShift(unsigned s) const {
  if (!negative) return {mag >> s, false};
  // floor(-a / 2^s) = -ceil(a / 2^s)
  BigUnsigned q = mag >> s;
  if (!mag.LowBits(s).IsZero()) q += BigUnsigned(1);
  return {q, !q.IsZero()};
}

BigSigned BigSigned::FloorDiv(const BigUnsigned& d) const {
  auto [q, r] = BigUnsigned::DivMod(mag, d);
  if (!negative) return {std::move(q), false};
  if (!r.IsZero()) q += BigUnsigned(1);
  return {q, !q.IsZero()};
}

BigSigned operator+(const BigSigned& a, const BigSigned& b) {
  if (a.negative == b.negative) {
    BigUnsigned s = a.mag + b.mag;
    return {s, a.negative && !s.IsZero()};
  }
  if (a.mag >= b.mag) {
    BigUnsigned d = a.mag - b.mag;
    return {d, a.negative && !d.IsZero()};
  }
  BigUnsigned d = b.mag - a.mag;
  return {d, b.negative && !d.IsZero()};
}

BigSigned Centered(const BigUnsigned& x, const BigUnsigned& m) {
  // x > m/2  <=>  2x > m
  if ((x << 1) > m) return {m - x, true};
  return {x, false};
}

}  // namespace rahl
