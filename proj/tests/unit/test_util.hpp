// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rahl/bigint.hpp"
#include "rahl/error.hpp"

#define EXPECT_RAHL_ERROR(stmt, expected_code)                                   \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << "no exception from " #stmt;                               \
    } catch (const ::rahl::Error& e) {                                           \
      EXPECT_EQ(e.code(), expected_code) << e.what();                            \
    }                                                                            \
  } while (0)

namespace rahl::testing {

inline mpz_class ToMpz(const BigUnsigned& x) { return mpz_class(x.ToDecimal()); }

inline mpz_class ToMpz(const BigSigned& x) {
  mpz_class m = ToMpz(x.mag);
  return x.negative ? mpz_class(-m) : m;
}

inline BigUnsigned FromMpz(const mpz_class& x) { return BigUnsigned::FromDecimal(x.get_str()); }

inline mpz_class Product(const std::vector<std::uint32_t>& moduli) {
  mpz_class q = 1;
  for (auto m : moduli) q *= m;
  return q;
}

// Uniform in [0, bound) from a seeded GMP state.
inline mpz_class RandomBelow(gmp_randclass& r, const mpz_class& bound) { return r.get_z_range(bound); }

inline std::uint64_t TrialDivisionGcd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t best = 1;
  for (std::uint64_t d = 1; d <= std::min(a, b); ++d) {
    if (a % d == 0 && b % d == 0) best = d;
  }
  return best;
}

inline bool BruteIsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> PrimesBelow(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p < limit; ++p) {
    if (BruteIsPrime(p)) out.push_back(p);
  }
  return out;
}

// Negacyclic product over Z with exact big integers.
inline std::vector<mpz_class> NegacyclicZ(const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b) {
  const std::size_t n = a.size();
  std::vector<mpz_class> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i + j < n) {
        out[i + j] += a[i] * b[j];
      } else {
        out[i + j - n] -= a[i] * b[j];
      }
    }
  }
  return out;
}

inline mpz_class ModPositive(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace rahl::testing
