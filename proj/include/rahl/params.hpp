// SPDX-License-Identifier: Apache-2.0
//
// Parameter generation: NTT-friendly prime moduli (q = 1 mod 2n), their
// roots of unity and reduction constants, and the derived scheme constants
// (Q, delta, relinearisation base/levels and the power-of-two p).

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rahl/bigint.hpp"
#include "rahl/modred.hpp"

namespace rahl {

// Smallest generator of (Z/qZ)^*. Returns 1 for q == 2. NotPrime otherwise.
std::uint32_t FindPrimitiveRoot(std::uint32_t q);

// Primitive n-th root of unity alpha^((q-1)/n), verified before returning.
// NoRoot if n does not divide q - 1.
std::uint32_t ComputeRootOfUnity(std::uint32_t q, std::uint64_t n);

// Per-modulus constants for one residue channel of degree-n polynomials.
struct ModulusContext {
  std::uint32_t q = 0;
  unsigned bitwidth = 0;
  std::size_t n = 0;
  unsigned log_n = 0;
  BarrettContext barrett;
  FoldedBarrettContext folded;
  std::uint32_t omega = 0;
  std::uint32_t psi = 0;
  std::uint32_t omega_inv = 0;
  std::uint32_t psi_inv = 0;
  std::uint32_t n_inv = 0;
  std::vector<bool> fermat_bits;  // q - 2, MSB first

  // omega^i and omega^-i for i < n/2 (butterfly twiddles).
  std::vector<std::uint32_t> omega_pows;
  std::vector<std::uint32_t> omega_inv_pows;
  // psi^i and n^-1 * psi^-i for i < n (negacyclic pre/post scaling).
  std::vector<std::uint32_t> psi_pows;
  std::vector<std::uint32_t> psi_inv_scaled;

  // Requires q prime and q = 1 (mod 2n).
  static ModulusContext Create(std::uint32_t q, std::size_t n);
};

struct ParameterSet {
  std::size_t n = 0;
  std::uint32_t t = 2;
  unsigned bits = 0;
  std::vector<std::uint32_t> moduli;
  double sigma = 3.2;
  std::uint64_t seed = 0;
  std::uint32_t relin_base = 2;  // T

  // Derived by Finalize().
  BigUnsigned Q;
  BigUnsigned delta;     // floor(Q / t)
  unsigned ell = 0;      // floor(log_T Q)
  unsigned p_log2 = 0;   // p = 2^p_log2 >= Q^3

  std::size_t k() const { return moduli.size(); }
  BigUnsigned p() const { return BigUnsigned::Pow2(p_log2); }

  // Recomputes the derived fields from n, t, moduli and relin_base.
  void Finalize();
  // Checks every invariant; throws with the offending condition.
  void Validate() const;

  // key=value text: n, t, k, bits, sigma, seed, moduli (T when != 2).
  std::string ToText() const;
  static ParameterSet FromText(const std::string& text);

  // BLAKE2b-256 over ToText(); binds keys and ciphertexts to parameters.
  std::array<std::uint8_t, 32> Fingerprint() const;

  friend bool operator==(const ParameterSet& a, const ParameterSet& b) {
    return a.ToText() == b.ToText();
  }
};

// Primes of exactly `bits` bits with q = 1 (mod 2n), descending from
// 2^bits - 1, skipping `exclude`. InsufficientPrimes if fewer than `count`.
std::vector<std::uint32_t> FindNttPrimes(std::size_t n, unsigned bits, std::size_t count,
                                         const std::vector<std::uint32_t>& exclude = {});

// Extra NTT-friendly primes, descending from 2^31 - 1 and skipping `exclude`,
// until base_product times their product exceeds `target`.
std::vector<std::uint32_t> ExtensionPrimes(std::size_t n, const BigUnsigned& base_product,
                                           const BigUnsigned& target,
                                           const std::vector<std::uint32_t>& exclude);

ParameterSet GenerateParameters(std::size_t n, std::uint32_t t, std::size_t k, unsigned bits,
                                double sigma = 3.2, std::uint64_t seed = 0,
                                std::uint32_t relin_base = 2);

ParameterSet ReadParamFile(const std::string& path);
void WriteParamFile(const ParameterSet& params, const std::string& path);

}  // namespace rahl
