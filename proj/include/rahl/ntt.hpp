// SPDX-License-Identifier: Apache-2.0
//
// Per-channel number theoretic transform and negacyclic multiplication in
// Z_q[x]/(x^n + 1).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rahl/params.hpp"

namespace rahl {

enum class Domain : std::uint8_t { kCoefficient = 0, kNtt = 1 };

struct ChannelPolynomial {
  std::uint32_t q = 0;
  Domain domain = Domain::kCoefficient;
  std::vector<std::uint32_t> coeffs;

  ChannelPolynomial() = default;
  ChannelPolynomial(std::uint32_t modulus, std::vector<std::uint32_t> c,
                    Domain d = Domain::kCoefficient)
      : q(modulus), domain(d), coeffs(std::move(c)) {}

  friend bool operator==(const ChannelPolynomial&, const ChannelPolynomial&) = default;
};

// In-place kernels on raw spans of length ctx.n. Forward computes
// X_i = sum_k x_k w^(ik); inverse uses w^-1 and, when `scale` is set,
// multiplies by n^-1.
void NttForwardInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx);
void NttInverseInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx, bool scale = true);

// Negacyclic forms: psi-twist then forward transform; inverse transform then
// untwist with n^-1 psi^-i folded into one table.
void TwistForwardInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx);
void InverseUntwistInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx);

ChannelPolynomial NttForward(const ChannelPolynomial& p, const ModulusContext& ctx);
ChannelPolynomial NttInverse(const ChannelPolynomial& p, const ModulusContext& ctx);

// a * b mod (x^n + 1, q) through psi scaling and three transforms.
ChannelPolynomial NegacyclicMultiply(const ChannelPolynomial& a, const ChannelPolynomial& b,
                                     const ModulusContext& ctx);

// O(n^2) reference; counts exactly n^2 modular multiplications.
ChannelPolynomial SchoolbookNegacyclic(const ChannelPolynomial& a, const ChannelPolynomial& b,
                                       const ModulusContext& ctx);

// Direct evaluation of the transform sum with root w; reference for tests.
std::vector<std::uint32_t> NaiveTransform(std::span<const std::uint32_t> a, std::uint32_t w,
                                          std::uint32_t q);

}  // namespace rahl
