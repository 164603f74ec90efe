// SPDX-License-Identifier: Apache-2.0

#include "rahl/ntt.hpp"

#include <utility>

#include "rahl/error.hpp"
#include "rahl/perf.hpp"

namespace rahl {
namespace {

void BitReverse(std::span<std::uint32_t> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

// Iterative decimation-in-time over a bit-reversed input. Twiddle for
// butterfly j of a block of length 2m is table[j << (log_n - log2(2m))].
void Dit(std::span<std::uint32_t> a, const std::vector<std::uint32_t>& table,
         const ModulusContext& ctx) {
  const std::size_t n = ctx.n;
  const std::uint32_t q = ctx.q;
  // Local copy keeps the constants in registers across stores into `a`.
  const FoldedBarrettContext f = ctx.folded;
  const std::uint32_t* tw = table.data();
  std::uint32_t* x = a.data();
  BitReverse(a);
  for (unsigned s = 1; s <= ctx.log_n; ++s) {
    const std::size_t m = std::size_t{1} << (s - 1);
    const unsigned tshift = ctx.log_n - s;
    for (std::size_t start = 0; start < n; start += (m << 1)) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::uint32_t w = tw[j << tshift];
        const std::uint32_t u = x[start + j];
        const std::uint32_t v = f.MulUnchecked(x[start + j + m], w);
        x[start + j] = AddModUnchecked(u, v, q);
        x[start + j + m] = SubModUnchecked(u, v, q);
      }
    }
  }
  const std::uint64_t butterflies = (n >> 1) * ctx.log_n;
  perf::CountModMul(butterflies);
  perf::CountModAdd(2 * butterflies);
  perf::CountShift(butterflies);
}

void CheckLength(std::span<const std::uint32_t> a, const ModulusContext& ctx) {
  RAHL_CHECK(a.size() == ctx.n, ErrorCode::kDegreeMismatch,
             "polynomial length " + std::to_string(a.size()) + " != n = " +
                 std::to_string(ctx.n));
}

}  // namespace

void NttForwardInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx) {
  CheckLength(a, ctx);
  Dit(a, ctx.omega_pows, ctx);
}

void NttInverseInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx, bool scale) {
  CheckLength(a, ctx);
  Dit(a, ctx.omega_inv_pows, ctx);
  if (scale) {
    for (auto& x : a) x = ctx.folded.MulUnchecked(x, ctx.n_inv);
    perf::CountModMul(a.size());
  }
}

void TwistForwardInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx) {
  CheckLength(a, ctx);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = ctx.folded.MulUnchecked(a[i], ctx.psi_pows[i]);
  perf::CountModMul(a.size());
  Dit(a, ctx.omega_pows, ctx);
}

void InverseUntwistInPlace(std::span<std::uint32_t> a, const ModulusContext& ctx) {
  CheckLength(a, ctx);
  Dit(a, ctx.omega_inv_pows, ctx);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = ctx.folded.MulUnchecked(a[i], ctx.psi_inv_scaled[i]);
  }
  perf::CountModMul(a.size());
}

ChannelPolynomial NttForward(const ChannelPolynomial& p, const ModulusContext& ctx) {
  RAHL_CHECK(p.domain == Domain::kCoefficient, ErrorCode::kDomainMismatch,
             "forward transform needs a coefficient-domain input");
  RAHL_CHECK(p.q == ctx.q, ErrorCode::kChannelMismatch, "modulus mismatch");
  ChannelPolynomial out = p;
  NttForwardInPlace(out.coeffs, ctx);
  out.domain = Domain::kNtt;
  return out;
}

ChannelPolynomial NttInverse(const ChannelPolynomial& p, const ModulusContext& ctx) {
  RAHL_CHECK(p.domain == Domain::kNtt, ErrorCode::kDomainMismatch,
             "inverse transform needs an ntt-domain input");
  RAHL_CHECK(p.q == ctx.q, ErrorCode::kChannelMismatch, "modulus mismatch");
  ChannelPolynomial out = p;
  NttInverseInPlace(out.coeffs, ctx);
  out.domain = Domain::kCoefficient;
  return out;
}

ChannelPolynomial NegacyclicMultiply(const ChannelPolynomial& a, const ChannelPolynomial& b,
                                     const ModulusContext& ctx) {
  RAHL_CHECK(a.q == b.q && a.q == ctx.q, ErrorCode::kChannelMismatch, "modulus mismatch");
  RAHL_CHECK(a.domain == Domain::kCoefficient && b.domain == Domain::kCoefficient,
             ErrorCode::kDomainMismatch, "negacyclic multiply takes coefficient-domain inputs");
  std::vector<std::uint32_t> x = a.coeffs;
  std::vector<std::uint32_t> y = b.coeffs;
  TwistForwardInPlace(x, ctx);
  TwistForwardInPlace(y, ctx);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = ctx.folded.MulUnchecked(x[i], y[i]);
  perf::CountModMul(x.size());
  InverseUntwistInPlace(x, ctx);
  return ChannelPolynomial(ctx.q, std::move(x));
}

ChannelPolynomial SchoolbookNegacyclic(const ChannelPolynomial& a, const ChannelPolynomial& b,
                                       const ModulusContext& ctx) {
  RAHL_CHECK(a.q == b.q && a.q == ctx.q, ErrorCode::kChannelMismatch, "modulus mismatch");
  RAHL_CHECK(a.coeffs.size() == b.coeffs.size(), ErrorCode::kDegreeMismatch, "length mismatch");
  const std::size_t n = a.coeffs.size();
  const std::uint32_t q = ctx.q;
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t prod = ctx.folded.MulUnchecked(a.coeffs[i], b.coeffs[j]);
      std::size_t idx = i + j;
      if (idx < n) {
        out[idx] = AddModUnchecked(out[idx], prod, q);
      } else {
        out[idx - n] = SubModUnchecked(out[idx - n], prod, q);
      }
    }
  }
  perf::CountModMul(n * n);
  perf::CountModAdd(n * n);
  return ChannelPolynomial(q, std::move(out));
}

std::vector<std::uint32_t> NaiveTransform(std::span<const std::uint32_t> a, std::uint32_t w,
                                          std::uint32_t q) {
  const std::size_t n = a.size();
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t e = (static_cast<std::uint64_t>(i) * k) % n;
      std::uint64_t p = 1, b = w;
      while (e) {
        if (e & 1u) p = p * b % q;
        b = b * b % q;
        e >>= 1;
      }
      acc = (acc + a[k] * p) % q;
    }
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

}  // namespace rahl
