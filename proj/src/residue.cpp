// SPDX-License-Identifier: Apache-2.0

#include "rahl/residue.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rahl/error.hpp"
#include "rahl/modinv.hpp"
#include "rahl/perf.hpp"

namespace rahl {
namespace {

std::uint32_t ResidueOfLimbs(std::span<const BigUnsigned::Limb> limbs, const ModulusContext& c,
                             std::uint32_t limb_factor) {
  const auto& f = c.folded;
  const std::uint64_t limit = f.InputLimit();
  std::uint32_t r = 0;
  for (std::size_t i = limbs.size(); i-- > 0;) {
    std::uint64_t l = limbs[i];
    std::uint32_t lr = l < limit ? f.ReduceUnchecked(l) : static_cast<std::uint32_t>(l % c.q);
    r = AddModUnchecked(f.MulUnchecked(r, limb_factor), lr, c.q);
  }
  return r;
}

// Folds every limb with its precomputed weight 2^(32 i) mod q into a 128-bit
// accumulator, then reduces the three 32-bit pieces of the accumulator.
std::uint32_t ResidueOfLimbsFolded(std::span<const BigUnsigned::Limb> limbs,
                                   const ModulusContext& c, const std::uint32_t* weights) {
  const auto& f = c.folded;
  u128 acc = 0;
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    acc += static_cast<std::uint64_t>(limbs[i]) * weights[i];
  }
  const auto a0 = static_cast<std::uint32_t>(acc);
  const auto a1 = static_cast<std::uint32_t>(acc >> 32);
  const auto a2 = static_cast<std::uint64_t>(acc >> 64);
  std::uint32_t r = f.ReduceUnchecked(a0);
  r = AddModUnchecked(r, f.MulUnchecked(f.ReduceUnchecked(a1), weights[1]), c.q);
  r = AddModUnchecked(r, f.ReduceUnchecked(a2 * weights[2]), c.q);
  return r;
}

}  // namespace

std::shared_ptr<const RnsBasis> RnsBasis::Create(const std::vector<std::uint32_t>& moduli,
                                                 std::size_t n) {
  RAHL_CHECK(!moduli.empty(), ErrorCode::kInvalidArgument, "empty basis");
  std::shared_ptr<RnsBasis> b(new RnsBasis());
  b->n_ = n;
  b->moduli_ = moduli;
  b->Q_ = BigUnsigned(1);
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(n);
  for (std::uint32_t q : moduli) {
    b->contexts_.push_back(ModulusContext::Create(q, n));
    b->limb_factor_.push_back(
        static_cast<std::uint32_t>((std::uint64_t{1} << 32) % q));
    b->fast_.push_back(q >= (1u << 16));
    b->Q_ = b->Q_.MulSmall(q);
    b->inv_q_.push_back(1.0L / static_cast<long double>(q));
    mix(q);
  }
  b->id_ = h;
  // Weights cover values up to Q * 2^64, enough for every lift in the scheme.
  b->weight_limbs_ = std::max<std::size_t>(b->Q_.LimbCount() + 2, 3);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const auto& f = b->contexts_[i].folded;
    std::uint32_t w = 1 % moduli[i];
    for (std::size_t l = 0; l < b->weight_limbs_; ++l) {
      b->weights_.push_back(w);
      w = f.MulUnchecked(w, b->limb_factor_[i]);
    }
  }
  b->half_Q_ = b->Q_ >> 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    auto [Mi, rem] = BigUnsigned::DivModSmall(b->Q_, moduli[i]);
    RAHL_CHECK(rem == 0, ErrorCode::kInvalidArgument, "Q not divisible by q_i");
    auto Mi_mod = BigUnsigned::DivModSmall(Mi, moduli[i]).second;
    b->y_.push_back(static_cast<std::uint32_t>(ModInvEuclid(Mi_mod, moduli[i])));
    b->M_.push_back(std::move(Mi));
  }
  return b;
}

std::uint32_t RnsBasis::Residue(std::span<const BigUnsigned::Limb> limbs, std::size_t i) const {
  if (fast_[i] && limbs.size() <= weight_limbs_) {
    return ResidueOfLimbsFolded(limbs, contexts_[i], weights_.data() + i * weight_limbs_);
  }
  return ResidueOfLimbs(limbs, contexts_[i], limb_factor_[i]);
}

std::uint32_t RnsBasis::ResidueOf(const BigUnsigned& x, std::size_t i) const {
  auto limbs = x.limbs();
  perf::CountModMul(limbs.size());
  perf::CountModAdd(limbs.size());
  return Residue(limbs, i);
}

void RnsBasis::DecomposeInto(const BigUnsigned& x, std::span<std::uint32_t> out) const {
  auto limbs = x.limbs();
  for (std::size_t i = 0; i < k(); ++i) out[i] = Residue(limbs, i);
  perf::CountModMul(k() * limbs.size());
  perf::CountModAdd(k() * limbs.size());
}

void RnsBasis::DecomposeSignedInto(const BigSigned& x, std::span<std::uint32_t> out) const {
  DecomposeInto(x.mag, out);
  if (x.negative) {
    for (std::size_t i = 0; i < k(); ++i) out[i] = out[i] == 0 ? 0 : moduli_[i] - out[i];
    perf::CountModAdd(k());
  }
}

BigUnsigned RnsBasis::ReconstructLut(std::span<const std::uint32_t> v) const {
  BigUnsigned sum;
  long double frac = 0.0L;
  for (std::size_t i = 0; i < k(); ++i) {
    std::uint32_t z = contexts_[i].folded.MulUnchecked(v[i], y_[i]);
    if (z == 0) continue;
    sum.AddMulSmall(M_[i], z);
    frac += static_cast<long double>(z) * inv_q_[i];
  }
  perf::CountModMul(k());
  // sum / Q = frac exactly; floor(frac) can be off by one near integers.
  auto alpha = static_cast<std::uint64_t>(std::floor(frac));
  if (alpha > 0) {
    BigUnsigned aq = alpha <= 0xffffffffu ? Q_.MulSmall(static_cast<std::uint32_t>(alpha))
                                          : Q_ * BigUnsigned(alpha);
    if (aq > sum) aq -= Q_;
    sum -= aq;
  }
  while (sum >= Q_) sum -= Q_;
  return sum;
}

BigSigned RnsBasis::ReconstructCentered(std::span<const std::uint32_t> v) const {
  BigUnsigned x = ReconstructLut(v);
  return Centered(x, Q_);
}

ResidueVector RnsDecompose(const BigUnsigned& x, const RnsBasis& basis, ExecMode mode) {
  RAHL_CHECK(x < basis.Q(), ErrorCode::kOutOfRange, "value is not below Q");
  ResidueVector out;
  out.values.assign(basis.k(), 0);
  if (mode == ExecMode::kSerial) {
    basis.DecomposeInto(x, out.values);
    return out;
  }
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 2, basis.k());
  std::vector<perf::OpCounters> deltas(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const perf::OpCounters start = perf::Local();
      for (std::size_t i = w; i < basis.k(); i += workers) out.values[i] = basis.ResidueOf(x, i);
      deltas[w] = perf::Local() - start;
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& d : deltas) perf::MergeFromWorker(d);
  return out;
}

namespace {

void CheckResidues(const ResidueVector& v, const RnsBasis& basis) {
  RAHL_CHECK(v.values.size() == basis.k(), ErrorCode::kChannelMismatch,
             "residue vector has the wrong number of channels");
  for (std::size_t i = 0; i < basis.k(); ++i) {
    RAHL_CHECK(v.values[i] < basis.moduli()[i], ErrorCode::kOutOfRange,
               "residue not below its modulus");
  }
}

}  // namespace

BigUnsigned CrtReconstructPairwise(const ResidueVector& v, const RnsBasis& basis) {
  CheckResidues(v, basis);
  BigUnsigned x(v.values[0]);
  BigUnsigned m(basis.moduli()[0]);
  for (std::size_t i = 1; i < basis.k(); ++i) {
    const ModulusContext& c = basis.ctx(i);
    const std::uint32_t q = c.q;
    const std::uint32_t m_mod = basis.ResidueOf(m, i);
    const auto inv = static_cast<std::uint32_t>(ModInvEuclid(m_mod, q));
    const std::uint32_t x_mod = basis.ResidueOf(x, i);
    const std::uint32_t diff = ModSub(v.values[i], x_mod, q);
    const std::uint32_t h = ModMul(diff, inv, c.folded);
    x.AddMulSmall(m, h);
    m = m.MulSmall(q);
  }
  return x;
}

BigUnsigned CrtReconstructLut(const ResidueVector& v, const RnsBasis& basis) {
  CheckResidues(v, basis);
  return basis.ReconstructLut(v.values);
}

}  // namespace rahl
