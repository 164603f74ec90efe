// SPDX-License-Identifier: Apache-2.0

#include "rahl/params.hpp"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rahl/error.hpp"
#include "rahl/gcd.hpp"
#include "rahl/modinv.hpp"
#include "rahl/primes.hpp"

namespace rahl {
namespace {

std::uint32_t PowModPlain(std::uint32_t b, std::uint64_t e, std::uint32_t q) {
  FoldedBarrettContext ctx(q);
  return ModPow(b, e, ctx);
}

bool IsPow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

template <typename T>
T ParseInt(const std::string& key, const std::string& v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  RAHL_CHECK(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::kFormat,
             "bad integer for '" + key + "': '" + v + "'");
  return out;
}

}  // namespace

std::uint32_t FindPrimitiveRoot(std::uint32_t q) {
  RAHL_CHECK(IsPrime(q), ErrorCode::kNotPrime, std::to_string(q) + " is not prime");
  if (q == 2) return 1;
  const auto factors = DistinctPrimeFactors(q - 1);
  for (std::uint32_t alpha = 2; alpha < q; ++alpha) {
    bool generator = true;
    for (std::uint64_t f : factors) {
      if (PowModPlain(alpha, (q - 1) / f, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return alpha;
  }
  throw Error(ErrorCode::kNotPrime, "no primitive root found");
}

std::uint32_t ComputeRootOfUnity(std::uint32_t q, std::uint64_t n) {
  RAHL_CHECK(n >= 1 && q >= 2 && (q - 1) % n == 0, ErrorCode::kNoRoot,
             std::to_string(n) + " does not divide q - 1 for q = " + std::to_string(q));
  if (n == 1) return 1;
  std::uint32_t alpha = FindPrimitiveRoot(q);
  std::uint32_t omega = PowModPlain(alpha, (q - 1) / n, q);
  // Both root conditions: omega^n = 1 and its period is exactly n.
  RAHL_CHECK(PowModPlain(omega, n, q) == 1, ErrorCode::kNoRoot, "omega^n != 1");
  for (std::uint64_t f : DistinctPrimeFactors(n)) {
    RAHL_CHECK(PowModPlain(omega, n / f, q) != 1, ErrorCode::kNoRoot, "omega has short period");
  }
  return omega;
}

ModulusContext ModulusContext::Create(std::uint32_t q, std::size_t n) {
  RAHL_CHECK(IsPow2(n), ErrorCode::kInvalidDegree, "n must be a power of two");
  RAHL_CHECK(IsPrime(q), ErrorCode::kNotPrime, std::to_string(q) + " is not prime");
  RAHL_CHECK((q - 1) % (2 * n) == 0, ErrorCode::kNoRoot,
             std::to_string(q) + " is not 1 mod 2n for n = " + std::to_string(n));
  ModulusContext c;
  c.q = q;
  c.bitwidth = CeilLog2(q);
  c.n = n;
  c.log_n = static_cast<unsigned>(std::countr_zero(n));
  c.barrett = BarrettContext(q);
  c.folded = FoldedBarrettContext(q);
  c.psi = ComputeRootOfUnity(q, 2 * n);
  c.omega = c.folded.MulUnchecked(c.psi, c.psi);
  c.omega_inv = static_cast<std::uint32_t>(ModInvEuclid(c.omega, q));
  c.psi_inv = static_cast<std::uint32_t>(ModInvEuclid(c.psi, q));
  c.n_inv = static_cast<std::uint32_t>(ModInvEuclid(n % q, q));
  c.fermat_bits = FermatExponentBits(q);

  const auto& f = c.folded;
  c.omega_pows.resize(n / 2);
  c.omega_inv_pows.resize(n / 2);
  std::uint32_t w = 1, wi = 1;
  for (std::size_t i = 0; i < n / 2; ++i) {
    c.omega_pows[i] = w;
    c.omega_inv_pows[i] = wi;
    w = f.MulUnchecked(w, c.omega);
    wi = f.MulUnchecked(wi, c.omega_inv);
  }
  c.psi_pows.resize(n);
  c.psi_inv_scaled.resize(n);
  std::uint32_t p = 1, pi = c.n_inv;
  for (std::size_t i = 0; i < n; ++i) {
    c.psi_pows[i] = p;
    c.psi_inv_scaled[i] = pi;
    p = f.MulUnchecked(p, c.psi);
    pi = f.MulUnchecked(pi, c.psi_inv);
  }
  return c;
}

void ParameterSet::Finalize() {
  Q = BigUnsigned(1);
  for (std::uint32_t q : moduli) Q = Q.MulSmall(q);
  delta = BigUnsigned::DivModSmall(Q, t).first;
  ell = 0;
  if (IsPow2(relin_base)) {
    ell = (Q.BitLength() - 1) / static_cast<unsigned>(std::countr_zero(relin_base));
  } else {
    BigUnsigned cur = BigUnsigned::DivModSmall(Q, relin_base).first;
    while (!cur.IsZero()) {
      ++ell;
      cur = BigUnsigned::DivModSmall(cur, relin_base).first;
    }
  }
  BigUnsigned q3 = Q * Q * Q;
  p_log2 = q3.BitLength();
  if (p_log2 > 0 && q3 == BigUnsigned::Pow2(p_log2 - 1)) --p_log2;
}

void ParameterSet::Validate() const {
  RAHL_CHECK(n >= 2 && IsPow2(n), ErrorCode::kInvalidDegree, "n must be a power of two >= 2");
  RAHL_CHECK(t >= 2, ErrorCode::kInvalidArgument, "t must be >= 2");
  RAHL_CHECK(relin_base >= 2, ErrorCode::kInvalidArgument, "T must be >= 2");
  RAHL_CHECK(!moduli.empty(), ErrorCode::kInvalidArgument, "need at least one modulus");
  RAHL_CHECK(sigma >= 0.0, ErrorCode::kInvalidArgument, "sigma must be non-negative");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    RAHL_CHECK(IsPrime(moduli[i]), ErrorCode::kNotPrime, std::to_string(moduli[i]) + " not prime");
    RAHL_CHECK((moduli[i] - 1) % (2 * n) == 0, ErrorCode::kInvalidArgument,
               std::to_string(moduli[i]) + " is not 1 mod 2n");
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      RAHL_CHECK(IsCoprime(moduli[i], moduli[j]), ErrorCode::kInvalidArgument,
                 "moduli are not pairwise coprime");
    }
  }
  ParameterSet copy = *this;
  copy.Finalize();
  RAHL_CHECK(copy.Q == Q && copy.delta == delta && copy.ell == ell && copy.p_log2 == p_log2,
             ErrorCode::kInvalidArgument, "derived constants are stale");
}

std::string ParameterSet::ToText() const {
  std::ostringstream os;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), sigma);
  os << "n=" << n << "\n"
     << "t=" << t << "\n"
     << "k=" << moduli.size() << "\n"
     << "bits=" << bits << "\n"
     << "sigma=" << std::string(buf, res.ptr) << "\n"
     << "seed=" << seed << "\n";
  if (relin_base != 2) os << "T=" << relin_base << "\n";
  os << "moduli=";
  for (std::size_t i = 0; i < moduli.size(); ++i) os << (i ? "," : "") << moduli[i];
  os << "\n";
  return os.str();
}

ParameterSet ParameterSet::FromText(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    RAHL_CHECK(eq != std::string::npos, ErrorCode::kFormat, "expected key=value: '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"n", "t", "k", "bits", "sigma", "seed", "moduli"}) {
    RAHL_CHECK(kv.contains(key), ErrorCode::kFormat, std::string("missing key '") + key + "'");
  }
  ParameterSet p;
  p.n = ParseInt<std::size_t>("n", kv["n"]);
  p.t = ParseInt<std::uint32_t>("t", kv["t"]);
  p.bits = ParseInt<unsigned>("bits", kv["bits"]);
  p.seed = ParseInt<std::uint64_t>("seed", kv["seed"]);
  if (kv.contains("T")) p.relin_base = ParseInt<std::uint32_t>("T", kv["T"]);
  {
    const std::string& s = kv["sigma"];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p.sigma);
    RAHL_CHECK(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kFormat, "bad sigma");
  }
  std::istringstream ms(kv["moduli"]);
  std::string item;
  while (std::getline(ms, item, ',')) p.moduli.push_back(ParseInt<std::uint32_t>("moduli", item));
  RAHL_CHECK(p.moduli.size() == ParseInt<std::size_t>("k", kv["k"]), ErrorCode::kFormat,
             "k does not match the moduli list");
  p.Finalize();
  p.Validate();
  return p;
}

std::array<std::uint8_t, 32> ParameterSet::Fingerprint() const {
  RAHL_CHECK(sodium_init() >= 0, ErrorCode::kInvalidArgument, "libsodium init failed");
  std::string text = ToText();
  std::array<std::uint8_t, 32> out{};
  crypto_generichash(out.data(), out.size(), reinterpret_cast<const unsigned char*>(text.data()),
                     text.size(), nullptr, 0);
  return out;
}

std::vector<std::uint32_t> FindNttPrimes(std::size_t n, unsigned bits, std::size_t count,
                                         const std::vector<std::uint32_t>& exclude) {
  RAHL_CHECK(IsPow2(n), ErrorCode::kInvalidDegree, "n must be a power of two");
  RAHL_CHECK(bits >= 2 && bits <= 32, ErrorCode::kInvalidArgument, "bits must be in [2, 32]");
  const std::uint64_t step = 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t hi = (std::uint64_t{1} << bits) - 1;
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  std::vector<std::uint32_t> out;
  if (count == 0) return out;
  // Largest candidate <= hi with candidate = 1 mod 2n.
  if (hi < 1) return out;
  std::uint64_t c = hi - ((hi - 1) % step);
  for (; c >= lo && c > step; c -= step) {
    if (!IsPrime(c)) continue;
    if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
    out.push_back(static_cast<std::uint32_t>(c));
    if (out.size() == count) return out;
  }
  throw Error(ErrorCode::kInsufficientPrimes,
              "only " + std::to_string(out.size()) + " primes of " + std::to_string(bits) +
                  " bits are 1 mod " + std::to_string(step) + "; need " + std::to_string(count));
}

std::vector<std::uint32_t> ExtensionPrimes(std::size_t n, const BigUnsigned& base_product,
                                           const BigUnsigned& target,
                                           const std::vector<std::uint32_t>& exclude) {
  RAHL_CHECK(IsPow2(n), ErrorCode::kInvalidDegree, "n must be a power of two");
  const std::uint64_t step = 2 * static_cast<std::uint64_t>(n);
  const std::uint64_t hi = (std::uint64_t{1} << 31) - 1;
  std::vector<std::uint32_t> out;
  BigUnsigned prod = base_product;
  for (std::uint64_t c = hi - ((hi - 1) % step); prod <= target; c -= step) {
    RAHL_CHECK(c > step, ErrorCode::kInsufficientPrimes, "ran out of extension primes");
    if (!IsPrime(c)) continue;
    if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
    out.push_back(static_cast<std::uint32_t>(c));
    prod = prod.MulSmall(static_cast<std::uint32_t>(c));
  }
  return out;
}

ParameterSet GenerateParameters(std::size_t n, std::uint32_t t, std::size_t k, unsigned bits,
                                double sigma, std::uint64_t seed, std::uint32_t relin_base) {
  RAHL_CHECK(n >= 2 && IsPow2(n), ErrorCode::kInvalidDegree, "n must be a power of two >= 2");
  RAHL_CHECK(k >= 1, ErrorCode::kInvalidArgument, "k must be >= 1");
  RAHL_CHECK(t >= 2, ErrorCode::kInvalidArgument, "t must be >= 2");
  ParameterSet p;
  p.n = n;
  p.t = t;
  p.bits = bits;
  p.sigma = sigma;
  p.seed = seed;
  p.relin_base = relin_base;
  p.moduli = FindNttPrimes(n, bits, k);
  p.Finalize();
  p.Validate();
  return p;
}

ParameterSet ReadParamFile(const std::string& path) {
  std::ifstream in(path);
  RAHL_CHECK(in.good(), ErrorCode::kFormat, "cannot open parameter file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParameterSet::FromText(ss.str());
}

void WriteParamFile(const ParameterSet& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  RAHL_CHECK(out.good(), ErrorCode::kFormat, "cannot write parameter file " + path);
  out << params.ToText();
}

}  // namespace rahl
