// SPDX-License-Identifier: Apache-2.0
//
// rahl: parameter generation, key management, encryption, evaluation,
// benchmarks and the encrypted logistic-regression demo.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rahl/circuit.hpp"
#include "rahl/error.hpp"
#include "rahl/gcd.hpp"
#include "rahl/modinv.hpp"
#include "rahl/ntt.hpp"
#include "rahl/perf.hpp"
#include "rahl/relin.hpp"
#include "rahl/serialize.hpp"

namespace {

using namespace rahl;

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kFormatExit = 3, kMismatch = 4, kBudget = 5 };

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kFormat: return kFormatExit;
    case ErrorCode::kParameterMismatch: return kMismatch;
    case ErrorCode::kBudgetExhausted: return kBudget;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kNonBinaryMessage:
    case ErrorCode::kDegreeMismatch:
    case ErrorCode::kInvalidDegree:
    case ErrorCode::kInsufficientPrimes: return kUsage;
    default: return kFail;
  }
}

std::string Stem(const std::string& path) {
  auto pos = path.find_last_of('.');
  auto slash = path.find_last_of('/');
  if (pos == std::string::npos || (slash != std::string::npos && pos < slash)) return path;
  return path.substr(0, pos);
}

// --params when given, otherwise the .params file next to `sibling`.
std::shared_ptr<const FvContext> LoadContext(const std::string& params,
                                             const std::string& sibling) {
  std::string path = params;
  if (path.empty() && !sibling.empty()) path = Stem(sibling) + ".params";
  RAHL_CHECK(!path.empty(), ErrorCode::kInvalidArgument, "--params is required");
  return FvContext::Create(ReadParamFile(path));
}

std::uint64_t PickSeed(std::uint64_t flag, const ParameterSet& p) {
  if (flag != 0) return flag;
  if (p.seed != 0) return p.seed;
  return Rng::EntropySeed();
}

std::vector<std::uint8_t> ParseBits(std::string text, std::size_t n) {
  text.erase(std::remove_if(text.begin(), text.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             text.end());
  RAHL_CHECK(text.size() <= n, ErrorCode::kDegreeMismatch,
             "message has " + std::to_string(text.size()) + " bits, n = " + std::to_string(n));
  std::vector<std::uint8_t> m(n, 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    RAHL_CHECK(text[i] == '0' || text[i] == '1', ErrorCode::kNonBinaryMessage,
               "message must be a bitstring");
    m[i] = static_cast<std::uint8_t>(text[i] - '0');
  }
  return m;
}

std::string BitString(const std::vector<std::uint8_t>& m) {
  std::string s;
  for (auto b : m) s.push_back(b ? '1' : '0');
  return s;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  RAHL_CHECK(in.good(), ErrorCode::kFormat, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every long option is also read from RAHL_<NAME>, dashes as underscores.
void BindEnvironment(CLI::App& app) {
  for (CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    std::string name = "RAHL_" + opt->get_lnames().front();
    for (auto& c : name) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
    opt->envname(name);
  }
  for (CLI::App* sub : app.get_subcommands({})) BindEnvironment(*sub);
}

// Refuses to print a decryption whose noise sits within a factor of two of
// the decision boundary.
void CheckBudget(const FvContext& ctx, const Ciphertext& ct, const SecretKey& sk,
                 const std::vector<std::uint8_t>& m) {
  double budget = NoiseBudget(ctx, ct, sk, m);
  RAHL_CHECK(budget >= 1.0, ErrorCode::kBudgetExhausted,
             "noise budget exhausted (" + std::to_string(budget) + " bits left)");
}

// ---------------------------------------------------------------- bench

void BenchKernels(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, "bench-kernels");
  const std::uint32_t q = FindNttPrimes(n, 30, 1).front();
  const ModulusContext ctx = ModulusContext::Create(q, n);
  std::vector<std::uint64_t> wide(1 << 14);
  for (auto& a : wide) a = rng.Uniform(static_cast<std::uint64_t>(q) * q);
  perf::MeasureScope("reduce_barrett", [&] {
    std::uint64_t acc = 0;
    for (auto a : wide) acc += ReduceBarrett(a, ctx.barrett);
    return acc;
  });
  perf::MeasureScope("reduce_folded", [&] {
    std::uint64_t acc = 0;
    for (auto a : wide) acc += ReduceFolded(a, ctx.folded);
    return acc;
  });
  std::vector<std::uint32_t> x(n), y(n);
  for (auto& v : x) v = static_cast<std::uint32_t>(rng.Uniform(q));
  for (auto& v : y) v = static_cast<std::uint32_t>(rng.Uniform(q));
  ChannelPolynomial a(q, x), b(q, y);
  perf::MeasureScope("ntt_forward", [&] { return NttForward(a, ctx); });
  perf::MeasureScope("negacyclic_ntt", [&] { return NegacyclicMultiply(a, b, ctx); });
  perf::MeasureScope("negacyclic_schoolbook", [&] { return SchoolbookNegacyclic(a, b, ctx); });
  perf::MeasureScope("gcd_division", [&] {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < 1000; ++i) acc += GcdDivision(x[i % n], y[i % n]);
    return acc;
  });
  perf::MeasureScope("gcd_binary", [&] {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < 1000; ++i) acc += GcdBinary(x[i % n], y[i % n]);
    return acc;
  });
  perf::MeasureScope("modinv_euclid", [&] {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < 1000; ++i) acc += ModInvEuclid(x[i % n] | 1u, q);
    return acc;
  });
  perf::MeasureScope("modinv_fermat", [&] {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < 1000; ++i) acc += ModInvFermat(x[i % n] | 1u, q);
    return acc;
  });
}

void BenchScheme(const ParameterSet& params, std::uint64_t seed) {
  auto ctx = FvContext::Create(params);
  Rng rng(seed, "bench-scheme");
  const KeyPair kp = perf::MeasureScope("keygen", [&] { return KeyGen(*ctx, rng); }).result;
  const auto r1 =
      perf::MeasureScope("relin_keygen_v1", [&] { return RelinKeyGenV1(*ctx, kp.sk, rng); })
          .result;
  const auto r2 =
      perf::MeasureScope("relin_keygen_v2", [&] { return RelinKeyGenV2(*ctx, kp.sk, rng); })
          .result;
  const auto m1 = SampleBinaryPoly(ctx->n(), rng);
  const auto m2 = SampleBinaryPoly(ctx->n(), rng);
  const Ciphertext a =
      perf::MeasureScope("encrypt", [&] { return Encrypt(*ctx, kp.pk, m1, rng); }).result;
  const Ciphertext b = Encrypt(*ctx, kp.pk, m2, rng);
  perf::MeasureScope("decrypt", [&] { return Decrypt(*ctx, a, kp.sk); });
  perf::MeasureScope("hom_add", [&] { return HomAdd(a, b); });
  const Ciphertext d = perf::MeasureScope("hom_mul", [&] { return HomMul(*ctx, a, b); }).result;
  perf::MeasureScope("hom_mul_literal", [&] {
    return HomMul(*ctx, a, b, MulOptions{LiftMode::kCentered, true});
  });
  perf::MeasureScope("relin_v1", [&] { return RelinearizeV1(*ctx, d, r1); });
  perf::MeasureScope("relin_v2", [&] { return RelinearizeV2(*ctx, d, r2); });
}

// ---------------------------------------------------------------- main

struct Flags {
  // params
  std::size_t n = 1024, k = 40;
  std::uint32_t t = 2, relin_base = 2;
  unsigned bits = 30;
  double sigma = 3.2;
  std::uint64_t seed = 0;
  std::string out;
  // shared
  std::string params, pk, sk, keys, keys_prefix, message, infile, relin;
  std::string out_prefix, suite;
  std::vector<std::string> in;
  std::string op;
  unsigned max_depth = 200;
  // lr-demo
  std::vector<double> features;
  std::vector<std::int64_t> weights;
  unsigned scale = 8, width = 16, frac_bits = 10;
};

int CmdParams(const Flags& f) {
  ParameterSet p = GenerateParameters(f.n, f.t, f.k, f.bits, f.sigma, f.seed, f.relin_base);
  WriteParamFile(p, f.out);
  std::cout << "wrote " << f.out << " (Q " << p.Q.BitLength() << " bits)\n";
  return kOk;
}

int CmdKeygen(const Flags& f) {
  auto ctx = LoadContext(f.params, "");
  Rng rng(PickSeed(f.seed, ctx->params()), "keygen");
  KeyPair kp = KeyGen(*ctx, rng);
  RelinKeysV1 r1 = RelinKeyGenV1(*ctx, kp.sk, rng);
  RelinKeysV2 r2 = RelinKeyGenV2(*ctx, kp.sk, rng);
  const std::string& p = f.out_prefix;
  WriteParamFile(ctx->params(), p + ".params");
  SaveFile(p + ".sk", *ctx, kp.sk);
  SaveFile(p + ".pk", *ctx, kp.pk);
  SaveFile(p + ".rlk1", *ctx, r1);
  SaveFile(p + ".rlk2", *ctx, r2);
  std::cout << "wrote " << p << ".{params,sk,pk,rlk1,rlk2}\n";
  return kOk;
}

int CmdEncrypt(const Flags& f) {
  auto ctx = LoadContext(f.params, f.pk);
  RAHL_CHECK(f.message.empty() != f.infile.empty(), ErrorCode::kInvalidArgument,
             "give exactly one of --message and --infile");
  auto m = ParseBits(f.message.empty() ? ReadText(f.infile) : f.message, ctx->n());
  PublicKey pk = LoadPublicKey(f.pk, *ctx);
  Rng rng(PickSeed(f.seed, ctx->params()), "encrypt");
  SaveFile(f.out, *ctx, Encrypt(*ctx, pk, m, rng));
  return kOk;
}

int CmdEval(const Flags& f) {
  RAHL_CHECK(f.in.size() == 2, ErrorCode::kInvalidArgument, "eval takes two --in ciphertexts");
  auto ctx = LoadContext(f.params, f.keys);
  Ciphertext a = LoadCiphertext(f.in[0], *ctx);
  Ciphertext b = LoadCiphertext(f.in[1], *ctx);
  if (f.op == "add") {
    SaveFile(f.out, *ctx, HomAdd(a, b));
    return kOk;
  }
  Ciphertext d = HomMul(*ctx, a, b);
  if (f.keys.empty()) {
    RAHL_CHECK(f.relin.empty(), ErrorCode::kInvalidArgument, "--relin needs --keys");
    SaveFile(f.out, *ctx, d);
    return kOk;
  }
  const ArtifactKind kind = PeekKind(f.keys);
  std::string version = f.relin;
  if (version.empty()) version = kind == ArtifactKind::kRelinV1 ? "v1" : "v2";
  if (version == "v1") {
    RAHL_CHECK(kind == ArtifactKind::kRelinV1, ErrorCode::kFormat, f.keys + " is not a v1 key");
    SaveFile(f.out, *ctx, RelinearizeV1(*ctx, d, LoadRelinV1(f.keys, *ctx)));
  } else {
    RAHL_CHECK(kind == ArtifactKind::kRelinV2, ErrorCode::kFormat, f.keys + " is not a v2 key");
    SaveFile(f.out, *ctx, RelinearizeV2(*ctx, d, LoadRelinV2(f.keys, *ctx)));
  }
  return kOk;
}

int CmdDecrypt(const Flags& f) {
  RAHL_CHECK(f.in.size() == 1, ErrorCode::kInvalidArgument, "decrypt takes one --in ciphertext");
  auto ctx = LoadContext(f.params, f.sk);
  SecretKey sk = LoadSecretKey(f.sk, *ctx);
  Ciphertext ct = LoadCiphertext(f.in[0], *ctx);
  auto m = Decrypt(*ctx, ct, sk);
  CheckBudget(*ctx, ct, sk, m);
  std::cout << BitString(m) << "\n";
  return kOk;
}

int CmdDepthProbe(const Flags& f) {
  const std::string& p = f.keys_prefix;
  auto ctx = LoadContext(f.params, p + ".params");
  KeyPair kp{LoadSecretKey(p + ".sk", *ctx), LoadPublicKey(p + ".pk", *ctx)};
  const bool v1 = f.relin.empty() || f.relin == "v1";
  std::optional<RelinKeysV1> r1;
  std::optional<RelinKeysV2> r2;
  if (v1) {
    r1 = LoadRelinV1(p + ".rlk1", *ctx);
  } else {
    r2 = LoadRelinV2(p + ".rlk2", *ctx);
  }
  Rng rng(PickSeed(f.seed, ctx->params()), "depth-probe");
  std::vector<std::uint8_t> ones(ctx->n(), 1);
  auto res = DepthProbe(*ctx, kp, v1 ? RelinVersion::kV1 : RelinVersion::kV2,
                        r1 ? &*r1 : nullptr, r2 ? &*r2 : nullptr, rng, ones, f.max_depth);
  for (std::size_t i = 0; i < res.budgets.size(); ++i) {
    std::cout << "depth " << i + 1 << " budget " << res.budgets[i] << "\n";
  }
  std::cout << "achieved depth " << res.depth << "\n";
  return kOk;
}

int CmdBench(const Flags& f) {
  perf::Registry::Local().Clear();
  std::uint64_t seed = f.seed ? f.seed : 1;
  if (f.suite == "kernels") {
    BenchKernels(f.n, seed);
  } else {
    ParameterSet p = f.params.empty() ? GenerateParameters(f.n, 2, f.k, f.bits, f.sigma)
                                      : ReadParamFile(f.params);
    BenchScheme(p, seed);
  }
  const auto& reg = perf::Registry::Local();
  std::ostringstream csv;
  csv << perf::CsvHeader() << "\n";
  for (const auto& [label, m] : reg.entries()) csv << perf::CsvRow(label, m) << "\n";
  if (f.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(f.out);
    RAHL_CHECK(out.good(), ErrorCode::kFormat, "cannot write " + f.out);
    out << csv.str();
  }
  if (f.suite == "kernels") {
    std::cout << perf::CompareReport("negacyclic_schoolbook", "negacyclic_ntt").Text();
  } else {
    std::cout << perf::CompareReport("hom_add", "hom_mul").Text();
    std::cout << perf::CompareReport("relin_v2", "relin_v1").Text();
  }
  return kOk;
}

int CmdLrDemo(const Flags& f) {
  circuit::LrConfig cfg;
  cfg.width = f.width;
  cfg.scale = f.scale;
  cfg.frac_bits = f.frac_bits;
  cfg.weights = f.weights;
  cfg.Validate(f.features.size());
  ParameterSet p = f.params.empty() ? GenerateParameters(16, 2, 6, 30) : ReadParamFile(f.params);
  auto ctx = FvContext::Create(p);
  Rng rng(PickSeed(f.seed, p), "lr-demo");
  KeyPair kp = KeyGen(*ctx, rng);
  const bool v1 = f.relin == "v1";
  std::optional<RelinKeysV1> r1;
  std::optional<RelinKeysV2> r2;
  if (v1) {
    r1 = RelinKeyGenV1(*ctx, kp.sk, rng);
  } else {
    r2 = RelinKeyGenV2(*ctx, kp.sk, rng);
  }
  std::vector<std::int64_t> fixed;
  std::vector<circuit::Word> enc;
  for (double x : f.features) {
    fixed.push_back(circuit::ToFixed(x, cfg.scale));
    enc.push_back(circuit::EncryptWord(*ctx, kp.pk, fixed.back(), cfg.width, rng));
  }
  circuit::Evaluator ev(*ctx, v1 ? RelinVersion::kV1 : RelinVersion::kV2, r1 ? &*r1 : nullptr,
                        r2 ? &*r2 : nullptr);
  circuit::Word y = circuit::LrEvaluate(ev, cfg, enc);
  for (const auto& b : y) {
    if (!b.known) CheckBudget(*ctx, b.ct, kp.sk, Decrypt(*ctx, b.ct, kp.sk));
  }
  const std::int64_t got = circuit::DecryptWord(*ctx, kp.sk, y);
  const std::int64_t want = circuit::LrPlain(cfg, fixed);
  std::cout << "inputs";
  for (auto v : fixed) std::cout << " " << v;
  std::cout << "\nc1 " << cfg.c1() << " c3 " << cfg.c3() << " frac_bits " << cfg.frac_bits << "\n"
            << "encrypted Y " << got << " (" << static_cast<double>(got) / cfg.scale << ")\n"
            << "plaintext Y " << want << " (" << static_cast<double>(want) / cfg.scale << ")\n"
            << "depth " << circuit::Depth(y) << " and " << ev.stats().and_gates << " xor "
            << ev.stats().xor_gates << "\n"
            << (got == want ? "match" : "MISMATCH") << "\n";
  return got == want ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rahl: FV somewhat homomorphic encryption toolkit"};
  app.require_subcommand(1);
  Flags f;

  auto* params = app.add_subcommand("params", "generate a parameter file");
  params->add_option("--n", f.n, "ring degree")->capture_default_str();
  params->add_option("--t", f.t, "plaintext modulus")->capture_default_str();
  params->add_option("--k", f.k, "number of RNS moduli")->capture_default_str();
  params->add_option("--bits", f.bits, "bits per modulus")->capture_default_str();
  params->add_option("--sigma", f.sigma, "noise deviation")->capture_default_str();
  params->add_option("--seed", f.seed, "seed recorded for keygen/encrypt");
  params->add_option("--relin-base", f.relin_base, "relinearisation base T")
      ->capture_default_str();
  params->add_option("--out", f.out, "output file")->required();

  auto* keygen = app.add_subcommand("keygen", "generate sk, pk and both relin keys");
  keygen->add_option("--params", f.params, "parameter file")->required();
  keygen->add_option("--out-prefix", f.out_prefix, "output prefix P")->required();
  keygen->add_option("--seed", f.seed, "override the parameter seed");

  auto* encrypt = app.add_subcommand("encrypt", "encrypt a bitstring");
  encrypt->add_option("--pk", f.pk, "public key")->required();
  encrypt->add_option("--params", f.params, "parameter file (default: next to --pk)");
  encrypt->add_option("--message", f.message, "bitstring, zero-padded to n");
  encrypt->add_option("--infile", f.infile, "file holding the bitstring");
  encrypt->add_option("--out", f.out, "ciphertext file")->required();
  encrypt->add_option("--seed", f.seed, "override the parameter seed");

  auto* eval = app.add_subcommand("eval", "homomorphic add (XOR) or mul (AND)");
  eval->add_option("op", f.op, "add or mul")->required()->check(CLI::IsMember({"add", "mul"}));
  eval->add_option("--in", f.in, "two ciphertexts")->required()->expected(2);
  eval->add_option("--out", f.out, "result ciphertext")->required();
  eval->add_option("--relin", f.relin, "v1 or v2")->check(CLI::IsMember({"v1", "v2"}));
  eval->add_option("--keys", f.keys, "relinearisation key file");
  eval->add_option("--params", f.params, "parameter file (default: next to --keys)");

  auto* decrypt = app.add_subcommand("decrypt", "decrypt and print the bitstring");
  decrypt->add_option("--sk", f.sk, "secret key")->required();
  decrypt->add_option("--in", f.in, "ciphertext")->required()->expected(1);
  decrypt->add_option("--params", f.params, "parameter file (default: next to --sk)");

  auto* probe = app.add_subcommand("depth-probe", "square enc(1...1) until decryption fails");
  probe->add_option("--keys-prefix", f.keys_prefix, "prefix P from keygen")->required();
  probe->add_option("--relin", f.relin, "v1 or v2")->check(CLI::IsMember({"v1", "v2"}));
  probe->add_option("--max-depth", f.max_depth, "stop after this many squarings")
      ->capture_default_str();
  probe->add_option("--params", f.params, "parameter file (default: P.params)");
  probe->add_option("--seed", f.seed, "override the parameter seed");

  auto* bench = app.add_subcommand("bench", "operation counts and timings as CSV");
  bench->add_option("--suite", f.suite, "kernels or scheme")
      ->required()
      ->check(CLI::IsMember({"kernels", "scheme"}));
  bench->add_option("--out", f.out, "CSV file (default: stdout)");
  bench->add_option("--params", f.params, "parameter file for the scheme suite");
  bench->add_option("--n", f.n, "ring degree")->capture_default_str();
  bench->add_option("--k", f.k, "number of moduli")->capture_default_str();
  bench->add_option("--seed", f.seed, "seed");

  auto* lr = app.add_subcommand("lr-demo", "encrypted logistic-regression prediction");
  lr->add_option("--features", f.features, "x0..x3")->required()->delimiter(',');
  lr->add_option("--scale", f.scale, "fixed-point scale (power of two)")->capture_default_str();
  lr->add_option("--weights", f.weights, "integer weights b_i (default 1)")->delimiter(',');
  lr->add_option("--width", f.width, "word width in bits")->capture_default_str();
  lr->add_option("--frac-bits", f.frac_bits, "coefficient precision")->capture_default_str();
  lr->add_option("--relin", f.relin, "v1 or v2")
      ->default_str("v2")
      ->check(CLI::IsMember({"v1", "v2"}));
  lr->add_option("--params", f.params, "parameter file (default n=16, k=6)");
  lr->add_option("--seed", f.seed, "seed");

  BindEnvironment(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*params) return CmdParams(f);
    if (*keygen) return CmdKeygen(f);
    if (*encrypt) return CmdEncrypt(f);
    if (*eval) return CmdEval(f);
    if (*decrypt) return CmdDecrypt(f);
    if (*probe) return CmdDepthProbe(f);
    if (*bench) return CmdBench(f);
    if (*lr) return CmdLrDemo(f);
  } catch (const Error& e) {
    std::cerr << "rahl: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    std::cerr << "rahl: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
