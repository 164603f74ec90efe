// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rahl/circuit.hpp"
#include "rahl/error.hpp"
#include "rahl/relin.hpp"
#include "rahl/serialize.hpp"

namespace py = pybind11;
using namespace rahl;

namespace {

struct Context {
  ContextPtr ctx;
};

std::vector<std::uint8_t> Bits(const std::vector<int>& m) {
  std::vector<std::uint8_t> out;
  out.reserve(m.size());
  for (int b : m) {
    RAHL_CHECK(b == 0 || b == 1, ErrorCode::kNonBinaryMessage, "message bits must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

std::vector<int> Ints(const std::vector<std::uint8_t>& m) { return {m.begin(), m.end()}; }

}  // namespace

PYBIND11_MODULE(_rahl, m) {
  m.doc() = "FV somewhat homomorphic encryption over R_Q with binary plaintexts";

  static py::exception<Error> error(m, "RahlError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Context>(m, "Context")
      .def(py::init([](std::size_t n, std::size_t k, unsigned bits, double sigma,
                       std::uint64_t seed) {
             return Context{FvContext::Create(GenerateParameters(n, 2, k, bits, sigma, seed))};
           }),
           py::arg("n"), py::arg("k"), py::arg("bits") = 30, py::arg("sigma") = 3.2,
           py::arg("seed") = 0)
      .def_property_readonly("n", [](const Context& c) { return c.ctx->n(); })
      .def_property_readonly("k", [](const Context& c) { return c.ctx->basis()->k(); })
      .def_property_readonly("moduli", [](const Context& c) { return c.ctx->params().moduli; })
      .def_property_readonly("q_bits", [](const Context& c) { return c.ctx->Q().BitLength(); })
      .def_property_readonly("ell", [](const Context& c) { return c.ctx->params().ell; })
      .def_property_readonly("params_text", [](const Context& c) { return c.ctx->params().ToText(); });

  py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t, std::string>(), py::arg("seed"),
                                py::arg("label") = "python");

  py::class_<SecretKey>(m, "SecretKey");
  py::class_<PublicKey>(m, "PublicKey");
  py::class_<KeyPair>(m, "KeyPair")
      .def_readonly("sk", &KeyPair::sk)
      .def_readonly("pk", &KeyPair::pk);
  py::class_<Ciphertext>(m, "Ciphertext").def_property_readonly("degree", &Ciphertext::degree);
  py::class_<RelinKeysV1>(m, "RelinKeysV1");
  py::class_<RelinKeysV2>(m, "RelinKeysV2");

  m.def("keygen", [](const Context& c, Rng& rng) { return KeyGen(*c.ctx, rng); });
  m.def("relin_keygen_v1",
        [](const Context& c, const SecretKey& sk, Rng& rng) { return RelinKeyGenV1(*c.ctx, sk, rng); });
  m.def("relin_keygen_v2",
        [](const Context& c, const SecretKey& sk, Rng& rng) { return RelinKeyGenV2(*c.ctx, sk, rng); });
  m.def("encrypt", [](const Context& c, const PublicKey& pk, const std::vector<int>& bits, Rng& rng) {
    return Encrypt(*c.ctx, pk, Bits(bits), rng);
  });
  m.def("decrypt", [](const Context& c, const Ciphertext& ct, const SecretKey& sk) {
    return Ints(Decrypt(*c.ctx, ct, sk));
  });
  m.def("add", &HomAdd);
  m.def("mul", [](const Context& c, const Ciphertext& a, const Ciphertext& b) {
    return HomMul(*c.ctx, a, b);
  });
  m.def("relinearize_v1", [](const Context& c, const Ciphertext& ct, const RelinKeysV1& keys) {
    return RelinearizeV1(*c.ctx, ct, keys);
  });
  m.def("relinearize_v2", [](const Context& c, const Ciphertext& ct, const RelinKeysV2& keys) {
    return RelinearizeV2(*c.ctx, ct, keys);
  });
  m.def("noise_budget", [](const Context& c, const Ciphertext& ct, const SecretKey& sk,
                           const std::vector<int>& bits) {
    return NoiseBudget(*c.ctx, ct, sk, Bits(bits));
  });
  m.def("ring_mul", [](const std::vector<int>& a, const std::vector<int>& b) {
    return Ints(PlainMul(Bits(a), Bits(b)));
  });
  m.def("to_bytes", [](const Context& c, const Ciphertext& ct) {
    return py::bytes(ToBytes(*c.ctx, ct));
  });
  m.def("lr_plain",
        [](const std::vector<std::int64_t>& features, unsigned width, unsigned scale,
           unsigned frac_bits, const std::vector<std::int64_t>& weights) {
          circuit::LrConfig cfg{width, scale, frac_bits, weights};
          return circuit::LrPlain(cfg, features);
        },
        py::arg("features"), py::arg("width") = 16, py::arg("scale") = 8,
        py::arg("frac_bits") = 10, py::arg("weights") = std::vector<std::int64_t>{});
}
