// Python bindings for the main operations: presets, keygen, encrypt/decrypt,
// add/mul/refresh, polynomial evaluation, noise formulas, and the BCH pipeline.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bckks/bch.hpp"
#include "bckks/eval.hpp"
#include "bckks/presets.hpp"

namespace py = pybind11;
using namespace bckks;

namespace {

Rng make_rng(const std::string& seed_hex, std::uint64_t stream) {
    return Rng(RngHandle::from_hex(seed_hex, stream));
}

std::array<std::uint8_t, 32> seed_from_bytes(const py::bytes& b) {
    std::string s = b;
    if (s.size() > 32) throw ParamError("permutation seed: at most 32 bytes");
    std::array<std::uint8_t, 32> seed{};
    for (std::size_t i = 0; i < s.size(); ++i) seed[i] = std::uint8_t(s[i]);
    return seed;
}

}  // namespace

PYBIND11_MODULE(bckks, m) {
    m.doc() = "binary-coefficient approximate HE with a BCH outer layer";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<OverflowError>(m, "CoeffOverflowError", PyExc_OverflowError);
    py::register_exception<DecodeFailure>(m, "DecodeFailure", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::enum_<Domain>(m, "Domain").value("Exact", Domain::Exact).value("Modular", Domain::Modular);
    py::enum_<DecodeMode>(m, "DecodeMode")
        .value("Exact", DecodeMode::Exact)
        .value("Approximate", DecodeMode::Approximate);

    py::class_<RingParams>(m, "RingParams")
        .def_static("exact", &RingParams::exact, py::arg("N"), py::arg("lambda_B"))
        .def_static("modular", &RingParams::modular, py::arg("N"), py::arg("lambda_B"),
                    py::arg("q"))
        .def_readonly("N", &RingParams::N)
        .def_readonly("lambda_B", &RingParams::lambda_B)
        .def_readonly("K", &RingParams::K)
        .def_readonly("domain", &RingParams::domain)
        .def_readonly("q", &RingParams::q);

    py::class_<Context>(m, "Context")
        .def_readonly("ring", &Context::ring)
        .def_readwrite("sigma", &Context::sigma)
        .def_readwrite("h", &Context::h)
        .def_readwrite("delta", &Context::delta)
        .def_readwrite("B_star", &Context::B_star)
        .def_readwrite("B_max", &Context::B_max)
        .def_readwrite("kappa", &Context::kappa);

    m.def("preset_names", &preset_names);
    m.def("get_preset", &get_preset, py::arg("name"));
    m.def("with_domain", &with_domain, py::arg("ctx"), py::arg("domain"),
          py::arg("q") = kDefaultModulus);
    m.attr("DEFAULT_MODULUS") = py::int_(kDefaultModulus);

    py::class_<KeySet>(m, "KeySet");
    py::class_<Ciphertext>(m, "Ciphertext")
        .def_readonly("noise_bound", &Ciphertext::noise_bound)
        .def_readonly("scale", &Ciphertext::scale);

    m.def(
        "keygen",
        [](const Context& ctx, const std::string& seed, bool refresh_key, bool test_mode_rk) {
            Rng rng = make_rng(seed, 0);
            KeygenOptions opts;
            opts.with_refresh_key = refresh_key;
            opts.test_mode_rk = test_mode_rk;
            return keygen(ctx, rng, opts);
        },
        py::arg("ctx"), py::arg("seed") = "00", py::arg("refresh_key") = false,
        py::arg("test_mode_rk") = false);

    m.def(
        "encrypt",
        [](const Context& ctx, const KeySet& ks, const PlainVec& z, const std::string& seed) {
            Rng rng = make_rng(seed, 1);
            return encrypt(ctx, ks.pk, encode(z, ctx.delta, ctx.ring), rng);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("slots"), py::arg("seed") = "00");

    m.def(
        "decrypt",
        [](const Context& ctx, const KeySet& ks, const Ciphertext& c, DecodeMode mode) {
            return decrypt(ctx, ks.sk, c, mode);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("ct"), py::arg("mode") = DecodeMode::Exact);

    m.def("add", &add, py::arg("ctx"), py::arg("c1"), py::arg("c2"));
    m.def(
        "mul",
        [](const Context& ctx, const KeySet& ks, const Ciphertext& c1, const Ciphertext& c2) {
            return mult(ctx, ks.evk, c1, c2);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("c1"), py::arg("c2"));
    m.def(
        "refresh",
        [](const Context& ctx, const KeySet& ks, const Ciphertext& c, const std::string& seed,
           bool zero_flooding) {
            Rng rng = make_rng(seed, 2);
            return refresh(ctx, ks, c, rng, zero_flooding);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("ct"), py::arg("seed") = "00",
        py::arg("zero_flooding") = false);

    m.def(
        "eval_poly",
        [](const Context& ctx, const KeySet& ks, const Ciphertext& c,
           const std::vector<double>& coeffs, const std::string& seed) {
            Rng rng = make_rng(seed, 3);
            EvalContext ec(ctx, ks, rng);
            EvalResult res = poly_eval(c, coeffs, ec);
            return py::make_tuple(res.ct, res.b_f_lemma6, ec.refresh_count);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("ct"), py::arg("coeffs"),
        py::arg("seed") = "00");

    m.def(
        "eval_exp",
        [](const Context& ctx, const KeySet& ks, const Ciphertext& c, double eps,
           const std::string& seed) {
            Rng rng = make_rng(seed, 3);
            EvalContext ec(ctx, ks, rng);
            SeriesSpec s;
            s.coeff = [](std::size_t j) {
                double v = 1.0;
                for (std::size_t i = 2; i <= j; ++i) v /= double(i);
                return v;
            };
            s.Q = 1.0;
            s.epsilon = eps;
            EvalResult res = analytic_eval(c, s, ec);
            return py::make_tuple(res.ct, res.b_f_lemma6, ec.refresh_count);
        },
        py::arg("ctx"), py::arg("keys"), py::arg("ct"), py::arg("eps") = 1e-4,
        py::arg("seed") = "00");

    // Noise formulas over a plain dict-like parameter object.
    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init<>())
        .def_readwrite("sigma", &NoiseParams::sigma)
        .def_readwrite("h", &NoiseParams::h)
        .def_readwrite("N", &NoiseParams::N)
        .def_readwrite("delta", &NoiseParams::delta)
        .def_readwrite("B", &NoiseParams::B)
        .def_readwrite("P", &NoiseParams::P)
        .def_readwrite("q_ell", &NoiseParams::q_ell);
    m.def("b_enc", &b_enc);
    m.def("b_ecd", &b_ecd);
    m.def("b_add", &b_add);
    m.def("b_mult_bin", &b_mult_bin);
    m.def("b_mult_std", &b_mult_std);
    m.def("prop1_threshold", &prop1_threshold);
    m.def("prop1_predicate", &prop1_predicate);

    // BCH pipeline: bits in/out as lists of 0/1, flips by coefficient index.
    py::class_<bch::FailureModel>(m, "FailureModel")
        .def_readonly("p_bit", &bch::FailureModel::p_bit)
        .def_readonly("lam", &bch::FailureModel::lambda)
        .def_readonly("pr_block", &bch::FailureModel::pr_block)
        .def_readonly("success", &bch::FailureModel::success);
    m.def("bch_failure_prob", &bch::failure_prob, py::arg("p_coef"), py::arg("lambda_B"),
          py::arg("n"), py::arg("t"), py::arg("blocks"));

    m.def(
        "bch_pipeline_encode",
        [](const std::vector<int>& message, const py::bytes& perm_seed,
           const std::vector<std::size_t>& flips) {
            bch::BchCode code = bch::build_code(7, 3, bch::kPrimPolyM7);
            bch::PipelineParams pp;
            pp.M_bits = message.size();
            bch::Bits msg(message.begin(), message.end());
            bch::Permutation perm =
                bch::make_permutation(code.n * pp.h_blocks(), seed_from_bytes(perm_seed));
            BPoly packed = bch::pre_encode(msg, code, perm, pp);
            if (!flips.empty()) {
                bch::FlipLedger ledger;
                packed = bch::inject_flips(packed, flips, ledger);
            }
            std::vector<long long> out(packed.coeffs.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = (long long)packed.coeffs[i];
            return out;
        },
        py::arg("message"), py::arg("perm_seed") = py::bytes(""),
        py::arg("flips") = std::vector<std::size_t>{});

    m.def(
        "bch_pipeline_decode",
        [](const std::vector<long long>& coeffs, std::size_t M_bits,
           const py::bytes& perm_seed) {
            bch::BchCode code = bch::build_code(7, 3, bch::kPrimPolyM7);
            bch::PipelineParams pp;
            pp.M_bits = M_bits;
            bch::Permutation perm =
                bch::make_permutation(code.n * pp.h_blocks(), seed_from_bytes(perm_seed));
            BPoly noisy;
            noisy.coeffs.assign(coeffs.begin(), coeffs.end());
            bch::Bits msg = bch::post_decode(noisy, code, perm, pp);
            return std::vector<int>(msg.begin(), msg.end());
        },
        py::arg("coeffs"), py::arg("M_bits") = std::size_t(8192),
        py::arg("perm_seed") = py::bytes(""));
}
