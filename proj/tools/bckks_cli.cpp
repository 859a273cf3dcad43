// bckks: command-line front end over the library. Exit codes: 0 ok,
// 2 parameter error, 3 decode failure, 4 I/O error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bckks/bch.hpp"
#include "bckks/eval.hpp"
#include "bckks/presets.hpp"
#include "bckks/serialize.hpp"

using namespace bckks;
using Clock = std::chrono::steady_clock;

namespace {

// Options shared by every subcommand.
struct Common {
    std::string preset = "desk-256";
    std::string seed = "00";
    bool exact = false;
    std::uint64_t modular_q = 0;
    CLI::Option* modular_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "parameter preset")->default_val(preset);
        cmd->add_option("--seed", seed, "hex RNG seed (up to 64 digits)");
        auto* ex = cmd->add_flag("--exact", exact, "force the Exact coefficient domain");
        modular_opt = cmd->add_option("--modular", modular_q,
                                      "force the Modular domain (optional modulus q)")
                          ->excludes(ex)
                          ->expected(0, 1);
    }

    Context context() const {
        Context ctx = get_preset(preset);
        if (exact) ctx = with_domain(ctx, Domain::Exact);
        else if (modular_opt && modular_opt->count() > 0)
            ctx = with_domain(ctx, Domain::Modular,
                              modular_q != 0 ? modular_q : kDefaultModulus);
        return ctx;
    }

    Rng rng(std::uint64_t stream = 0) const { return Rng(RngHandle::from_hex(seed, stream)); }
};

PlainVec read_vec(const std::string& path, std::size_t slots) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file: " + path);
    PlainVec z;
    double re, im;
    while (in >> re >> im) z.push_back({re, im});
    if (z.size() != slots)
        throw ParamError("vector file has " + std::to_string(z.size()) + " slots, expected " +
                         std::to_string(slots));
    return z;
}

void write_vec(const std::string& path, const PlainVec& z) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) throw IoError("cannot write vector file: " + path);
        out = &file;
    }
    out->precision(17);
    for (const auto& s : z) *out << s.real() << " " << s.imag() << "\n";
}

void read_bits(const std::string& path, bch::Bits& bits) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open bit file: " + path);
    std::string line;
    while (std::getline(in, line))
        for (char c : line) {
            if (c == '0' || c == '1') bits.push_back(std::uint8_t(c - '0'));
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw ParamError(std::string("bit file: unexpected character '") + c + "'");
        }
}

struct Stats {
    double median_us, mean_us;
};

template <typename Op>
Stats time_op(std::size_t trials, Op&& op) {
    std::vector<double> v(trials);
    for (auto& t : v) {
        auto t0 = Clock::now();
        op();
        t = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
    }
    std::sort(v.begin(), v.end());
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(trials);
    double med = trials % 2 ? v[trials / 2] : 0.5 * (v[trials / 2 - 1] + v[trials / 2]);
    return {med, mean};
}

CodeArtifact default_code() {
    CodeArtifact ca;
    ca.code = bch::build_code(7, 3, bch::kPrimPolyM7);
    ca.pipeline = bch::PipelineParams{};
    return ca;
}

int run(CLI::App& app, int argc, char** argv) {
    // ---- keygen ----
    auto* keygen_cmd = app.add_subcommand("keygen", "generate sk/pk/evk (and optionally rk)");
    Common kg_common;
    kg_common.attach(keygen_cmd);
    std::string kg_out = ".";
    bool kg_refresh = false, kg_test_rk = false;
    keygen_cmd->add_option("--out", kg_out, "output directory")->default_val(".");
    keygen_cmd->add_flag("--refresh-key", kg_refresh, "also generate the refresh key");
    keygen_cmd->add_flag("--test-mode-rk", kg_test_rk, "noiseless refresh key (testing only)");

    // ---- encrypt ----
    auto* enc_cmd = app.add_subcommand("encrypt", "encode + encrypt a slot vector");
    Common enc_common;
    enc_common.attach(enc_cmd);
    std::string enc_pk, enc_in, enc_out = "ct.bin";
    enc_cmd->add_option("--pk", enc_pk, "public key file")->required();
    enc_cmd->add_option("--in", enc_in, "input vector file ('re im' per line)")->required();
    enc_cmd->add_option("--out", enc_out, "output ciphertext file");

    // ---- decrypt ----
    auto* dec_cmd = app.add_subcommand("decrypt", "decrypt + decode to a slot vector");
    Common dec_common;
    dec_common.attach(dec_cmd);
    std::string dec_sk, dec_in, dec_out;
    bool dec_approx = false;
    dec_cmd->add_option("--sk", dec_sk, "secret key file")->required();
    dec_cmd->add_option("--in", dec_in, "input ciphertext file")->required();
    dec_cmd->add_option("--out", dec_out, "output vector file (default stdout)");
    dec_cmd->add_flag("--approximate", dec_approx, "skip the exact-mode rounding");

    // ---- add ----
    auto* add_cmd = app.add_subcommand("add", "homomorphic addition of two ciphertexts");
    Common add_common;
    add_common.attach(add_cmd);
    std::vector<std::string> add_in;
    std::string add_out = "sum.bin";
    add_cmd->add_option("--in", add_in, "two ciphertext files")->expected(2)->required();
    add_cmd->add_option("--out", add_out, "output ciphertext file");

    // ---- mul ----
    auto* mul_cmd = app.add_subcommand("mul", "relinearized homomorphic multiplication");
    Common mul_common;
    mul_common.attach(mul_cmd);
    std::vector<std::string> mul_in;
    std::string mul_evk, mul_out = "prod.bin";
    mul_cmd->add_option("--in", mul_in, "two ciphertext files")->expected(2)->required();
    mul_cmd->add_option("--evk", mul_evk, "evaluation key file")->required();
    mul_cmd->add_option("--out", mul_out, "output ciphertext file");

    // ---- refresh ----
    auto* rf_cmd = app.add_subcommand("refresh", "homomorphic re-encryption");
    Common rf_common;
    rf_common.attach(rf_cmd);
    std::string rf_pk, rf_rk, rf_in, rf_out = "refreshed.bin";
    rf_cmd->add_option("--pk", rf_pk, "public key file")->required();
    rf_cmd->add_option("--rk", rf_rk, "refresh key file")->required();
    rf_cmd->add_option("--in", rf_in, "input ciphertext file")->required();
    rf_cmd->add_option("--out", rf_out, "output ciphertext file");

    // ---- eval-poly ----
    auto* ep_cmd = app.add_subcommand("eval-poly", "evaluate sum_j a_j x^j on a ciphertext");
    Common ep_common;
    ep_common.attach(ep_cmd);
    std::vector<double> ep_coeffs;
    std::string ep_evk, ep_pk, ep_rk, ep_in, ep_out = "eval.bin";
    ep_cmd->add_option("--coeffs", ep_coeffs, "a_0 a_1 ... (ascending degree)")->required();
    ep_cmd->add_option("--evk", ep_evk, "evaluation key file")->required();
    ep_cmd->add_option("--pk", ep_pk, "public key file")->required();
    ep_cmd->add_option("--rk", ep_rk, "refresh key file (optional)");
    ep_cmd->add_option("--in", ep_in, "input ciphertext file")->required();
    ep_cmd->add_option("--out", ep_out, "output ciphertext file");

    // ---- eval-exp ----
    auto* ee_cmd = app.add_subcommand("eval-exp", "evaluate exp via its truncated series");
    Common ee_common;
    ee_common.attach(ee_cmd);
    double ee_eps = 1e-4, ee_Q = 1.0;
    std::string ee_evk, ee_pk, ee_rk, ee_in, ee_out = "exp.bin";
    ee_cmd->add_option("--eps", ee_eps, "series tail tolerance");
    ee_cmd->add_option("--domain-bound", ee_Q, "evaluation domain |x| <= Q");
    ee_cmd->add_option("--evk", ee_evk, "evaluation key file")->required();
    ee_cmd->add_option("--pk", ee_pk, "public key file")->required();
    ee_cmd->add_option("--rk", ee_rk, "refresh key file (optional)");
    ee_cmd->add_option("--in", ee_in, "input ciphertext file")->required();
    ee_cmd->add_option("--out", ee_out, "output ciphertext file");

    // ---- bch-encode ----
    auto* be_cmd = app.add_subcommand("bch-encode", "pipeline pre-encode of a bit message");
    Common be_common;
    be_common.attach(be_cmd);
    std::string be_in, be_out = "packed.txt";
    std::size_t be_flips = 0;
    be_cmd->add_option("--in", be_in, "message bit file (characters 0/1)")->required();
    be_cmd->add_option("--out", be_out, "output coefficient file");
    be_cmd->add_option("--flips", be_flips, "inject this many random coefficient flips");

    // ---- bch-decode ----
    auto* bd_cmd = app.add_subcommand("bch-decode", "pipeline post-decode to a bit message");
    Common bd_common;
    bd_common.attach(bd_cmd);
    std::string bd_in, bd_out;
    bd_cmd->add_option("--in", bd_in, "input coefficient file")->required();
    bd_cmd->add_option("--out", bd_out, "output bit file (default stdout)");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "operation timings (CSV)");
    Common bench_common;
    bench_common.attach(bench_cmd);
    std::size_t bench_trials = 20;
    std::string bench_out;
    bench_cmd->add_option("--trials", bench_trials, "trials per operation");
    bench_cmd->add_option("--out", bench_out, "CSV output file (default stdout)");

    // ---- noise-report ----
    auto* nr_cmd = app.add_subcommand("noise-report", "analytic bounds and memory model");
    Common nr_common;
    nr_common.attach(nr_cmd);

    app.require_subcommand(1);
    app.parse(argc, argv);

    if (*keygen_cmd) {
        Context ctx = kg_common.context();
        Rng rng = kg_common.rng();
        KeygenOptions opts;
        opts.with_refresh_key = kg_refresh;
        opts.test_mode_rk = kg_test_rk;
        KeySet ks = keygen(ctx, rng, opts);
        save_sk(kg_out + "/sk.bin", ctx, ks.sk);
        save_pk(kg_out + "/pk.bin", ctx, ks.pk);
        save_evk(kg_out + "/evk.bin", ctx, ks.evk);
        if (ks.rk) save_rk(kg_out + "/rk.bin", ctx, *ks.rk);
        std::cout << "wrote sk.bin pk.bin evk.bin" << (ks.rk ? " rk.bin" : "") << " to "
                  << kg_out << "\n";
    } else if (*enc_cmd) {
        Context ctx = enc_common.context();
        Rng rng = enc_common.rng(1);
        PublicKey pk = load_pk(enc_pk, ctx);
        PlainVec z = read_vec(enc_in, ctx.ring.N / 2);
        Ciphertext c = encrypt(ctx, pk, encode(z, ctx.delta, ctx.ring), rng);
        save_ct(enc_out, ctx, c);
    } else if (*dec_cmd) {
        Context ctx = dec_common.context();
        SecretKey sk = load_sk(dec_sk, ctx);
        Ciphertext c = load_ct(dec_in, ctx);
        write_vec(dec_out, decrypt(ctx, sk, c,
                                   dec_approx ? DecodeMode::Approximate : DecodeMode::Exact));
    } else if (*add_cmd) {
        Context ctx = add_common.context();
        Ciphertext c = add(ctx, load_ct(add_in[0], ctx), load_ct(add_in[1], ctx));
        save_ct(add_out, ctx, c);
    } else if (*mul_cmd) {
        Context ctx = mul_common.context();
        EvalKey evk = load_evk(mul_evk, ctx);
        Ciphertext c = mult(ctx, evk, load_ct(mul_in[0], ctx), load_ct(mul_in[1], ctx));
        save_ct(mul_out, ctx, c);
    } else if (*rf_cmd) {
        Context ctx = rf_common.context();
        Rng rng = rf_common.rng(2);
        KeySet ks;
        ks.pk = load_pk(rf_pk, ctx);
        ks.rk = load_rk(rf_rk, ctx);
        save_ct(rf_out, ctx, refresh(ctx, ks, load_ct(rf_in, ctx), rng));
    } else if (*ep_cmd || *ee_cmd) {
        Common& com = *ep_cmd ? ep_common : ee_common;
        Context ctx = com.context();
        Rng rng = com.rng(3);
        KeySet ks;
        ks.pk = load_pk(*ep_cmd ? ep_pk : ee_pk, ctx);
        ks.evk = load_evk(*ep_cmd ? ep_evk : ee_evk, ctx);
        const std::string& rk_path = *ep_cmd ? ep_rk : ee_rk;
        if (!rk_path.empty()) ks.rk = load_rk(rk_path, ctx);
        Ciphertext c = load_ct(*ep_cmd ? ep_in : ee_in, ctx);
        EvalContext ec(ctx, ks, rng);
        EvalResult res;
        if (*ep_cmd) {
            res = poly_eval(c, ep_coeffs, ec);
        } else {
            SeriesSpec s;
            s.coeff = [](std::size_t j) {
                double v = 1.0;
                for (std::size_t i = 2; i <= j; ++i) v /= double(i);
                return v;
            };
            s.Q = ee_Q;
            s.epsilon = ee_eps;
            res = analytic_eval(c, s, ec);
        }
        save_ct(*ep_cmd ? ep_out : ee_out, ctx, res.ct);
        std::cout << "scale " << res.ct.scale << ", tracked bound " << res.ct.noise_bound
                  << ", Lemma-6 B_f " << res.b_f_lemma6 << ", refreshes " << ec.refresh_count
                  << " (+" << ec.refresh_skipped << " skipped)\n";
    } else if (*be_cmd) {
        CodeArtifact ca = default_code();
        bch::Bits msg;
        read_bits(be_in, msg);
        if (msg.size() != ca.pipeline.M_bits)
            throw ParamError("message has " + std::to_string(msg.size()) + " bits, expected " +
                             std::to_string(ca.pipeline.M_bits));
        bch::Permutation perm =
            bch::make_permutation(ca.code.n * ca.pipeline.h_blocks(), ca.perm_seed);
        BPoly packed = bch::pre_encode(msg, ca.code, perm, ca.pipeline);
        if (be_flips > 0) {
            Rng rng = be_common.rng(4);
            std::vector<std::size_t> pattern;
            while (pattern.size() < be_flips) {
                std::size_t p = rng.uniform_below(packed.coeffs.size());
                if (std::find(pattern.begin(), pattern.end(), p) == pattern.end())
                    pattern.push_back(p);
            }
            bch::FlipLedger ledger;
            packed = bch::inject_flips(packed, pattern, ledger);
            std::cout << "injected " << ledger.flipped.size() << " flips\n";
        }
        std::ofstream out(be_out);
        if (!out) throw IoError("cannot write coefficient file: " + be_out);
        for (auto c : packed.coeffs) out << to_string_i128(c) << "\n";
    } else if (*bd_cmd) {
        CodeArtifact ca = default_code();
        std::ifstream in(bd_in);
        if (!in) throw IoError("cannot open coefficient file: " + bd_in);
        BPoly noisy;
        long long v;
        while (in >> v) noisy.coeffs.push_back(v);
        bch::Permutation perm =
            bch::make_permutation(ca.code.n * ca.pipeline.h_blocks(), ca.perm_seed);
        bch::Bits msg = bch::post_decode(noisy, ca.code, perm, ca.pipeline);
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!bd_out.empty() && bd_out != "-") {
            file.open(bd_out);
            if (!file) throw IoError("cannot write bit file: " + bd_out);
            out = &file;
        }
        for (auto b : msg) *out << int(b);
        *out << "\n";
    } else if (*bench_cmd) {
        if (bench_trials == 0) throw ParamError("bench: --trials must be positive");
        Context ctx = bench_common.context();
        Rng rng = bench_common.rng(5);
        KeySet ks = keygen(ctx, rng);
        // Encode at a Delta that always satisfies the bin_expand precondition.
        double delta_safe = std::min(ctx.delta, std::ldexp(1.0, int(ctx.ring.lambda_B) - 4));
        PlainVec z(ctx.ring.N / 2, {1.0, 0.0});
        BPoly m = encode(z, delta_safe, ctx.ring);
        Ciphertext ca = encrypt(ctx, ks.pk, m, rng);
        Ciphertext cb = encrypt(ctx, ks.pk, m, rng);
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!bench_out.empty() && bench_out != "-") {
            file.open(bench_out);
            if (!file) throw IoError("cannot write CSV file: " + bench_out);
            out = &file;
        }
        *out << "preset,op,trials,median_us,mean_us\n";
        auto row = [&](const std::string& op, Stats s) {
            *out << bench_common.preset << "," << op << "," << bench_trials << "," << s.median_us
                 << "," << s.mean_us << "\n";
        };
        row("encode", time_op(bench_trials, [&] { encode(z, delta_safe, ctx.ring); }));
        row("encrypt", time_op(bench_trials, [&] { encrypt(ctx, ks.pk, m, rng); }));
        row("decrypt", time_op(bench_trials, [&] { decrypt_raw(ctx, ks.sk, ca); }));
        row("add", time_op(bench_trials, [&] { add(ctx, ca, cb); }));
        row("mult", time_op(bench_trials, [&] { mult(ctx, ks.evk, ca, cb); }));
        // BCH stage table: enc, perm, inv-perm, dec, total.
        CodeArtifact cart = default_code();
        const bch::BchCode& code = cart.code;
        const bch::PipelineParams& pp = cart.pipeline;
        bch::Permutation perm = bch::make_permutation(code.n * pp.h_blocks(), cart.perm_seed);
        bch::Bits msg(pp.M_bits);
        for (auto& b : msg) b = std::uint8_t(rng.uniform_below(2));
        std::vector<bch::Bits> codewords;
        Stats s_enc = time_op(bench_trials, [&] {
            codewords.clear();
            for (std::size_t blk = 0; blk < pp.h_blocks(); ++blk) {
                bch::Bits u(code.k, 0);
                for (std::size_t j = 0; j < pp.k_pipe; ++j) {
                    std::size_t idx = blk * pp.k_pipe + j;
                    if (idx < msg.size()) u[j] = msg[idx];
                }
                codewords.push_back(bch_encode(code, u));
            }
        });
        std::vector<std::uint8_t> concat, permuted, restored;
        concat.reserve(code.n * pp.h_blocks());
        for (const auto& cw : codewords) concat.insert(concat.end(), cw.begin(), cw.end());
        Stats s_perm = time_op(bench_trials, [&] {
            permuted.assign(concat.size(), 0);
            for (std::size_t j = 0; j < concat.size(); ++j)
                permuted[perm.forward[j]] = concat[j];
        });
        Stats s_inv = time_op(bench_trials, [&] {
            restored.assign(permuted.size(), 0);
            for (std::size_t p = 0; p < permuted.size(); ++p)
                restored[perm.inverse[p]] = permuted[p];
        });
        Stats s_dec = time_op(bench_trials, [&] {
            for (std::size_t blk = 0; blk < pp.h_blocks(); ++blk) {
                bch::Bits r(restored.begin() + blk * code.n,
                            restored.begin() + (blk + 1) * code.n);
                bch_decode(code, r);
            }
        });
        row("bch_enc", s_enc);
        row("bch_perm", s_perm);
        row("bch_inv_perm", s_inv);
        row("bch_dec", s_dec);
        row("bch_total", Stats{s_enc.median_us + s_perm.median_us + s_inv.median_us +
                                   s_dec.median_us,
                               s_enc.mean_us + s_perm.mean_us + s_inv.mean_us + s_dec.mean_us});
    } else if (*nr_cmd) {
        Context ctx = nr_common.context();
        NoiseParams p = ctx.noise();
        std::cout << "preset " << nr_common.preset << ": N=" << ctx.ring.N
                  << " lambda_B=" << ctx.ring.lambda_B << " K=" << ctx.ring.K
                  << " sigma=" << ctx.sigma << " h=" << ctx.h << " Delta=" << ctx.delta
                  << (ctx.ring.domain == Domain::Exact
                          ? " (Exact)\n"
                          : " (Modular q=" + std::to_string(ctx.ring.q) + ")\n");
        double be = b_enc(p);
        std::cout << "B_enc            " << be << "\n"
                  << "B_ecd            " << b_ecd(p) << "\n"
                  << "B_add(2 fresh)   " << b_add(be, be) << "\n"
                  << "B_mult_bin (N)   " << b_mult_bin(be, be, p) << "\n"
                  << "B_mult_bin (K)   " << b_mult_bin_dim(be, be, p, ctx.ring.K) << "\n"
                  << "rel. error fresh " << relative_error(be, ctx.delta) << "\n";
        double tau = std::ldexp(1.0, int(ctx.kappa)) * ctx.B_max;
        if (ctx.B_max > 0 && std::isfinite(tau))
            std::cout << "B_refresh_flood  " << b_refresh_flood(p, tau, ctx.ring.lambda_B)
                      << " (tau = 2^kappa * B_max = " << tau << ")\n";
        std::cout << "Prop.1 threshold " << prop1_threshold(p) << " -> predicate "
                  << (prop1_predicate(p) ? "true" : "false") << "\n";
        // Standard-CKKS comparison at the SEAL-like row (2^88 vs 2^140 claim).
        NoiseParams seal;
        seal.sigma = 3.19;
        seal.h = 192;
        seal.N = 8192;
        seal.delta = std::ldexp(1.0, 40);
        seal.B = std::ldexp(1.0, 32);
        seal.P = std::ldexp(1.0, 60);
        seal.q_ell = std::ldexp(1.0, 200);
        double lg_bin = std::log2(b_mult_bin(seal.delta, seal.delta, seal));
        double lg_std = std::log2(b_mult_std(seal.delta, seal.delta, b_enc(seal), b_enc(seal), seal));
        std::cout << "SEAL-like row: log2 B_mult_bin = " << lg_bin
                  << ", log2 B_mult_std = " << lg_std << ", ratio 2^" << (lg_std - lg_bin)
                  << " (claimed 2^88 vs 2^140, ratio 2^52)\n";
        MemoryModel mm = memory_model(ctx.ring.N, ctx.ring.lambda_B);
        std::cout << "memory [bytes]: ct_ckks " << mm.ct_ckks << ", ct_bin " << mm.ct_bin
                  << ", evk_ckks " << mm.evk_ckks << ", evk_bin " << mm.evk_bin << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary-coefficient approximate HE with a BCH outer layer"};
    try {
        return run(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const CoefficientOverflow& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const OverflowError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const DecodeFailure& e) {
        std::cerr << "decode failure: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    }
}
