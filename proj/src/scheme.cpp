#include "bckks/scheme.hpp"

#include <cmath>
#include <utility>

namespace bckks {

NoiseParams Context::noise() const {
    NoiseParams np;
    np.sigma = sigma;
    np.h = h;
    np.N = ring.N;
    np.delta = delta;
    np.B = std::ldexp(1.0, int(ring.lambda_B));
    np.B_star = B_star;
    np.B_max = B_max;
    return np;
}

namespace {

BPoly const_bpoly(const RingParams& params, i128 v0) {
    BPoly m = bp_zero(params);
    m.coeffs[0] = v0;
    return m;
}

BPoly raw_vec_to_bpoly(const RingParams& params, const std::vector<std::int64_t>& v) {
    BPoly out = bp_zero(params);
    for (std::size_t i = 0; i < params.K; ++i) out.coeffs[i] = v[i];
    return out;
}

}  // namespace

KeySet keygen(const Context& ctx, Rng& rng, const KeygenOptions& opts) {
    const RingParams& rp = ctx.ring;
    if (ctx.h == 0 || ctx.h > rp.N) throw ParamError("keygen: need 0 < h <= N");
    KeySet ks;

    auto s_r = sample_hwt(ctx.h, rp.N, rng);
    ks.sk.s = binarize(rp, s_r);
    ks.sk.h = ctx.h;

    ks.pk.a = sample_uniform_binary(rp, rng);
    ks.pk_e = binarize(rp, sample_dg(ctx.sigma, rp.N, rng));
    ks.pk.b = bp_add(rp, bp_neg(rp, bp_mul(rp, ks.pk.a, ks.sk.s)), ks.pk_e);

    ks.evk.a0 = sample_uniform_binary(rp, rng);
    ks.evk_e0 = binarize(rp, sample_dg(ctx.sigma, rp.N, rng));
    BPoly s2 = bp_mul(rp, ks.sk.s, ks.sk.s);
    ks.evk.b0 = bp_add(rp, bp_add(rp, bp_neg(rp, bp_mul(rp, ks.evk.a0, ks.sk.s)), ks.evk_e0), s2);

    ks.tau = std::ldexp(ctx.B_max, int(ctx.kappa));

    if (opts.with_refresh_key) {
        RefreshKey rk;
        rk.tau = ks.tau;
        rk.kappa = ctx.kappa;
        rk.test_mode = opts.test_mode_rk;
        rk.rk.reserve(rp.K);
        for (std::size_t i = 0; i < rp.K; ++i) {
            BPoly mi = const_bpoly(rp, ks.sk.s.coeffs[i]);
            if (opts.test_mode_rk) {
                Ciphertext c;
                c.c0 = mi;
                c.c1 = bp_zero(rp);
                c.noise_bound = 0;
                c.scale = 1;
                rk.rk.push_back(std::move(c));
            } else {
                rk.rk.push_back(encrypt(ctx, ks.pk, mi, rng, 1.0));
            }
        }
        rk.G0 = bp_zero(rp);
        rk.G1 = bp_zero(rp);
        for (std::size_t i = 0; i < rp.K; ++i) {
            rk.G0 = bp_add(rp, rk.G0, monomial_shift(rp, rk.rk[i].c0, i));
            rk.G1 = bp_add(rp, rk.G1, monomial_shift(rp, rk.rk[i].c1, i));
        }
        ks.rk = std::move(rk);
    }
    return ks;
}

Ciphertext encrypt(const Context& ctx, const PublicKey& pk, const BPoly& m, Rng& rng,
                   double scale, bool noiseless) {
    const RingParams& rp = ctx.ring;
    if (m.coeffs.size() != rp.K) throw ParamError("encrypt: message dimension mismatch");
    Ciphertext c;
    c.scale = scale > 0 ? scale : ctx.delta;
    if (noiseless) {
        c.c0 = bp_reduce(rp, m);
        c.c1 = bp_zero(rp);
        c.noise_bound = 0;
        return c;
    }
    BPoly v = binarize(rp, sample_zo(0.5, rp.N, rng));
    BPoly e0 = binarize(rp, sample_dg(ctx.sigma, rp.N, rng));
    BPoly e1 = binarize(rp, sample_dg(ctx.sigma, rp.N, rng));
    c.c0 = bp_add(rp, bp_add(rp, bp_mul(rp, v, pk.b), m), e0);
    c.c1 = bp_add(rp, bp_mul(rp, v, pk.a), e1);
    c.noise_bound = b_enc(ctx.noise());
    return c;
}

BPoly decrypt_raw(const Context& ctx, const SecretKey& sk, const Ciphertext& c) {
    return bp_add(ctx.ring, c.c0, bp_mul(ctx.ring, c.c1, sk.s));
}

PlainVec decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& c, DecodeMode mode) {
    return decode(decrypt_raw(ctx, sk, c), c.scale, ctx.ring, mode);
}

Ciphertext add(const Context& ctx, const Ciphertext& c1, const Ciphertext& c2) {
    if (c1.scale != c2.scale) throw ParamError("add: scale mismatch");
    Ciphertext out;
    out.c0 = bp_add(ctx.ring, c1.c0, c2.c0);
    out.c1 = bp_add(ctx.ring, c1.c1, c2.c1);
    out.noise_bound = b_add(c1.noise_bound, c2.noise_bound);
    out.scale = c1.scale;
    return out;
}

Ciphertext add_const(const Context& ctx, const Ciphertext& c, const BPoly& a) {
    Ciphertext out = c;
    out.c0 = bp_add(ctx.ring, c.c0, a);
    return out;
}

Ciphertext mul_const(const Context& ctx, const Ciphertext& c, const BPoly& a,
                     double const_scale) {
    Ciphertext out;
    out.c0 = bp_mul(ctx.ring, c.c0, a);
    out.c1 = bp_mul(ctx.ring, c.c1, a);
    out.noise_bound = r_norm(ctx.ring, a) * c.noise_bound;
    out.scale = c.scale * const_scale;
    return out;
}

Ciphertext mult(const Context& ctx, const EvalKey& evk, const Ciphertext& c1,
                const Ciphertext& c2) {
    const RingParams& rp = ctx.ring;
    BPoly d0 = bp_mul(rp, c1.c0, c2.c0);
    BPoly d1 = bp_add(rp, bp_mul(rp, c1.c1, c2.c0), bp_mul(rp, c2.c1, c1.c0));
    BPoly d2 = bp_mul(rp, c1.c1, c2.c1);
    Ciphertext out;
    out.c0 = bp_add(rp, d0, bp_mul(rp, d2, evk.b0));
    out.c1 = bp_add(rp, d1, bp_mul(rp, d2, evk.a0));
    // The closed-form b_mult_bin budgets only 6*sigma*N for relinearization,
    // which presumes ||d2|| = O(1); with a single evk (no gadget decomposition
    // or rescale) the actual term is d2*e0 with ||d2|| large. Add a sound
    // l1-based bound for it: r_norm(p(u)) <= 2^(lambda-1) * l1(u), l1 is
    // submultiplicative, and l1(e0) <= lambda_B * N for binarized DG noise.
    double relin = std::ldexp(1.0, int(rp.lambda_B) - 1) * l1_norm(d2) *
                   double(rp.lambda_B) * double(rp.N);
    out.noise_bound = b_mult_bin(c1.noise_bound, c2.noise_bound, ctx.noise()) + relin;
    out.scale = c1.scale * c2.scale;
    return out;
}

bool thresh(double B_max, double B0) { return B0 > B_max; }

Ciphertext refresh(const Context& ctx, const KeySet& keys, const Ciphertext& c, Rng& rng,
                   bool zero_flooding) {
    const RingParams& rp = ctx.ring;
    if (!keys.rk) throw ParamError("refresh: no refresh key");
    const RefreshKey& rk = *keys.rk;
    if (rk.rk.size() != rp.K) throw ParamError("refresh: rk length != K");

    // sum_i mul_const(rk[i], c1*x^i) == (G0*c1, G1*c1) with G = sum_i rk[i]*x^i.
    Ciphertext out;
    out.c0 = bp_add(rp, c.c0, bp_mul(rp, rk.G0, c.c1));
    out.c1 = bp_mul(rp, rk.G1, c.c1);
    out.scale = c.scale;

    NoiseParams np = ctx.noise();
    double B_rk = rk.test_mode ? 0.0 : b_enc(np);
    // sum_i r_norm(c1*x^i) <= (K/lambda)(2^lambda - 1) * ||c1||_1 (the per-shift
    // l1 of the contraction depends only on i mod lambda_B).
    double rot = B_rk * (double(rp.K) / double(rp.lambda_B)) *
                 (std::ldexp(1.0, int(rp.lambda_B)) - 1.0) * l1_norm(c.c1);
    double bound = c.noise_bound + rot;

    if (!zero_flooding) {
        double tau = rk.tau;
        BPoly v = binarize(rp, sample_zo(0.5, rp.N, rng));
        // Flooding noise lives in BP directly: tau exceeds 2^lambda_B, so p^{-1}
        // is not defined on it.
        BPoly e0 = raw_vec_to_bpoly(rp, sample_dg(tau, rp.K, rng));
        BPoly e1 = raw_vec_to_bpoly(rp, sample_dg(tau, rp.K, rng));
        out.c0 = bp_add(rp, out.c0, bp_add(rp, e0, bp_mul(rp, v, keys.pk.b)));
        out.c1 = bp_add(rp, out.c1, bp_add(rp, e1, bp_mul(rp, v, keys.pk.a)));
        bound += b_refresh_flood(np, tau, rp.lambda_B);
    }
    out.noise_bound = bound;
    return out;
}

}  // namespace bckks
