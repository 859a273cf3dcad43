#include "bckks/eval.hpp"

#include <cmath>
#include <map>

namespace bckks {

namespace {

void refresh_policy(Ciphertext& ct, EvalContext& ec) {
    NoiseParams np = ec.ctx->noise();
    if (ct.noise_bound < ec.B_star) return;
    if (ec.keys->rk) {
        ct = refresh(*ec.ctx, *ec.keys, ct, *ec.rng);
        ct.noise_bound = b_enc(np);  // Alg.-3 bookkeeping
        ++ec.refresh_count;
    } else {
        ++ec.refresh_skipped;
    }
}

Ciphertext square_step(const Ciphertext& c, EvalContext& ec) {
    Ciphertext out = mult(*ec.ctx, ec.keys->evk, c, c);
    refresh_policy(out, ec);
    return out;
}

}  // namespace

Ciphertext power(const Ciphertext& c, std::size_t d, EvalContext& ec) {
    if (d == 0 || (d & (d - 1)) != 0) throw ParamError("power: d must be a power of two");
    Ciphertext out = c;
    for (std::size_t e = d; e > 1; e >>= 1) out = square_step(out, ec);
    return out;
}

EvalResult poly_eval(const Ciphertext& c, const std::vector<double>& coeffs, EvalContext& ec) {
    const Context& ctx = *ec.ctx;
    const RingParams& rp = ctx.ring;
    std::size_t D = coeffs.size();
    while (D > 0 && coeffs[D - 1] == 0.0) --D;
    if (D == 0) throw ParamError("poly_eval: zero polynomial");
    --D;  // degree

    // x^(2^t) ladder under the refresh policy, then composite powers on demand.
    std::map<std::size_t, Ciphertext> cache;
    cache.emplace(1, c);
    {
        std::size_t e = 1;
        while (2 * e <= D) {
            cache.emplace(2 * e, square_step(cache.at(e), ec));
            e *= 2;
        }
    }
    auto get_power = [&](std::size_t j) -> const Ciphertext& {
        auto it = cache.find(j);
        if (it != cache.end()) return it->second;
        std::size_t hi = std::size_t(1) << (63 - __builtin_clzll(j));
        Ciphertext v = cache.at(hi);
        std::size_t rest = j - hi;
        while (rest) {
            std::size_t b = std::size_t(1) << (63 - __builtin_clzll(rest));
            v = mult(ctx, ec.keys->evk, v, cache.at(b));
            refresh_policy(v, ec);
            rest -= b;
        }
        return cache.emplace(j, std::move(v)).first->second;
    };

    // Constants: integers encode at scale 1; fractional coefficients at the
    // smallest power of delta giving at least 16 bits of precision (scales must
    // stay powers of delta so the terms can be aligned exactly).
    auto const_for = [&](double a) -> std::pair<BPoly, double> {
        if (a == std::floor(a) && std::abs(a) < std::ldexp(1.0, 62))
            return {encode_const(a, 1.0, rp), 1.0};
        double cscale = ctx.delta;
        while (ctx.delta > 1.0 && cscale < 65536.0 &&
               std::abs(a) * cscale * ctx.delta < std::ldexp(1.0, 62))
            cscale *= ctx.delta;
        return {encode_const(a, cscale, rp), cscale};
    };

    std::vector<Ciphertext> terms;
    for (std::size_t j = 1; j <= D; ++j) {
        if (coeffs[j] == 0.0) continue;
        auto [cp, cscale] = const_for(coeffs[j]);
        terms.push_back(mul_const(ctx, get_power(j), cp, cscale));
    }
    if (terms.empty()) terms.push_back(mul_const(ctx, c, encode_const(0.0, 1.0, rp), 1.0));

    double target = 0;
    for (const auto& t : terms) target = std::max(target, t.scale);
    // Exact scale alignment: 1-at-scale-delta is the scalar constant delta, and
    // scalar multiplication commutes with the contraction p, so repeated
    // mul_const rescales slots exactly.
    BPoly unit_delta = encode_const(1.0, ctx.delta, rp);
    for (auto& t : terms) {
        while (t.scale < target) t = mul_const(ctx, t, unit_delta, ctx.delta);
    }
    Ciphertext acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc = add(ctx, acc, terms[i]);

    if (coeffs[0] != 0.0) {
        // Fold the constant term in at the accumulated scale via the plaintext
        // monomial chain (exact in BP).
        auto [p0, s0] = const_for(coeffs[0]);
        double s = s0;
        while (s < target) {
            p0 = bp_mul(rp, p0, unit_delta);
            s *= ctx.delta;
        }
        if (s != target) throw ParamError("poly_eval: unalignable constant-term scale");
        acc = add_const(ctx, acc, p0);
    }

    NoiseParams np = ctx.noise();
    double sum_abs = 0;
    for (std::size_t j = 0; j <= D; ++j) sum_abs += std::abs(coeffs[j]);
    EvalResult res;
    res.ct = std::move(acc);
    res.b_f_lemma6 = std::min(sum_abs * b_enc(np), ec.B_star > 0 ? ec.B_star : sum_abs * b_enc(np));
    return res;
}

std::size_t truncation_degree(const SeriesSpec& s) {
    constexpr std::size_t cap = 128;
    constexpr std::size_t extra = 64;
    // |a_j| Q^j for j = 0..cap+extra, then a geometric majorant for the rest.
    std::vector<double> term(cap + extra + 1);
    for (std::size_t j = 0; j <= cap + extra; ++j)
        term[j] = std::abs(s.coeff(j)) * std::pow(s.Q, double(j));
    double ratio = 0;
    for (std::size_t j = cap; j < cap + extra; ++j) {
        if (term[j] > 0 && term[j + 1] > 0) ratio = std::max(ratio, term[j + 1] / term[j]);
    }
    if (ratio >= 1.0) throw ParamError("truncation_degree: series does not converge on |x| <= Q");
    double beyond = ratio > 0 ? term[cap + extra] * ratio / (1.0 - ratio) : 0.0;
    // tail(D) = sum_{j > D} term_j including the majorant beyond the window.
    std::vector<double> tail(cap + 1, 0.0);
    double acc = beyond;
    for (std::size_t j = cap + extra; j >= 1; --j) {
        acc += term[j];
        if (j - 1 <= cap) tail[j - 1] = acc;
    }
    for (std::size_t D = 0; D <= cap; ++D) {
        if (tail[D] <= s.epsilon) return D;
    }
    throw ParamError("truncation_degree: no degree within the 128-term cap");
}

EvalResult analytic_eval(const Ciphertext& c, const SeriesSpec& s, EvalContext& ec) {
    std::size_t D = truncation_degree(s);
    std::vector<double> coeffs(D + 1);
    for (std::size_t j = 0; j <= D; ++j) coeffs[j] = s.coeff(j);
    EvalResult res = poly_eval(c, coeffs, ec);
    NoiseParams np = ec.ctx->noise();
    double sum_abs = 0;
    for (double a : coeffs) sum_abs += std::abs(a);
    double bf = sum_abs * b_enc(np) + s.epsilon * ec.ctx->delta;
    res.b_f_lemma6 = ec.B_star > 0 ? std::min(bf, ec.B_star) : bf;
    return res;
}

}  // namespace bckks
