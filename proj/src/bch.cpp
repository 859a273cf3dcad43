#include "bckks/bch.hpp"

#include <cmath>

#include "bckks/errors.hpp"

namespace bckks::bch {

GfContext GfContext::build(unsigned m, std::uint32_t primitive_poly) {
    if (m < 2 || m > 16) throw ParamError("GfContext: need 2 <= m <= 16");
    if ((primitive_poly >> m) != 1) throw ParamError("GfContext: primitive_poly must have degree m");
    GfContext gf;
    gf.m = m;
    gf.primitive_poly = primitive_poly;
    const std::size_t n = (std::size_t(1) << m) - 1;
    gf.exp_table.assign(2 * n, 0);
    gf.log_table.assign(n + 1, 0);
    std::vector<bool> seen(n + 1, false);
    std::uint32_t x = 1;
    for (std::size_t e = 0; e < n; ++e) {
        if (seen[x]) throw ParamError("GfContext: polynomial is not primitive");
        seen[x] = true;
        gf.exp_table[e] = std::uint16_t(x);
        gf.exp_table[e + n] = std::uint16_t(x);
        gf.log_table[x] = std::uint16_t(e);
        x <<= 1;
        if (x >> m) x ^= primitive_poly;
    }
    if (x != 1) throw ParamError("GfContext: polynomial is not primitive");
    return gf;
}

std::uint16_t GfContext::mul(std::uint16_t a, std::uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_table[log_table[a] + log_table[b]];
}

std::uint16_t GfContext::inv(std::uint16_t a) const {
    if (a == 0) throw ParamError("GF inverse of zero");
    const std::size_t n = (std::size_t(1) << m) - 1;
    return exp_table[(n - log_table[a]) % n];
}

std::uint16_t GfContext::pow_alpha(std::size_t e) const {
    const std::size_t n = (std::size_t(1) << m) - 1;
    return exp_table[e % n];
}

namespace {

Bits gf2_polymul(const Bits& a, const Bits& b) {
    Bits out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
    }
    return out;
}

// Remainder of a mod g over GF(2); g monic, bits LSB-first.
Bits gf2_polymod(Bits a, const Bits& g) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = a.size(); i-- > dg;) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j <= dg; ++j) a[i - dg + j] ^= g[j];
    }
    a.resize(dg == 0 ? 1 : dg);
    return a;
}

}  // namespace

BchCode build_code(unsigned m, std::size_t t, std::uint32_t primitive_poly) {
    BchCode code;
    code.gf = GfContext::build(m, primitive_poly);
    code.n = (std::size_t(1) << m) - 1;
    code.t = t;
    if (2 * t >= code.n) throw ParamError("build_code: need 2t < n");
    code.g = Bits{1};
    std::vector<bool> covered(code.n, false);
    for (std::size_t i = 1; i <= 2 * t; ++i) {
        if (covered[i % code.n]) continue;
        // Conjugacy class {i, 2i, 4i, ...} mod n; minimal polynomial is the
        // product of (x - alpha^c) over the class, with coefficients in GF(2).
        std::vector<std::size_t> cls;
        std::size_t c = i % code.n;
        do {
            covered[c] = true;
            cls.push_back(c);
            c = (2 * c) % code.n;
        } while (c != i % code.n);
        std::vector<std::uint16_t> mp{1};
        for (std::size_t e : cls) {
            std::uint16_t root = code.gf.pow_alpha(e);
            std::vector<std::uint16_t> next(mp.size() + 1, 0);
            for (std::size_t d = 0; d < mp.size(); ++d) {
                next[d + 1] ^= mp[d];
                next[d] ^= code.gf.mul(mp[d], root);
            }
            mp = std::move(next);
        }
        Bits mp_bits(mp.size());
        for (std::size_t d = 0; d < mp.size(); ++d) {
            if (mp[d] > 1) throw ParamError("build_code: minimal polynomial not over GF(2)");
            mp_bits[d] = std::uint8_t(mp[d]);
        }
        code.g = gf2_polymul(code.g, mp_bits);
    }
    code.k = code.n - (code.g.size() - 1);
    return code;
}

Bits bch_encode(const BchCode& code, const Bits& u) {
    if (u.size() != code.k) throw ParamError("bch_encode: message length != k");
    const std::size_t shift = code.n - code.k;
    Bits c(code.n, 0);
    for (std::size_t i = 0; i < code.k; ++i) c[shift + i] = u[i];
    Bits rem = gf2_polymod(c, code.g);
    for (std::size_t i = 0; i < rem.size(); ++i) c[i] ^= rem[i];
    return c;
}

DecodeResult bch_decode(const BchCode& code, const Bits& r) {
    if (r.size() != code.n) throw ParamError("bch_decode: word length != n");
    const GfContext& gf = code.gf;
    const std::size_t twot = 2 * code.t;

    std::vector<std::uint16_t> S(twot + 1, 0);
    bool all_zero = true;
    for (std::size_t i = 1; i <= twot; ++i) {
        std::uint16_t acc = 0;
        for (std::size_t j = 0; j < code.n; ++j) {
            if (r[j]) acc ^= gf.pow_alpha(i * j);
        }
        S[i] = acc;
        if (acc) all_zero = false;
    }
    auto extract = [&](const Bits& w) {
        Bits u(code.k);
        for (std::size_t i = 0; i < code.k; ++i) u[i] = w[code.n - code.k + i];
        return u;
    };
    if (all_zero) return DecodeResult{extract(r), 0};

    // Berlekamp-Massey for the error locator sigma(x).
    std::vector<std::uint16_t> C{1}, B{1};
    std::size_t L = 0, mgap = 1;
    std::uint16_t b = 1;
    for (std::size_t step = 0; step < twot; ++step) {
        std::uint16_t d = S[step + 1];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d ^= gf.mul(C[i], S[step + 1 - i]);
        if (d == 0) {
            ++mgap;
        } else if (2 * L <= step) {
            std::vector<std::uint16_t> T = C;
            std::uint16_t coef = gf.mul(d, gf.inv(b));
            if (C.size() < B.size() + mgap) C.resize(B.size() + mgap, 0);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + mgap] ^= gf.mul(coef, B[i]);
            L = step + 1 - L;
            B = std::move(T);
            b = d;
            mgap = 1;
        } else {
            std::uint16_t coef = gf.mul(d, gf.inv(b));
            if (C.size() < B.size() + mgap) C.resize(B.size() + mgap, 0);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + mgap] ^= gf.mul(coef, B[i]);
            ++mgap;
        }
    }
    if (L > code.t) throw DecodeFailure("bch_decode: locator degree exceeds t");

    // Chien search: error at position j iff sigma(alpha^{-j}) = 0.
    Bits corrected = r;
    std::size_t roots = 0;
    for (std::size_t j = 0; j < code.n; ++j) {
        std::uint16_t acc = 0;
        for (std::size_t i = 0; i < C.size(); ++i) {
            if (C[i]) acc ^= gf.mul(C[i], gf.pow_alpha((i * (code.n - j)) % code.n));
        }
        if (acc == 0) {
            corrected[j] ^= 1;
            ++roots;
        }
    }
    if (roots != L) throw DecodeFailure("bch_decode: Chien root count != locator degree");
    return DecodeResult{extract(corrected), L};
}

Permutation make_permutation(std::size_t size, const std::array<std::uint8_t, 32>& seed) {
    if (size == 0) throw ParamError("make_permutation: size must be positive");
    Permutation p;
    p.size = size;
    p.seed = seed;
    p.forward.resize(size);
    for (std::size_t i = 0; i < size; ++i) p.forward[i] = i;
    RngHandle h;
    h.seed = seed;
    h.stream_id = 0x5045524d;  // dedicated stream for the public permutation
    Rng rng(h);
    for (std::size_t i = size; i > 1; --i) {
        std::size_t j = std::size_t(rng.uniform_below(i));
        std::swap(p.forward[i - 1], p.forward[j]);
    }
    p.inverse.resize(size);
    for (std::size_t i = 0; i < size; ++i) p.inverse[p.forward[i]] = i;
    return p;
}

BPoly pre_encode(const Bits& message, const BchCode& code, const Permutation& perm,
                 const PipelineParams& pp) {
    if (message.size() != pp.M_bits) throw ParamError("pre_encode: message length != M_bits");
    if (pp.k_pipe == 0 || pp.k_pipe > code.k)
        throw ParamError("pre_encode: k_pipe must be in [1, k]");
    const std::size_t h = pp.h_blocks();
    const std::size_t total = h * code.n;
    if (perm.size != total) throw ParamError("pre_encode: permutation size != n*h");

    Bits v(total, 0);
    for (std::size_t blk = 0; blk < h; ++blk) {
        Bits u(code.k, 0);
        for (std::size_t i = 0; i < pp.k_pipe; ++i) {
            std::size_t src = blk * pp.k_pipe + i;
            u[i] = src < message.size() ? message[src] : 0;
        }
        Bits c = bch_encode(code, u);
        for (std::size_t i = 0; i < code.n; ++i) v[blk * code.n + i] = c[i];
    }
    BPoly out;
    out.coeffs.resize(total);
    for (std::size_t j = 0; j < total; ++j) out.coeffs[j] = v[perm.forward[j]];
    return out;
}

Bits post_decode(const BPoly& noisy, const BchCode& code, const Permutation& perm,
                 const PipelineParams& pp) {
    const std::size_t h = pp.h_blocks();
    const std::size_t total = h * code.n;
    if (noisy.coeffs.size() != total || perm.size != total)
        throw ParamError("post_decode: dimension mismatch");

    Bits v(total, 0);
    for (std::size_t j = 0; j < total; ++j) {
        // Nearer of {0,1}, ties to 0: for integers this is just c >= 1.
        v[perm.forward[j]] = noisy.coeffs[j] >= 1 ? 1 : 0;
    }
    Bits out;
    out.reserve(pp.M_bits);
    for (std::size_t blk = 0; blk < h && out.size() < pp.M_bits; ++blk) {
        Bits r(code.n);
        for (std::size_t i = 0; i < code.n; ++i) r[i] = v[blk * code.n + i];
        DecodeResult dr = bch_decode(code, r);
        for (std::size_t i = 0; i < pp.k_pipe && out.size() < pp.M_bits; ++i)
            out.push_back(dr.u[i]);
    }
    return out;
}

BPoly inject_flips(const BPoly& m, const std::vector<std::size_t>& pattern, FlipLedger& ledger) {
    BPoly out = m;
    for (std::size_t idx : pattern) {
        if (idx >= out.coeffs.size()) throw ParamError("inject_flips: index out of range");
        out.coeffs[idx] = 1 - out.coeffs[idx];
        ledger.flipped.push_back(idx);
    }
    return out;
}

BPoly inject_flips_rate(const BPoly& m, double rate, Rng& rng, FlipLedger& ledger) {
    BPoly out = m;
    for (std::size_t idx = 0; idx < out.coeffs.size(); ++idx) {
        if (rng.uniform01() < rate) {
            out.coeffs[idx] = 1 - out.coeffs[idx];
            ledger.flipped.push_back(idx);
        }
    }
    return out;
}

FailureModel failure_prob(double p_coef, std::size_t lambda_B, std::size_t n, std::size_t t,
                          std::size_t blocks) {
    if (!(p_coef > 0) || lambda_B == 0 || n == 0 || blocks == 0)
        throw ParamError("failure_prob: all arguments must be positive");
    FailureModel fm;
    fm.p_bit = double(lambda_B) * p_coef;
    fm.lambda = double(n) * fm.p_bit;
    double fact = 1;
    for (std::size_t i = 2; i <= t + 1; ++i) fact *= double(i);
    fm.pr_block = std::pow(fm.lambda, double(t + 1)) / fact;
    fm.success = std::exp(double(blocks) * std::log1p(-fm.pr_block));
    return fm;
}

}  // namespace bckks::bch
