#include "bckks/ring.hpp"

#include <algorithm>
#include <cmath>

#include "bckks/detail/fft.hpp"
#include "bckks/encoding.hpp"
#include "bckks/ntt.hpp"

namespace bckks {

std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(-v) : u128(v);
    std::string s;
    while (u) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

RingParams RingParams::exact(std::size_t N, std::size_t lambda_B) {
    RingParams p;
    p.N = N;
    p.lambda_B = lambda_B;
    p.K = N * lambda_B;
    p.domain = Domain::Exact;
    p.validate();
    return p;
}

RingParams RingParams::modular(std::size_t N, std::size_t lambda_B, std::uint64_t q) {
    RingParams p;
    p.N = N;
    p.lambda_B = lambda_B;
    p.K = N * lambda_B;
    p.domain = Domain::Modular;
    p.q = q;
    p.validate();
    return p;
}

namespace {
bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }
}  // namespace

void RingParams::validate() const {
    if (!is_pow2(N) || N < 8) throw ParamError("RingParams: N must be a power of two >= 8");
    if (!is_pow2(lambda_B) || lambda_B < 2 || lambda_B > 32)
        throw ParamError("RingParams: lambda_B must be a power of two in {2,4,8,16,32}");
    if (K != N * lambda_B) throw ParamError("RingParams: K != N*lambda_B");
    if (domain == Domain::Modular) {
        if (q < 3 || q % 2 == 0) throw ParamError("RingParams: q must be odd and > 2");
    }
}

BPoly bp_zero(const RingParams& params) {
    BPoly r;
    r.coeffs.assign(params.K, 0);
    return r;
}

i128 center_mod(i128 v, std::uint64_t q) {
    i128 Q = i128(q);
    i128 r = v % Q;
    i128 half = Q / 2;  // q odd: centered range is [-(q-1)/2, (q-1)/2]
    if (r > half) r -= Q;
    if (r < -half) r += Q;
    return r;
}

BPoly bp_reduce(const RingParams& params, BPoly a) {
    if (params.domain == Domain::Modular) {
        for (auto& c : a.coeffs) c = center_mod(c, params.q);
    }
    return a;
}

namespace {

void check_dims(const RingParams& params, const BPoly& a, const BPoly& b) {
    if (a.coeffs.size() != params.K || b.coeffs.size() != params.K)
        throw ParamError("BPoly dimension mismatch");
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exact-mode addition overflow");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exact-mode multiplication overflow");
    return r;
}

constexpr u128 crt_modulus() { return u128(ntt::kPrime1) * ntt::kPrime2; }

// Worst-case |c_m| <= K * max|a| * max|b|; true iff twice that fits under M.
bool crt_range_ok(const RingParams& params, const BPoly& a, const BPoly& b) {
    i128 amax = 0, bmax = 0;
    for (i128 c : a.coeffs) amax = std::max(amax, abs128(c));
    for (i128 c : b.coeffs) bmax = std::max(bmax, abs128(c));
    u128 limit = (crt_modulus() - 1) / 2;
    if (amax == 0 || bmax == 0) return true;
    u128 t = u128(amax);
    if (t > limit / u128(bmax)) return false;
    t *= u128(bmax);
    if (t > limit / params.K) return false;
    return true;
}

std::vector<std::uint64_t> to_residues(const BPoly& a, std::uint64_t p) {
    std::vector<std::uint64_t> r(a.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        i128 v = a.coeffs[i] % i128(p);
        if (v < 0) v += i128(p);
        r[i] = std::uint64_t(v);
    }
    return r;
}

BPoly bp_mul_crt(const RingParams& params, const BPoly& a, const BPoly& b) {
    const auto& pl1 = ntt::plan(ntt::kPrime1, params.K);
    const auto& pl2 = ntt::plan(ntt::kPrime2, params.K);
    auto r1 = ntt::multiply(pl1, to_residues(a, ntt::kPrime1), to_residues(b, ntt::kPrime1));
    auto r2 = ntt::multiply(pl2, to_residues(a, ntt::kPrime2), to_residues(b, ntt::kPrime2));
    static const std::uint64_t p1_inv_p2 =
        ntt::powmod(ntt::kPrime1 % ntt::kPrime2, ntt::kPrime2 - 2, ntt::kPrime2);
    const u128 M = crt_modulus();
    BPoly out;
    out.coeffs.resize(params.K);
    for (std::size_t i = 0; i < params.K; ++i) {
        std::uint64_t x1 = r1[i];
        std::uint64_t x1_p2 = x1 % ntt::kPrime2;
        std::uint64_t d = r2[i] >= x1_p2 ? r2[i] - x1_p2 : r2[i] + ntt::kPrime2 - x1_p2;
        u128 x = u128(x1) + u128(ntt::kPrime1) * ntt::mulmod(d, p1_inv_p2, ntt::kPrime2);
        out.coeffs[i] = x > M / 2 ? -i128(M - x) : i128(x);
    }
    return out;
}

BPoly schoolbook_exact(const RingParams& params, const BPoly& a, const BPoly& b) {
    const std::size_t K = params.K;
    BPoly out = bp_zero(params);
    for (std::size_t i = 0; i < K; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < K; ++j) {
            if (b.coeffs[j] == 0) continue;
            i128 t = checked_mul(a.coeffs[i], b.coeffs[j]);
            std::size_t m = i + j;
            if (m < K)
                out.coeffs[m] = checked_add(out.coeffs[m], t);
            else
                out.coeffs[m - K] = checked_add(out.coeffs[m - K], -t);
        }
    }
    return out;
}

BPoly schoolbook_modular(const RingParams& params, const BPoly& a, const BPoly& b) {
    const std::size_t K = params.K;
    const i128 Q = i128(params.q);
    BPoly out = bp_zero(params);
    for (std::size_t i = 0; i < K; ++i) {
        i128 ai = a.coeffs[i] % Q;
        if (ai == 0) continue;
        for (std::size_t j = 0; j < K; ++j) {
            if (b.coeffs[j] == 0) continue;
            i128 t = (ai * (b.coeffs[j] % Q)) % Q;
            std::size_t m = i + j;
            if (m < K)
                out.coeffs[m] = (out.coeffs[m] + t) % Q;
            else
                out.coeffs[m - K] = (out.coeffs[m - K] - t) % Q;
        }
    }
    return bp_reduce(params, std::move(out));
}

}  // namespace

BPoly bp_add(const RingParams& params, const BPoly& a, const BPoly& b) {
    check_dims(params, a, b);
    BPoly out;
    out.coeffs.resize(params.K);
    for (std::size_t i = 0; i < params.K; ++i)
        out.coeffs[i] = checked_add(a.coeffs[i], b.coeffs[i]);
    return bp_reduce(params, std::move(out));
}

BPoly bp_sub(const RingParams& params, const BPoly& a, const BPoly& b) {
    check_dims(params, a, b);
    BPoly out;
    out.coeffs.resize(params.K);
    for (std::size_t i = 0; i < params.K; ++i)
        out.coeffs[i] = checked_add(a.coeffs[i], -b.coeffs[i]);
    return bp_reduce(params, std::move(out));
}

BPoly bp_neg(const RingParams& params, BPoly a) {
    for (auto& c : a.coeffs) c = -c;
    return bp_reduce(params, std::move(a));
}

BPoly bp_mul(const RingParams& params, const BPoly& a, const BPoly& b) {
    check_dims(params, a, b);
    if (params.domain == Domain::Modular) {
        if (ntt::supports_ntt(params.q, params.K)) {
            const auto& pl = ntt::plan(params.q, params.K);
            auto r = ntt::multiply(pl, to_residues(a, params.q), to_residues(b, params.q));
            BPoly out;
            out.coeffs.resize(params.K);
            for (std::size_t i = 0; i < params.K; ++i)
                out.coeffs[i] = center_mod(i128(r[i]), params.q);
            return out;
        }
        return schoolbook_modular(params, a, b);
    }
    if (crt_range_ok(params, a, b)) return bp_mul_crt(params, a, b);
    return schoolbook_exact(params, a, b);
}

BPoly bp_mul_schoolbook(const RingParams& params, const BPoly& a, const BPoly& b) {
    check_dims(params, a, b);
    if (params.domain == Domain::Modular) return schoolbook_modular(params, a, b);
    return schoolbook_exact(params, a, b);
}

BPoly monomial_shift(const RingParams& params, const BPoly& a, std::size_t i) {
    if (a.coeffs.size() != params.K) throw ParamError("BPoly dimension mismatch");
    if (i >= params.K) throw ParamError("monomial_shift: index out of range");
    BPoly out;
    out.coeffs.resize(params.K);
    for (std::size_t j = 0; j < params.K; ++j) {
        std::size_t m = j + i;
        if (m < params.K)
            out.coeffs[m] = a.coeffs[j];
        else
            out.coeffs[m - params.K] = -a.coeffs[j];
    }
    return out;
}

double canonical_norm(const RingParams& params, const RPoly& a) {
    if (a.coeffs.size() != params.N) throw ParamError("RPoly dimension mismatch");
    std::vector<double> c(params.N);
    for (std::size_t i = 0; i < params.N; ++i) c[i] = double(a.coeffs[i]);
    auto e = detail::embed_odd_powers(c);
    double mx = 0;
    for (const auto& z : e) mx = std::max(mx, std::abs(z));
    return mx;
}

double r_norm(const RingParams& params, const BPoly& a) {
    return canonical_norm(params, bin_contract(params, a));
}

double l1_norm(const BPoly& a) {
    double s = 0;
    for (i128 c : a.coeffs) s += std::abs(double(c));
    return s;
}

double linf_norm(const BPoly& a) {
    double mx = 0;
    for (i128 c : a.coeffs) mx = std::max(mx, std::abs(double(c)));
    return mx;
}

}  // namespace bckks
