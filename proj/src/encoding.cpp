#include "bckks/encoding.hpp"

#include <cmath>

#include "bckks/detail/fft.hpp"

namespace bckks {

namespace {
// Round-half-up, matching the tie-breaking convention of the rounding map.
double round_half_up(double v) { return std::floor(v + 0.5); }
}  // namespace

BPoly bin_expand(const RingParams& params, const RPoly& a) {
    if (a.coeffs.size() != params.N) throw ParamError("bin_expand: RPoly length != N");
    BPoly out = bp_zero(params);
    const i128 bound = params.coeff_bound();
    for (std::size_t i = 0; i < params.N; ++i) {
        i128 v = a.coeffs[i];
        i128 mag = abs128(v);
        if (mag >= bound)
            throw CoefficientOverflow("bin_expand: |a_i| >= 2^lambda_B at index " + std::to_string(i), i);
        int sign = v < 0 ? -1 : 1;
        for (std::size_t j = 0; j < params.lambda_B; ++j) {
            if ((mag >> j) & 1) out.coeffs[i * params.lambda_B + j] = sign;
        }
    }
    return out;
}

RPoly bin_contract(const RingParams& params, const BPoly& m) {
    if (m.coeffs.size() != params.K) throw ParamError("bin_contract: BPoly length != K");
    RPoly out;
    out.coeffs.assign(params.N, 0);
    for (std::size_t i = 0; i < params.N; ++i) {
        i128 acc = 0;
        for (std::size_t j = 0; j < params.lambda_B; ++j)
            acc += m.coeffs[i * params.lambda_B + j] << j;
        out.coeffs[i] = acc;
    }
    return out;
}

RPoly encode_rpoly(const PlainVec& z, double delta, const RingParams& params) {
    if (z.size() != params.N / 2) throw ParamError("encode: slot count != N/2");
    if (!(delta >= 1.0)) throw ParamError("encode: delta must be >= 1");
    std::vector<std::complex<double>> full(params.N);
    for (std::size_t t = 0; t < params.N / 2; ++t) {
        std::complex<double> v = z[t] * delta;
        full[2 * t] = v;
        full[params.N - 1 - 2 * t] = std::conj(v);
    }
    auto coeffs = detail::unembed_odd_powers(std::move(full));
    RPoly out;
    out.coeffs.resize(params.N);
    const double bound = std::ldexp(1.0, int(params.lambda_B));
    for (std::size_t i = 0; i < params.N; ++i) {
        double r = round_half_up(coeffs[i]);
        if (std::abs(r) >= bound)
            throw CoefficientOverflow("encode: coefficient exceeds 2^lambda_B at index " + std::to_string(i), i);
        out.coeffs[i] = i128(std::llround(r));
    }
    return out;
}

BPoly encode(const PlainVec& z, double delta, const RingParams& params) {
    return bin_expand(params, encode_rpoly(z, delta, params));
}

PlainVec decode(const BPoly& m, double delta, const RingParams& params, DecodeMode mode) {
    RPoly r = bin_contract(params, m);
    std::vector<double> c(params.N);
    for (std::size_t i = 0; i < params.N; ++i) c[i] = double(r.coeffs[i]);
    auto e = detail::embed_odd_powers(c);
    PlainVec out(params.N / 2);
    for (std::size_t t = 0; t < params.N / 2; ++t) {
        std::complex<double> v = e[2 * t] / delta;
        if (mode == DecodeMode::Exact)
            v = {round_half_up(v.real()), round_half_up(v.imag())};
        out[t] = v;
    }
    return out;
}

BPoly encode_const(double c, double delta, const RingParams& params) {
    // Scalar constant polynomial round(c*delta) * x^0. Unlike bit-expanded
    // encodings, scalar multiplication commutes with the contraction p exactly
    // (p is linear), so mul_const by this element rescales every slot exactly
    // regardless of lambda_B.
    double v = round_half_up(c * delta);
    if (std::abs(v) >= std::ldexp(1.0, 62))
        throw CoefficientOverflow("encode_const: constant does not fit a 63-bit integer", 0);
    BPoly m = bp_zero(params);
    m.coeffs[0] = i128(std::llround(v));
    return m;
}

}  // namespace bckks
