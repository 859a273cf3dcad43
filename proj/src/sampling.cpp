#include "bckks/sampling.hpp"

#include <cmath>

#include "bckks/errors.hpp"

namespace bckks {

RngHandle RngHandle::from_hex(const std::string& hex, std::uint64_t stream_id) {
    RngHandle h;
    h.stream_id = stream_id;
    if (hex.size() > 64) throw ParamError("seed: at most 64 hex digits");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParamError("seed: invalid hex digit");
    };
    for (std::size_t i = 0; i < hex.size(); ++i) {
        int v = nibble(hex[i]);
        h.seed[i / 2] |= std::uint8_t(i % 2 == 0 ? v << 4 : v);
    }
    return h;
}

Rng::Rng(const RngHandle& handle) {
    std::array<std::uint32_t, 10> words{};
    for (std::size_t i = 0; i < 8; ++i) {
        words[i] = std::uint32_t(handle.seed[4 * i]) | std::uint32_t(handle.seed[4 * i + 1]) << 8 |
                   std::uint32_t(handle.seed[4 * i + 2]) << 16 |
                   std::uint32_t(handle.seed[4 * i + 3]) << 24;
    }
    words[8] = std::uint32_t(handle.stream_id);
    words[9] = std::uint32_t(handle.stream_id >> 32);
    std::seed_seq seq(words.begin(), words.end());
    gen_.seed(seq);
}

std::uint64_t Rng::next_u64() { return gen_(); }

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    if (n == 0) throw ParamError("uniform_below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

double Rng::uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian(double sigma) {
    if (have_spare_) {
        have_spare_ = false;
        return spare_ * sigma;
    }
    double u1, u2;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta) * sigma;
}

std::vector<std::int64_t> sample_hwt(std::size_t h, std::size_t dim, Rng& rng) {
    if (h == 0 || h > dim) throw ParamError("sample_hwt: need 0 < h <= dim");
    // Partial Fisher-Yates over the index range picks the support.
    std::vector<std::size_t> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
    std::vector<std::int64_t> out(dim, 0);
    for (std::size_t i = 0; i < h; ++i) {
        std::size_t j = i + std::size_t(rng.uniform_below(dim - i));
        std::swap(idx[i], idx[j]);
        out[idx[i]] = (rng.next_u64() & 1) ? 1 : -1;
    }
    return out;
}

std::vector<std::int64_t> sample_dg(double sigma, std::size_t dim, Rng& rng) {
    if (sigma < 0) throw ParamError("sample_dg: sigma must be >= 0");
    std::vector<std::int64_t> out(dim);
    double cut = 6.0 * sigma;
    for (auto& v : out) {
        double g;
        do {
            g = rng.gaussian(sigma);
        } while (std::abs(g) > cut && sigma > 0);
        v = std::int64_t(std::llround(g));
    }
    return out;
}

std::vector<std::int64_t> sample_zo(double rho, std::size_t dim, Rng& rng) {
    if (!(rho > 0.0) || rho > 1.0) throw ParamError("sample_zo: need 0 < rho <= 1");
    std::vector<std::int64_t> out(dim);
    for (auto& v : out) {
        double u = rng.uniform01();
        if (u < rho / 2)
            v = 1;
        else if (u < rho)
            v = -1;
        else
            v = 0;
    }
    return out;
}

BPoly sample_uniform_binary(const RingParams& params, Rng& rng) {
    BPoly out = bp_zero(params);
    for (auto& c : out.coeffs) c = i128(rng.next_u64() & 1);
    return out;
}

BPoly binarize(const RingParams& params, const std::vector<std::int64_t>& v) {
    if (v.size() != params.N) throw ParamError("binarize: expected R-layout vector of length N");
    BPoly out = bp_zero(params);
    for (std::size_t i = 0; i < params.N; ++i) {
        std::int64_t a = v[i];
        std::uint64_t mag = a < 0 ? std::uint64_t(-a) : std::uint64_t(a);
        if (mag >> params.lambda_B)
            throw CoefficientOverflow("binarize: |v_i| >= 2^lambda_B", i);
        int sign = a < 0 ? -1 : 1;
        for (std::size_t j = 0; j < params.lambda_B; ++j) {
            if ((mag >> j) & 1) out.coeffs[i * params.lambda_B + j] = sign;
        }
    }
    return out;
}

}  // namespace bckks
