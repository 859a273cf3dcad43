#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bckks/ring.hpp"
#include "bckks/sampling.hpp"

namespace bckks::bch {

using Bits = std::vector<std::uint8_t>;  // one bit per entry, index = degree

// GF(2^m) via log/antilog tables for a primitive polynomial (bit i = coeff of x^i).
struct GfContext {
    unsigned m = 0;
    std::uint32_t primitive_poly = 0;
    std::vector<std::uint16_t> exp_table;  // size 2*(2^m-1)
    std::vector<std::uint16_t> log_table;  // size 2^m

    static GfContext build(unsigned m, std::uint32_t primitive_poly);
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t inv(std::uint16_t a) const;
    std::uint16_t pow_alpha(std::size_t e) const;  // alpha^e
};

// Standard primitive polynomial for m=7: x^7 + x^3 + 1.
inline constexpr std::uint32_t kPrimPolyM7 = 0x89;

struct BchCode {
    GfContext gf;
    std::size_t n = 0;  // 2^m - 1
    std::size_t t = 0;
    Bits g;             // generator, lcm of minimal polynomials of alpha^1..alpha^{2t}
    std::size_t k = 0;  // n - deg g
};

BchCode build_code(unsigned m, std::size_t t, std::uint32_t primitive_poly);

// Systematic: message occupies the top k positions (degrees n-k .. n-1).
Bits bch_encode(const BchCode& code, const Bits& u);

struct DecodeResult {
    Bits u;
    std::size_t corrected = 0;
};

// Syndromes -> Berlekamp-Massey -> Chien search; throws DecodeFailure when the
// locator degree exceeds t or its root count disagrees.
DecodeResult bch_decode(const BchCode& code, const Bits& r);

struct Permutation {
    std::size_t size = 0;
    std::array<std::uint8_t, 32> seed{};
    std::vector<std::size_t> forward;  // position j holds bit forward[j]
    std::vector<std::size_t> inverse;
};

Permutation make_permutation(std::size_t size, const std::array<std::uint8_t, 32>& seed);

struct PipelineParams {
    std::size_t M_bits = 8192;
    std::size_t k_pipe = 101;  // payload bits per block (padded up to code.k)
    std::size_t h_blocks() const { return (M_bits + k_pipe - 1) / k_pipe; }
};

// Alg. 4: pad, per-block encode, concatenate, permute, pack mod x^{nh}+1.
BPoly pre_encode(const Bits& message, const BchCode& code, const Permutation& perm,
                 const PipelineParams& pp);

// Alg. 5: bit-extract (centered coefficient to the nearer of {0,1}, ties to 0),
// inverse-permute, per-block decode, first M bits. Throws DecodeFailure if any
// block is uncorrectable (whole-message failure policy).
Bits post_decode(const BPoly& noisy, const BchCode& code, const Permutation& perm,
                 const PipelineParams& pp);

struct FlipLedger {
    std::vector<std::size_t> flipped;  // BPoly coefficient indices
};

BPoly inject_flips(const BPoly& m, const std::vector<std::size_t>& pattern, FlipLedger& ledger);
BPoly inject_flips_rate(const BPoly& m, double rate, Rng& rng, FlipLedger& ledger);

struct FailureModel {
    double p_bit;     // lambda_B * p_coef
    double lambda;    // n * p_bit
    double pr_block;  // Pr[X >= t+1] ~ lambda^{t+1}/(t+1)!
    double success;   // (1 - pr_block)^blocks
};

FailureModel failure_prob(double p_coef, std::size_t lambda_B, std::size_t n, std::size_t t,
                          std::size_t blocks);

}  // namespace bckks::bch
