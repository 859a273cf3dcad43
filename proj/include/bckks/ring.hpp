#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bckks/errors.hpp"

namespace bckks {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }
std::string to_string_i128(i128 v);

enum class Domain { Exact, Modular };

// Ring dimensions for R = Z[X]/(X^N+1) and BP = Z[x]/(x^K+1), K = N*lambda_B.
struct RingParams {
    std::size_t N = 0;
    std::size_t lambda_B = 0;  // bits per coefficient, so B = 2^lambda_B
    std::size_t K = 0;
    Domain domain = Domain::Exact;
    std::uint64_t q = 0;  // ciphertext modulus (Modular only), odd

    static RingParams exact(std::size_t N, std::size_t lambda_B);
    static RingParams modular(std::size_t N, std::size_t lambda_B, std::uint64_t q);

    std::size_t M() const { return 2 * N; }
    i128 coeff_bound() const { return i128(1) << lambda_B; }
    void validate() const;
    bool operator==(const RingParams&) const = default;
};

// Element of R (length N).
struct RPoly {
    std::vector<i128> coeffs;
};

// Element of BP (length K). Fresh sampled/encoded values have coefficients in
// {-1,0,1}; products may be arbitrarily large (Exact) or centered mod q.
struct BPoly {
    std::vector<i128> coeffs;
};

BPoly bp_zero(const RingParams& params);

// Centered representative in (-q/2, q/2].
i128 center_mod(i128 v, std::uint64_t q);
BPoly bp_reduce(const RingParams& params, BPoly a);

BPoly bp_add(const RingParams& params, const BPoly& a, const BPoly& b);
BPoly bp_sub(const RingParams& params, const BPoly& a, const BPoly& b);
BPoly bp_neg(const RingParams& params, BPoly a);

// Negacyclic product; NTT-based (CRT over two 62-bit primes in Exact mode)
// with checked-schoolbook fallback when the range analysis does not admit it.
BPoly bp_mul(const RingParams& params, const BPoly& a, const BPoly& b);

// Independent O(K^2) oracle with the same contract.
BPoly bp_mul_schoolbook(const RingParams& params, const BPoly& a, const BPoly& b);

// a * x^i (negacyclic rotation, sign flip on wrap).
BPoly monomial_shift(const RingParams& params, const BPoly& a, std::size_t i);

// max_j |a(zeta_M^j)| over odd j, double-precision embedding.
double canonical_norm(const RingParams& params, const RPoly& a);

// ||a||_{R,inf} = canonical_norm(bin_contract(a)).
double r_norm(const RingParams& params, const BPoly& a);

double l1_norm(const BPoly& a);
double linf_norm(const BPoly& a);

}  // namespace bckks
