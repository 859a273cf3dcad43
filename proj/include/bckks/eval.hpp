#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bckks/scheme.hpp"

namespace bckks {

// Single-owner state for one evaluation; tracks the refresh schedule.
struct EvalContext {
    const Context* ctx = nullptr;
    const KeySet* keys = nullptr;
    Rng* rng = nullptr;
    double B_star = 0;
    std::size_t refresh_count = 0;
    std::size_t refresh_skipped = 0;  // policy fired but no refresh key present

    EvalContext(const Context& c, const KeySet& k, Rng& r)
        : ctx(&c), keys(&k), rng(&r), B_star(c.B_star) {}
};

struct EvalResult {
    Ciphertext ct;
    // Lemma-6 min-formula bound min{sum_j |a_j| B_enc (+ eps*delta), B*}: the
    // paper's idealized output bound, reported alongside the honestly tracked
    // ct.noise_bound.
    double b_f_lemma6 = 0;
};

// f(x) = x^d for d = 2^r via repeated squaring with the Alg.-3 refresh policy:
// after each squaring, if the Phi-updated bound reaches B*, refresh and reset
// the bound to B_enc.
Ciphertext power(const Ciphertext& c, std::size_t d, EvalContext& ec);

// Term-wise evaluation of sum_j a_j x^j reusing cached powers; term scales are
// equalized with exact monomial constants before summation.
EvalResult poly_eval(const Ciphertext& c, const std::vector<double>& coeffs, EvalContext& ec);

struct SeriesSpec {
    std::function<double(std::size_t)> coeff;  // a_j
    double Q = 1.0;                            // domain bound |x| <= Q
    double epsilon = 1e-6;                     // tail tolerance
};

// Smallest D with sum_{j>D} |a_j| Q^j <= eps (128-term cap, geometric majorant).
std::size_t truncation_degree(const SeriesSpec& s);

EvalResult analytic_eval(const Ciphertext& c, const SeriesSpec& s, EvalContext& ec);

}  // namespace bckks
