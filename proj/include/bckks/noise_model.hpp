#pragma once

#include <cstddef>

namespace bckks {

// Inputs to the closed-form bounds; P and q_ell only feed the standard-CKKS
// comparator.
struct NoiseParams {
    double sigma = 3.19;
    std::size_t h = 192;
    std::size_t N = 8192;
    double delta = 1.0;
    double B = 0;       // plaintext coefficient bound 2^lambda_B
    double B_star = 0;  // refresh threshold
    double B_max = 0;   // thresh bound
    double P = 0;       // std-CKKS rescale modulus (comparison only)
    double q_ell = 0;   // std-CKKS level modulus (comparison only)
};

// Fresh-encryption bound: 8*sqrt(2)*sigma*N + 6*sigma*sqrt(N) + 16*sigma*sqrt(h*N).
double b_enc(const NoiseParams& p);

// Encoding rounding bound: sqrt(N)/(2*delta).
double b_ecd(const NoiseParams& p);

double b_add(double B1, double B2);

// Binary-CKKS multiplication bound; dim defaults to N, pass p-dim K to get the
// K-based variant of the 6*sigma*dim term (both are reported, see noise report).
double b_mult_bin(double B1, double B2, const NoiseParams& p);
double b_mult_bin_dim(double B1, double B2, const NoiseParams& p, std::size_t dim);

// Standard-CKKS comparator: nu1*B2 + nu2*B1 + B1*B2 + P^{-1}*q_ell*8*sigma*N/sqrt(3)
// + N + (8/3)*sqrt(h).
double b_mult_std(double nu1, double nu2, double B1, double B2, const NoiseParams& p);

// Proposition 1 RHS: 4h + h*B_enc + 6*sigma*N/B_enc; predicate is delta > RHS.
double prop1_threshold(const NoiseParams& p);
bool prop1_predicate(const NoiseParams& p);

// One squaring step of the Phi iteration: (2B+4h)*Bprev + (1+h)*Bprev^2 + 6*sigma*N.
double phi_square_update(double Bprev, const NoiseParams& p);

double relative_error(double B, double delta);

// Honest refresh flooding contribution for flooding noise DG(tau^2) sampled in
// BP dimension; W = sqrt((4^lambda_B - 1)/3) accounts for the contraction weights.
double b_refresh_flood(const NoiseParams& p, double tau, std::size_t lambda_B);

struct MemoryModel {
    double ct_ckks;   // 2N * 30 bytes
    double ct_bin;    // 2M * 8 bytes, M = N*lambda_B
    double evk_ckks;  // 4N * 30 bytes
    double evk_bin;   // 4M * 8 bytes
};
MemoryModel memory_model(std::size_t N, std::size_t lambda_B);

}  // namespace bckks
