#include "bckks/noise_model.hpp"

#include <cmath>

#include "bckks/errors.hpp"

namespace bckks {

double b_enc(const NoiseParams& p) {
    double N = double(p.N), h = double(p.h);
    return 8.0 * std::sqrt(2.0) * p.sigma * N + 6.0 * p.sigma * std::sqrt(N) +
           16.0 * p.sigma * std::sqrt(h * N);
}

double b_ecd(const NoiseParams& p) {
    if (!(p.delta > 0)) throw ParamError("b_ecd: delta must be positive");
    return std::sqrt(double(p.N)) / (2.0 * p.delta);
}

double b_add(double B1, double B2) { return B1 + B2; }

double b_mult_bin_dim(double B1, double B2, const NoiseParams& p, std::size_t dim) {
    double h = double(p.h);
    return B1 * B2 + (B1 + B2) * (p.B + h) + h * B1 * B2 + h * (B1 + B2) +
           6.0 * p.sigma * double(dim);
}

double b_mult_bin(double B1, double B2, const NoiseParams& p) {
    return b_mult_bin_dim(B1, B2, p, p.N);
}

double b_mult_std(double nu1, double nu2, double B1, double B2, const NoiseParams& p) {
    if (!(p.P > 0)) throw ParamError("b_mult_std: P must be positive");
    double N = double(p.N), h = double(p.h);
    return nu1 * B2 + nu2 * B1 + B1 * B2 +
           (p.q_ell / p.P) * 8.0 * p.sigma * N / std::sqrt(3.0) + N +
           (8.0 / 3.0) * std::sqrt(h);
}

double prop1_threshold(const NoiseParams& p) {
    double h = double(p.h), N = double(p.N);
    double Benc = b_enc(p);
    if (Benc == 0) return 0.0;
    return 4.0 * h + h * Benc + 6.0 * p.sigma * N / Benc;
}

bool prop1_predicate(const NoiseParams& p) { return p.delta > prop1_threshold(p); }

double phi_square_update(double Bprev, const NoiseParams& p) {
    double h = double(p.h);
    return (2.0 * p.B + 4.0 * h) * Bprev + (1.0 + h) * Bprev * Bprev +
           6.0 * p.sigma * double(p.N);
}

double relative_error(double B, double delta) { return B / delta; }

double b_refresh_flood(const NoiseParams& p, double tau, std::size_t lambda_B) {
    double N = double(p.N), h = double(p.h);
    double W = std::sqrt((std::ldexp(1.0, int(2 * lambda_B)) - 1.0) / 3.0);
    return 8.0 * std::sqrt(2.0) * p.sigma * N + 6.0 * tau * W * std::sqrt(N) +
           16.0 * tau * W * std::sqrt(h * N);
}

MemoryModel memory_model(std::size_t N, std::size_t lambda_B) {
    if (N == 0 || lambda_B == 0) throw ParamError("memory_model: N and lambda_B must be positive");
    double M = double(N) * double(lambda_B);
    return MemoryModel{2.0 * double(N) * 30.0, 2.0 * M * 8.0, 4.0 * double(N) * 30.0, 4.0 * M * 8.0};
}

}  // namespace bckks
