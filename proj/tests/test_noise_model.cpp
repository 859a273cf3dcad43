#include "doctest.h"

#include <cmath>
#include <initializer_list>

#include "bckks/errors.hpp"
#include "bckks/noise_model.hpp"

using namespace bckks;

namespace {

NoiseParams paper_params(std::size_t N, std::size_t lambda_B) {
    NoiseParams p;
    p.sigma = 3.19;
    p.h = 192;
    p.N = N;
    p.delta = std::ldexp(1.0, 40);
    p.B = std::ldexp(1.0, int(lambda_B));
    return p;
}

}  // namespace

TEST_CASE("b_enc matches its closed form") {
    NoiseParams p = paper_params(8192, 32);
    double expect = 8 * std::sqrt(2.0) * 3.19 * 8192 + 6 * 3.19 * std::sqrt(8192.0) +
                    16 * 3.19 * std::sqrt(192.0 * 8192.0);
    CHECK(b_enc(p) == doctest::Approx(expect).epsilon(1e-12));
    // Order of magnitude: ~3.6e5 at the largest parameter row.
    CHECK(b_enc(p) > 3.0e5);
    CHECK(b_enc(p) < 4.0e5);
}

TEST_CASE("b_ecd spot value") {
    NoiseParams p;
    p.N = 1024;
    p.delta = std::ldexp(1.0, 20);
    CHECK(b_ecd(p) == doctest::Approx(32.0 / (2.0 * 1048576.0)).epsilon(1e-12));
    CHECK(b_ecd(p) == doctest::Approx(1.52587890625e-5).epsilon(1e-12));
    p.delta = 0;
    CHECK_THROWS_AS(b_ecd(p), ParamError);
}

TEST_CASE("b_add is the plain sum") {
    CHECK(b_add(3.5, 4.25) == 7.75);
}

TEST_CASE("phi_square_update coincides with b_mult_bin on equal inputs") {
    NoiseParams p = paper_params(4096, 32);
    for (double B : {1.0e3, 3.6e5, 1.0e9, 2.5e12}) {
        CHECK(phi_square_update(B, p) == doctest::Approx(b_mult_bin(B, B, p)).epsilon(1e-12));
    }
}

TEST_CASE("b_mult_bin dominates both inputs and grows quadratically") {
    NoiseParams p = paper_params(1024, 16);
    double B1 = 1e5, B2 = 2e5;
    double v = b_mult_bin(B1, B2, p);
    CHECK(v > B1 * B2);                      // the (1+h) B1 B2 core term
    CHECK(v > (1 + double(p.h)) * B1 * B2);  // exact dominant term
    // K-dimension variant only moves the additive 6*sigma*dim tail.
    double vk = b_mult_bin_dim(B1, B2, p, 1024 * 16);
    CHECK(vk - v == doctest::Approx(6.0 * p.sigma * (1024.0 * 16 - 1024.0)).epsilon(1e-9));
}

TEST_CASE("squaring iteration grows doubly exponentially in log") {
    NoiseParams p = paper_params(8192, 32);
    double B = b_enc(p);
    double prev_log = std::log2(B);
    for (int step = 0; step < 4; ++step) {
        B = phi_square_update(B, p);
        double lg = std::log2(B);
        CHECK(lg > 2 * prev_log - 1);  // log roughly doubles each squaring
        prev_log = lg;
    }
}

TEST_CASE("b_mult_std closed form and scale") {
    NoiseParams p = paper_params(8192, 32);
    p.P = std::ldexp(1.0, 60);
    p.q_ell = std::ldexp(1.0, 60);
    double nu = p.delta;  // fresh messages at scale Delta
    double B1 = b_enc(p), B2 = B1;
    double expect = nu * B2 + nu * B1 + B1 * B2 +
                    (p.q_ell / p.P) * 8.0 * p.sigma * 8192.0 / std::sqrt(3.0) + 8192.0 +
                    (8.0 / 3.0) * std::sqrt(192.0);
    CHECK(b_mult_std(nu, nu, B1, B2, p) == doctest::Approx(expect).epsilon(1e-12));
    p.P = 0;
    CHECK_THROWS_AS(b_mult_std(nu, nu, B1, B2, p), ParamError);
}

TEST_CASE("proposition-1 predicate flips with delta") {
    NoiseParams p = paper_params(8192, 32);
    double thr = prop1_threshold(p);
    // Dominated by h * B_enc ~ 192 * 3.6e5 ~ 6.9e7.
    CHECK(thr > 6.0e7);
    CHECK(thr < 8.0e7);
    p.delta = std::ldexp(1.0, 40);
    CHECK(prop1_predicate(p));
    p.delta = std::ldexp(1.0, 10);
    CHECK_FALSE(prop1_predicate(p));
    // Grid: the flip happens exactly at the threshold.
    for (int lg = 20; lg <= 32; ++lg) {
        p.delta = std::ldexp(1.0, lg);
        CHECK(prop1_predicate(p) == (p.delta > thr));
    }
}

TEST_CASE("relative error") {
    CHECK(relative_error(512.0, 1048576.0) == doctest::Approx(512.0 / 1048576.0));
}

TEST_CASE("refresh flooding bound: W weight and tau scaling") {
    NoiseParams p = paper_params(1024, 16);
    double tau = std::ldexp(1.0, 23);
    double W = std::sqrt((std::ldexp(1.0, 32) - 1.0) / 3.0);
    double expect = 8 * std::sqrt(2.0) * p.sigma * 1024.0 + 6 * tau * W * std::sqrt(1024.0) +
                    16 * tau * W * std::sqrt(192.0 * 1024.0);
    CHECK(b_refresh_flood(p, tau, 16) == doctest::Approx(expect).epsilon(1e-12));
    // Monotone in tau and in lambda_B.
    CHECK(b_refresh_flood(p, 2 * tau, 16) > b_refresh_flood(p, tau, 16));
    CHECK(b_refresh_flood(p, tau, 32) > b_refresh_flood(p, tau, 16));
}

TEST_CASE("memory model spot values at N = 1024") {
    MemoryModel m = memory_model(1024, 32);
    CHECK(m.ct_ckks == 61440.0);    // 2N * 30
    CHECK(m.ct_bin == 524288.0);    // 2 * (N*lambda_B) * 8
    CHECK(m.evk_ckks == 122880.0);  // 4N * 30
    CHECK(m.evk_bin == 1048576.0);  // 4 * (N*lambda_B) * 8
    CHECK_THROWS_AS(memory_model(0, 32), ParamError);
}
