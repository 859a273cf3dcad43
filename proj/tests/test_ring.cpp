#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "bckks/encoding.hpp"
#include "bckks/ntt.hpp"
#include "bckks/ring.hpp"
#include "bckks/sampling.hpp"

using namespace bckks;

namespace {

Rng make_rng(std::uint64_t stream) {
    RngHandle h;
    h.seed[0] = 0xA5;
    return Rng(h.with_stream(stream));
}

BPoly random_poly(const RingParams& rp, Rng& rng, std::int64_t lo, std::int64_t hi) {
    BPoly p = bp_zero(rp);
    for (auto& c : p.coeffs) c = lo + std::int64_t(rng.uniform_below(std::uint64_t(hi - lo + 1)));
    return p;
}

}  // namespace

TEST_CASE("ring params validate") {
    CHECK_NOTHROW(RingParams::exact(64, 4).validate());
    CHECK(RingParams::exact(64, 4).K == 256);
    CHECK(RingParams::exact(1024, 32).K == 32768);
    CHECK_THROWS_AS(RingParams::exact(48, 4), ParamError);   // N not a power of two
    CHECK_THROWS_AS(RingParams::exact(64, 3), ParamError);   // lambda_B not a power of two
    CHECK_THROWS_AS(RingParams::exact(64, 64), ParamError);  // lambda_B > 32
    CHECK_THROWS_AS(RingParams::modular(64, 4, 10), ParamError);  // even modulus
}

TEST_CASE("negacyclic wrap: x^{K-1} * x = -1") {
    RingParams rp = RingParams::exact(8, 4);  // K = 32
    BPoly a = bp_zero(rp), b = bp_zero(rp);
    a.coeffs[rp.K - 1] = 1;
    b.coeffs[1] = 1;
    BPoly c = bp_mul(rp, a, b);
    CHECK(c.coeffs[0] == -1);
    for (std::size_t i = 1; i < rp.K; ++i) CHECK(c.coeffs[i] == 0);
}

TEST_CASE("hand-worked product in Z[x]/(x^4+1)") {
    // (1 + 2x + 3x^2)(2 + x^3) = 2 + 4x + 6x^2 + x^3 + 2x^4 + 3x^5
    //                          = (2-2) + (4-3)x + 6x^2 + x^3 = x + 6x^2 + x^3.
    RingParams rp = RingParams::exact(8, 4);
    rp.N = 1;  // direct K override for the tiny worked example
    rp.lambda_B = 4;
    rp.K = 4;
    BPoly a{{1, 2, 3, 0}}, b{{2, 0, 0, 1}};
    BPoly c = bp_mul_schoolbook(rp, a, b);
    CHECK(c.coeffs[0] == 0);
    CHECK(c.coeffs[1] == 1);
    CHECK(c.coeffs[2] == 6);
    CHECK(c.coeffs[3] == 1);
}

TEST_CASE("NTT path agrees with schoolbook oracle (exact)") {
    Rng rng = make_rng(1);
    for (std::size_t N : {std::size_t(8), std::size_t(16)}) {
        RingParams rp = RingParams::exact(N, 8);
        for (int trial = 0; trial < 50; ++trial) {
            BPoly a = random_poly(rp, rng, -1000, 1000);
            BPoly b = random_poly(rp, rng, -1000, 1000);
            BPoly fast = bp_mul(rp, a, b);
            BPoly slow = bp_mul_schoolbook(rp, a, b);
            REQUIRE(fast.coeffs == slow.coeffs);
        }
    }
}

TEST_CASE("NTT path agrees with schoolbook oracle (modular)") {
    Rng rng = make_rng(2);
    RingParams rp = RingParams::modular(16, 8, 576460752315482113ULL);
    for (int trial = 0; trial < 50; ++trial) {
        BPoly a = random_poly(rp, rng, -500000, 500000);
        BPoly b = random_poly(rp, rng, -500000, 500000);
        BPoly fast = bp_mul(rp, a, b);
        BPoly slow = bp_mul_schoolbook(rp, a, b);
        REQUIRE(fast.coeffs == slow.coeffs);
    }
}

TEST_CASE("modular products stay centered") {
    Rng rng = make_rng(3);
    RingParams rp = RingParams::modular(16, 8, 12289);  // 12289 = 1 + 3*2^12
    i128 half = i128(rp.q) / 2;
    for (int trial = 0; trial < 20; ++trial) {
        BPoly a = random_poly(rp, rng, -6000, 6000);
        BPoly b = random_poly(rp, rng, -6000, 6000);
        BPoly c = bp_mul(rp, a, b);
        for (i128 v : c.coeffs) {
            CHECK(v > -half - 1);
            CHECK(v <= half);
        }
    }
}

TEST_CASE("ring axioms: commutative, associative, distributive") {
    Rng rng = make_rng(4);
    RingParams rp = RingParams::exact(8, 8);  // K = 64
    for (int trial = 0; trial < 20; ++trial) {
        BPoly a = random_poly(rp, rng, -50, 50);
        BPoly b = random_poly(rp, rng, -50, 50);
        BPoly c = random_poly(rp, rng, -50, 50);
        CHECK(bp_mul(rp, a, b).coeffs == bp_mul(rp, b, a).coeffs);
        CHECK(bp_mul(rp, bp_mul(rp, a, b), c).coeffs == bp_mul(rp, a, bp_mul(rp, b, c)).coeffs);
        CHECK(bp_mul(rp, a, bp_add(rp, b, c)).coeffs ==
              bp_add(rp, bp_mul(rp, a, b), bp_mul(rp, a, c)).coeffs);
    }
}

TEST_CASE("monomial_shift matches multiplication by x^i") {
    Rng rng = make_rng(5);
    RingParams rp = RingParams::exact(8, 8);
    BPoly a = random_poly(rp, rng, -100, 100);
    for (std::size_t i : {std::size_t(0), std::size_t(1), std::size_t(17), rp.K - 1}) {
        BPoly xi = bp_zero(rp);
        xi.coeffs[i] = 1;
        CHECK(monomial_shift(rp, a, i).coeffs == bp_mul(rp, a, xi).coeffs);
    }
}

TEST_CASE("exact products overflow-check instead of wrapping") {
    RingParams rp = RingParams::exact(8, 4);  // K = 32, schoolbook range
    BPoly a = bp_zero(rp), b = bp_zero(rp);
    a.coeffs[0] = i128(1) << 120;
    b.coeffs[0] = i128(1) << 10;
    CHECK_THROWS_AS(bp_mul(rp, a, b), OverflowError);
}

TEST_CASE("canonical_norm on R") {
    RingParams rp = RingParams::exact(64, 4);
    RPoly c;
    c.coeffs.assign(rp.N, 0);
    c.coeffs[0] = 7;
    CHECK(canonical_norm(rp, c) == doctest::Approx(7.0).epsilon(1e-9));

    // X^j has |X^j(zeta)| = 1 at every embedding root.
    c.coeffs[0] = 0;
    c.coeffs[rp.N / 2] = 1;
    CHECK(canonical_norm(rp, c) == doctest::Approx(1.0).epsilon(1e-9));

    // canonical_norm <= l1 of coefficients.
    Rng rng = make_rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        RPoly r;
        r.coeffs.assign(rp.N, 0);
        double l1 = 0;
        for (auto& v : r.coeffs) {
            v = std::int64_t(rng.uniform_below(41)) - 20;
            l1 += std::abs(double(std::int64_t(v)));
        }
        CHECK(canonical_norm(rp, r) <= l1 * (1 + 1e-9));
    }
}

TEST_CASE("r_norm contracts before embedding") {
    RingParams rp = RingParams::exact(64, 4);
    // m = x^0 + x^2 contracts to the R-constant 1 + 4 = 5.
    BPoly m = bp_zero(rp);
    m.coeffs[0] = 1;
    m.coeffs[2] = 1;
    CHECK(r_norm(rp, m) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(l1_norm(m) == doctest::Approx(2.0));
    CHECK(linf_norm(m) == doctest::Approx(1.0));
}

TEST_CASE("canonical norm is submultiplicative under the negacyclic product") {
    // View the length-128 ring as its own embedding target: evaluations at the
    // common roots make |(ab)(zeta)| = |a(zeta)||b(zeta)| <= ||a|| * ||b||.
    Rng rng = make_rng(7);
    RingParams rp = RingParams::exact(32, 4);          // K = 128
    RingParams rp_embed = RingParams::exact(128, 2);   // N = 128 embedding view
    for (int trial = 0; trial < 20; ++trial) {
        BPoly a = random_poly(rp, rng, -5, 5);
        BPoly b = random_poly(rp, rng, -5, 5);
        BPoly ab = bp_mul(rp, a, b);
        RPoly ra{a.coeffs}, rb{b.coeffs}, rab{ab.coeffs};
        double lhs = canonical_norm(rp_embed, rab);
        double rhs = canonical_norm(rp_embed, ra) * canonical_norm(rp_embed, rb);
        CHECK(lhs <= rhs * (1 + 1e-6) + 1e-6);
    }
}

TEST_CASE("ntt prime constants") {
    CHECK(ntt::is_prime_u64(ntt::kPrime1));
    CHECK(ntt::is_prime_u64(ntt::kPrime2));
    CHECK((ntt::kPrime1 - 1) % (1u << 24) == 0);
    CHECK((ntt::kPrime2 - 1) % (1u << 24) == 0);
    CHECK(ntt::supports_ntt(576460752315482113ULL, 1u << 18));
    CHECK_FALSE(ntt::supports_ntt(576460752315482113ULL, 1u << 19));
    CHECK_FALSE(ntt::supports_ntt(12289, 1u << 13));
}

TEST_CASE("forward/inverse NTT round trip") {
    const auto& pl = ntt::plan(ntt::kPrime1, 64);
    Rng rng = make_rng(8);
    std::vector<std::uint64_t> a(64);
    for (auto& v : a) v = rng.uniform_below(ntt::kPrime1);
    std::vector<std::uint64_t> orig = a;
    ntt::forward(pl, a);
    CHECK(a != orig);
    ntt::inverse(pl, a);
    CHECK(a == orig);
}
