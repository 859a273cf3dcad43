#include "doctest.h"

#include <cstdio>
#include <string>

#include "bckks/presets.hpp"
#include "bckks/serialize.hpp"

using namespace bckks;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("serialize_test_" + name + ".bin") {}
    ~TempFile() { std::remove(path.c_str()); }
};

Rng make_rng(std::uint64_t stream) {
    RngHandle h;
    h.seed[0] = 0x5E;
    return Rng(h.with_stream(stream));
}

}  // namespace

TEST_CASE("key material round trips bit-exactly") {
    Context ctx = get_preset("desk-64");
    Rng rng = make_rng(1);
    KeygenOptions opts;
    opts.with_refresh_key = true;
    KeySet ks = keygen(ctx, rng, opts);

    TempFile sk("sk"), pk("pk"), evk("evk"), rk("rk");
    save_sk(sk.path, ctx, ks.sk);
    save_pk(pk.path, ctx, ks.pk);
    save_evk(evk.path, ctx, ks.evk);
    save_rk(rk.path, ctx, *ks.rk);

    SecretKey sk2 = load_sk(sk.path, ctx);
    CHECK(sk2.s.coeffs == ks.sk.s.coeffs);
    CHECK(sk2.h == ks.sk.h);

    PublicKey pk2 = load_pk(pk.path, ctx);
    CHECK(pk2.b.coeffs == ks.pk.b.coeffs);
    CHECK(pk2.a.coeffs == ks.pk.a.coeffs);

    EvalKey evk2 = load_evk(evk.path, ctx);
    CHECK(evk2.b0.coeffs == ks.evk.b0.coeffs);
    CHECK(evk2.a0.coeffs == ks.evk.a0.coeffs);

    RefreshKey rk2 = load_rk(rk.path, ctx);
    CHECK(rk2.tau == ks.rk->tau);
    CHECK(rk2.kappa == ks.rk->kappa);
    CHECK(rk2.test_mode == ks.rk->test_mode);
    REQUIRE(rk2.rk.size() == ks.rk->rk.size());
    for (std::size_t i = 0; i < rk2.rk.size(); ++i) {
        REQUIRE(rk2.rk[i].c0.coeffs == ks.rk->rk[i].c0.coeffs);
        REQUIRE(rk2.rk[i].c1.coeffs == ks.rk->rk[i].c1.coeffs);
    }
    CHECK(rk2.G0.coeffs == ks.rk->G0.coeffs);
    CHECK(rk2.G1.coeffs == ks.rk->G1.coeffs);
}

TEST_CASE("ciphertexts round trip, including large product coefficients") {
    Context ctx = get_preset("desk-256");
    Rng rng = make_rng(2);
    KeySet ks = keygen(ctx, rng);
    PlainVec z(ctx.ring.N / 2, {1.0, -1.0});
    Ciphertext c = encrypt(ctx, ks.pk, encode(z, ctx.delta, ctx.ring), rng);
    Ciphertext cp = mult(ctx, ks.evk, c, c);

    TempFile f("ct");
    save_ct(f.path, ctx, cp);
    Ciphertext cp2 = load_ct(f.path, ctx);
    CHECK(cp2.c0.coeffs == cp.c0.coeffs);
    CHECK(cp2.c1.coeffs == cp.c1.coeffs);
    CHECK(cp2.noise_bound == cp.noise_bound);
    CHECK(cp2.scale == cp.scale);
}

TEST_CASE("negative coefficients survive the lo/hi split") {
    Context ctx = get_preset("desk-64");
    Ciphertext c;
    c.c0 = bp_zero(ctx.ring);
    c.c1 = bp_zero(ctx.ring);
    c.c0.coeffs[0] = -1;
    c.c0.coeffs[1] = -(i128(1) << 100);
    c.c0.coeffs[2] = (i128(1) << 100) + 12345;
    c.scale = 4.0;
    TempFile f("neg");
    save_ct(f.path, ctx, c);
    Ciphertext c2 = load_ct(f.path, ctx);
    CHECK(c2.c0.coeffs == c.c0.coeffs);
}

TEST_CASE("params digest mismatch is rejected") {
    Context ctx = get_preset("desk-64");
    Rng rng = make_rng(3);
    KeySet ks = keygen(ctx, rng);
    TempFile f("digest");
    save_sk(f.path, ctx, ks.sk);
    Context other = get_preset("desk-256");
    CHECK_THROWS_AS(load_sk(f.path, other), IoError);
    // Same preset, different modulus domain: digest differs too.
    Context modular = with_domain(ctx, Domain::Modular);
    CHECK_THROWS_AS(load_sk(f.path, modular), IoError);
}

TEST_CASE("artifact kind mismatch is rejected") {
    Context ctx = get_preset("desk-64");
    Rng rng = make_rng(4);
    KeySet ks = keygen(ctx, rng);
    TempFile f("kind");
    save_pk(f.path, ctx, ks.pk);
    CHECK_THROWS_AS(load_sk(f.path, ctx), IoError);
}

TEST_CASE("missing and truncated files raise IoError") {
    Context ctx = get_preset("desk-64");
    CHECK_THROWS_AS(load_sk("does_not_exist.bin", ctx), IoError);
    TempFile f("trunc");
    {
        Rng rng = make_rng(5);
        KeySet ks = keygen(ctx, rng);
        save_sk(f.path, ctx, ks.sk);
    }
    // Truncate to the first 16 bytes.
    {
        std::FILE* in = std::fopen(f.path.c_str(), "rb");
        char buf[16];
        REQUIRE(std::fread(buf, 1, 16, in) == 16);
        std::fclose(in);
        std::FILE* out = std::fopen(f.path.c_str(), "wb");
        std::fwrite(buf, 1, 16, out);
        std::fclose(out);
    }
    CHECK_THROWS_AS(load_sk(f.path, ctx), IoError);
}

TEST_CASE("code artifact round trips and cross-checks its generator") {
    CodeArtifact ca;
    ca.code = bch::build_code(7, 3, bch::kPrimPolyM7);
    ca.perm_seed[0] = 0xAB;
    ca.perm_seed[31] = 0xCD;
    ca.pipeline.M_bits = 8192;
    ca.pipeline.k_pipe = 101;
    TempFile f("code");
    save_code(f.path, ca);
    CodeArtifact ca2 = load_code(f.path);
    CHECK(ca2.code.g == ca.code.g);
    CHECK(ca2.code.k == 106);
    CHECK(ca2.perm_seed == ca.perm_seed);
    CHECK(ca2.pipeline.M_bits == 8192);
    CHECK(ca2.pipeline.k_pipe == 101);
}
