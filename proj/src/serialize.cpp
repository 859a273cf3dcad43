#include "bckks/serialize.hpp"

#include <cstring>
#include <fstream>

namespace bckks {

namespace {

constexpr char kMagic[4] = {'B', 'C', 'K', 'S'};

struct Writer {
    std::ofstream os;
    explicit Writer(const std::string& path) : os(path, std::ios::binary) {
        if (!os) throw IoError("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t n) {
        os.write(static_cast<const char*>(p), std::streamsize(n));
        if (!os) throw IoError("write failure");
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) {
        std::uint8_t b[4];
        for (int i = 0; i < 4; ++i) b[i] = std::uint8_t(v >> (8 * i));
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        std::uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(v >> (8 * i));
        bytes(b, 8);
    }
    void f64(double v) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        u64(u);
    }
    void coeff(i128 v) {
        u64(std::uint64_t(u128(v)));
        u64(std::uint64_t(u128(v) >> 64));
    }
    void poly(const BPoly& p) {
        u64(p.coeffs.size());
        for (i128 c : p.coeffs) coeff(c);
    }
};

struct Reader {
    std::ifstream is;
    explicit Reader(const std::string& path) : is(path, std::ios::binary) {
        if (!is) throw IoError("cannot open for reading: " + path);
    }
    void bytes(void* p, std::size_t n) {
        is.read(static_cast<char*>(p), std::streamsize(n));
        if (std::size_t(is.gcount()) != n) throw IoError("truncated artifact");
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        bytes(b, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint8_t b[8];
        bytes(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
        return v;
    }
    double f64() {
        std::uint64_t u = u64();
        double v;
        std::memcpy(&v, &u, 8);
        return v;
    }
    i128 coeff() {
        std::uint64_t lo = u64();
        std::uint64_t hi = u64();
        return i128((u128(hi) << 64) | lo);
    }
    BPoly poly() {
        BPoly p;
        std::uint64_t n = u64();
        if (n > (1ULL << 28)) throw IoError("implausible polynomial length");
        p.coeffs.resize(n);
        for (auto& c : p.coeffs) c = coeff();
        return p;
    }
};

void write_header(Writer& w, ArtifactKind kind, std::uint64_t digest) {
    w.bytes(kMagic, 4);
    w.u32(kFormatVersion);
    w.u8(std::uint8_t(kind));
    w.u64(digest);
}

void read_header(Reader& r, ArtifactKind kind, std::uint64_t digest) {
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw IoError("bad magic (not a BCKS artifact)");
    if (r.u32() != kFormatVersion) throw IoError("unsupported format version");
    if (r.u8() != std::uint8_t(kind)) throw IoError("artifact kind mismatch");
    std::uint64_t d = r.u64();
    if (d != digest) throw IoError("params digest mismatch");
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::uint64_t params_digest(const Context& ctx) {
    std::uint64_t h = 14695981039346656037ULL;
    h = fnv1a(h, ctx.ring.N);
    h = fnv1a(h, ctx.ring.lambda_B);
    h = fnv1a(h, ctx.ring.domain == Domain::Exact ? 0 : 1);
    h = fnv1a(h, ctx.ring.q);
    std::uint64_t sig, del;
    std::memcpy(&sig, &ctx.sigma, 8);
    std::memcpy(&del, &ctx.delta, 8);
    h = fnv1a(h, sig);
    h = fnv1a(h, del);
    h = fnv1a(h, ctx.h);
    return h;
}

void save_sk(const std::string& path, const Context& ctx, const SecretKey& sk) {
    Writer w(path);
    write_header(w, ArtifactKind::SecretKey, params_digest(ctx));
    w.u64(sk.h);
    w.poly(sk.s);
}

SecretKey load_sk(const std::string& path, const Context& ctx) {
    Reader r(path);
    read_header(r, ArtifactKind::SecretKey, params_digest(ctx));
    SecretKey sk;
    sk.h = r.u64();
    sk.s = r.poly();
    return sk;
}

void save_pk(const std::string& path, const Context& ctx, const PublicKey& pk) {
    Writer w(path);
    write_header(w, ArtifactKind::PublicKey, params_digest(ctx));
    w.poly(pk.b);
    w.poly(pk.a);
}

PublicKey load_pk(const std::string& path, const Context& ctx) {
    Reader r(path);
    read_header(r, ArtifactKind::PublicKey, params_digest(ctx));
    PublicKey pk;
    pk.b = r.poly();
    pk.a = r.poly();
    return pk;
}

void save_evk(const std::string& path, const Context& ctx, const EvalKey& evk) {
    Writer w(path);
    write_header(w, ArtifactKind::EvalKey, params_digest(ctx));
    w.poly(evk.b0);
    w.poly(evk.a0);
}

EvalKey load_evk(const std::string& path, const Context& ctx) {
    Reader r(path);
    read_header(r, ArtifactKind::EvalKey, params_digest(ctx));
    EvalKey evk;
    evk.b0 = r.poly();
    evk.a0 = r.poly();
    return evk;
}

void save_rk(const std::string& path, const Context& ctx, const RefreshKey& rk) {
    Writer w(path);
    write_header(w, ArtifactKind::RefreshKey, params_digest(ctx));
    w.f64(rk.tau);
    w.u64(rk.kappa);
    w.u8(rk.test_mode ? 1 : 0);
    w.u64(rk.rk.size());
    for (const auto& c : rk.rk) {
        w.f64(c.noise_bound);
        w.f64(c.scale);
        w.poly(c.c0);
        w.poly(c.c1);
    }
    w.poly(rk.G0);
    w.poly(rk.G1);
}

RefreshKey load_rk(const std::string& path, const Context& ctx) {
    Reader r(path);
    read_header(r, ArtifactKind::RefreshKey, params_digest(ctx));
    RefreshKey rk;
    rk.tau = r.f64();
    rk.kappa = r.u64();
    rk.test_mode = r.u8() != 0;
    std::uint64_t n = r.u64();
    rk.rk.resize(n);
    for (auto& c : rk.rk) {
        c.noise_bound = r.f64();
        c.scale = r.f64();
        c.c0 = r.poly();
        c.c1 = r.poly();
    }
    rk.G0 = r.poly();
    rk.G1 = r.poly();
    return rk;
}

void save_ct(const std::string& path, const Context& ctx, const Ciphertext& ct) {
    Writer w(path);
    write_header(w, ArtifactKind::Ciphertext, params_digest(ctx));
    w.f64(ct.noise_bound);
    w.f64(ct.scale);
    w.poly(ct.c0);
    w.poly(ct.c1);
}

Ciphertext load_ct(const std::string& path, const Context& ctx) {
    Reader r(path);
    read_header(r, ArtifactKind::Ciphertext, params_digest(ctx));
    Ciphertext ct;
    ct.noise_bound = r.f64();
    ct.scale = r.f64();
    ct.c0 = r.poly();
    ct.c1 = r.poly();
    return ct;
}

void save_code(const std::string& path, const CodeArtifact& ca) {
    Writer w(path);
    write_header(w, ArtifactKind::Code, 0);
    w.u32(ca.code.gf.m);
    w.u32(ca.code.gf.primitive_poly);
    w.u64(ca.code.t);
    w.u64(ca.code.g.size());
    for (auto b : ca.code.g) w.u8(b);
    w.bytes(ca.perm_seed.data(), 32);
    w.u64(ca.pipeline.M_bits);
    w.u64(ca.pipeline.k_pipe);
}

CodeArtifact load_code(const std::string& path) {
    Reader r(path);
    read_header(r, ArtifactKind::Code, 0);
    CodeArtifact ca;
    std::uint32_t m = r.u32();
    std::uint32_t prim = r.u32();
    std::uint64_t t = r.u64();
    ca.code = bch::build_code(m, t, prim);
    std::uint64_t glen = r.u64();
    bch::Bits g(glen);
    for (auto& b : g) b = r.u8();
    if (g != ca.code.g) throw IoError("code artifact: generator mismatch");
    r.bytes(ca.perm_seed.data(), 32);
    ca.pipeline.M_bits = r.u64();
    ca.pipeline.k_pipe = r.u64();
    return ca;
}

}  // namespace bckks
