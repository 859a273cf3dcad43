#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bckks/encoding.hpp"
#include "bckks/noise_model.hpp"
#include "bckks/ring.hpp"
#include "bckks/sampling.hpp"

namespace bckks {

// A parameter set binding the ring to the scheme-level knobs.
struct Context {
    RingParams ring;
    double sigma = 3.19;
    std::size_t h = 64;      // secret Hamming weight
    double delta = 1048576;  // base scale 2^20
    double B_star = 0;       // refresh threshold used by eval
    double B_max = 0;        // thresh bound
    std::size_t kappa = 4;   // flooding exponent, tau = 2^kappa * B_max

    NoiseParams noise() const;
};

struct SecretKey {
    BPoly s;  // binarized HWT sample
    std::size_t h = 0;
};

struct PublicKey {
    BPoly b, a;  // b = -a*s + e
};

struct EvalKey {
    BPoly b0, a0;  // b0 = -a0*s + e0 + s^2
};

struct Ciphertext {
    BPoly c0, c1;
    double noise_bound = 0;
    double scale = 1;
};

struct RefreshKey {
    std::vector<Ciphertext> rk;  // rk[i] encrypts the constant s_i, all K positions
    double tau = 0;
    std::size_t kappa = 0;
    bool test_mode = false;  // noiseless rk (verification of the homomorphic identity)
    // Precomputed G_c = sum_i rk[i].c * x^i, so the refresh sum collapses to one product.
    BPoly G0, G1;
};

struct KeySet {
    SecretKey sk;
    PublicKey pk;
    EvalKey evk;
    std::optional<RefreshKey> rk;
    double tau = 0;
    // Retained noise polynomials (secret material; exposed for the exact
    // decryption-identity tests).
    BPoly pk_e, evk_e0;
};

struct KeygenOptions {
    bool with_refresh_key = false;
    bool test_mode_rk = false;
};

KeySet keygen(const Context& ctx, Rng& rng, const KeygenOptions& opts = {});

// c = (v*b + m + e0, v*a + e1), noise_bound = B_enc. noiseless is a test hook
// producing (m, 0).
Ciphertext encrypt(const Context& ctx, const PublicKey& pk, const BPoly& m, Rng& rng,
                   double scale = 0, bool noiseless = false);

// c0 + c1*s, no rounding.
BPoly decrypt_raw(const Context& ctx, const SecretKey& sk, const Ciphertext& c);

PlainVec decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& c,
                 DecodeMode mode = DecodeMode::Exact);

Ciphertext add(const Context& ctx, const Ciphertext& c1, const Ciphertext& c2);

Ciphertext add_const(const Context& ctx, const Ciphertext& c, const BPoly& a);

// Bound scales by r_norm(a); const_scale tracks the plaintext scale of a.
Ciphertext mul_const(const Context& ctx, const Ciphertext& c, const BPoly& a,
                     double const_scale = 1.0);

// Relinearized product; scales multiply (there is no rescale in this scheme).
Ciphertext mult(const Context& ctx, const EvalKey& evk, const Ciphertext& c1,
                const Ciphertext& c2);

// True iff B0 > B_max (strict).
bool thresh(double B_max, double B0);

// Homomorphic re-encryption t = (c0,0) + sum_i mul_const(rk[i], c1*x^i) followed
// by flooding with DG(tau^2) and a fresh pk mask. zero_flooding is the test hook.
Ciphertext refresh(const Context& ctx, const KeySet& keys, const Ciphertext& c, Rng& rng,
                   bool zero_flooding = false);

}  // namespace bckks
