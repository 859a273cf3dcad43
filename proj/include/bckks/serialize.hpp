#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bckks/bch.hpp"
#include "bckks/scheme.hpp"

namespace bckks {

// Artifact container: magic "BCKS", u32 format version, u8 kind tag, u64 params
// digest, then little-endian payload (lengths as u64, coefficients as lo/hi
// 64-bit pairs). Round trips are bit-exact; digest mismatches are rejected.
enum class ArtifactKind : std::uint8_t {
    SecretKey = 0,
    PublicKey = 1,
    EvalKey = 2,
    RefreshKey = 3,
    Ciphertext = 4,
    Code = 5,
};

inline constexpr std::uint32_t kFormatVersion = 1;

std::uint64_t params_digest(const Context& ctx);

void save_sk(const std::string& path, const Context& ctx, const SecretKey& sk);
SecretKey load_sk(const std::string& path, const Context& ctx);

void save_pk(const std::string& path, const Context& ctx, const PublicKey& pk);
PublicKey load_pk(const std::string& path, const Context& ctx);

void save_evk(const std::string& path, const Context& ctx, const EvalKey& evk);
EvalKey load_evk(const std::string& path, const Context& ctx);

void save_rk(const std::string& path, const Context& ctx, const RefreshKey& rk);
RefreshKey load_rk(const std::string& path, const Context& ctx);

void save_ct(const std::string& path, const Context& ctx, const Ciphertext& ct);
Ciphertext load_ct(const std::string& path, const Context& ctx);

// Code descriptor: (m, primitive_poly, t, g bits, permutation seed, k_pipe, M_bits).
struct CodeArtifact {
    bch::BchCode code;
    std::array<std::uint8_t, 32> perm_seed{};
    bch::PipelineParams pipeline;
};

void save_code(const std::string& path, const CodeArtifact& ca);
CodeArtifact load_code(const std::string& path);

}  // namespace bckks
