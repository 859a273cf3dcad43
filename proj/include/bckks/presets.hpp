#pragma once

#include <string>
#include <vector>

#include "bckks/scheme.hpp"

namespace bckks {

// 60-bit NTT-friendly default ciphertext modulus, q ≡ 1 (mod 2^19).
inline constexpr std::uint64_t kDefaultModulus = 576460752315482113ULL;

// desk-* presets are exercised end-to-end (exact recovery, small coefficients);
// paper-* presets carry the paper's parameter table for noise/bench reporting.
std::vector<std::string> preset_names();
Context get_preset(const std::string& name);

// Domain overrides for the --exact / --modular flags.
Context with_domain(Context ctx, Domain domain, std::uint64_t q = kDefaultModulus);

}  // namespace bckks
