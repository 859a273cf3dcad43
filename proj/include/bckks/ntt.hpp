#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bckks::ntt {

// CRT pair for exact products: both primes are ~2^62 and ≡ 1 (mod 2^24),
// so negacyclic transforms exist for every power-of-two K up to 2^23.
inline constexpr std::uint64_t kPrime1 = 4611686018326724609ULL;  // root 3
inline constexpr std::uint64_t kPrime2 = 4611686018309947393ULL;  // root 5

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
std::uint64_t find_primitive_root(std::uint64_t p);

// Can a negacyclic NTT of size K be run mod q? (q prime, q ≡ 1 mod 2K.)
bool supports_ntt(std::uint64_t q, std::size_t K);

// Precomputed twiddles for the negacyclic (psi-twisted) transform of size K mod p.
struct Plan {
    std::uint64_t p = 0;
    std::size_t K = 0;
    std::vector<std::uint64_t> psi_rev;      // psi powers, bit-reversed order
    std::vector<std::uint64_t> psi_inv_rev;  // inverse psi powers, bit-reversed
    std::uint64_t K_inv = 0;
};

// Cached per (p, K); thread-safe.
const Plan& plan(std::uint64_t p, std::size_t K);

// In-place forward/inverse negacyclic NTT over residues in [0, p).
void forward(const Plan& pl, std::vector<std::uint64_t>& a);
void inverse(const Plan& pl, std::vector<std::uint64_t>& a);

// Negacyclic product of residue vectors mod p.
std::vector<std::uint64_t> multiply(const Plan& pl,
                                    std::vector<std::uint64_t> a,
                                    std::vector<std::uint64_t> b);

}  // namespace bckks::ntt
