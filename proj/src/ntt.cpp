#include "bckks/ntt.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "bckks/errors.hpp"

namespace bckks::ntt {

namespace {

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::size_t bit_reverse(std::size_t x, int bits) {
    std::size_t r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (x & 1);
        x >>= 1;
    }
    return r;
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t find_primitive_root(std::uint64_t p) {
    std::uint64_t n = p - 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t m = n;
    for (std::uint64_t f = 2; f <= 2000000 && f * f <= m; f == 2 ? f = 3 : f += 2) {
        if (m % f == 0) {
            factors.push_back(f);
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) {
        if (!is_prime_u64(m))
            throw ParamError("find_primitive_root: cannot factor p-1 for this modulus");
        factors.push_back(m);
    }
    for (std::uint64_t g = 2;; ++g) {
        bool ok = true;
        for (std::uint64_t f : factors) {
            if (powmod(g, n / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

bool supports_ntt(std::uint64_t q, std::size_t K) {
    return q > 2 && (q - 1) % (2 * K) == 0 && is_prime_u64(q);
}

const Plan& plan(std::uint64_t p, std::size_t K) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::size_t>, std::unique_ptr<Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, K);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    if (!supports_ntt(p, K)) throw ParamError("ntt: modulus does not support size-K negacyclic NTT");
    auto pl = std::make_unique<Plan>();
    pl->p = p;
    pl->K = K;
    std::uint64_t g = find_primitive_root(p);
    std::uint64_t psi = powmod(g, (p - 1) / (2 * K), p);  // primitive 2K-th root
    std::uint64_t psi_inv = powmod(psi, p - 2, p);
    int bits = 0;
    while ((std::size_t(1) << bits) < K) ++bits;
    pl->psi_rev.resize(K);
    pl->psi_inv_rev.resize(K);
    std::uint64_t cur = 1, cur_inv = 1;
    std::vector<std::uint64_t> pw(K), pw_inv(K);
    for (std::size_t i = 0; i < K; ++i) {
        pw[i] = cur;
        pw_inv[i] = cur_inv;
        cur = mulmod(cur, psi, p);
        cur_inv = mulmod(cur_inv, psi_inv, p);
    }
    for (std::size_t i = 0; i < K; ++i) {
        pl->psi_rev[i] = pw[bit_reverse(i, bits)];
        pl->psi_inv_rev[i] = pw_inv[bit_reverse(i, bits)];
    }
    pl->K_inv = powmod(K % p, p - 2, p);
    const Plan& ref = *pl;
    cache.emplace(key, std::move(pl));
    return ref;
}

void forward(const Plan& pl, std::vector<std::uint64_t>& a) {
    const std::uint64_t p = pl.p;
    std::size_t t = pl.K;
    for (std::size_t m = 1; m < pl.K; m <<= 1) {
        t >>= 1;
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t S = pl.psi_rev[m + i];
            std::size_t j1 = 2 * i * t;
            for (std::size_t j = j1; j < j1 + t; ++j) {
                std::uint64_t U = a[j];
                std::uint64_t V = mulmod(a[j + t], S, p);
                a[j] = addmod(U, V, p);
                a[j + t] = submod(U, V, p);
            }
        }
    }
}

void inverse(const Plan& pl, std::vector<std::uint64_t>& a) {
    const std::uint64_t p = pl.p;
    std::size_t t = 1;
    for (std::size_t m = pl.K; m > 1; m >>= 1) {
        std::size_t h = m >> 1;
        std::size_t j1 = 0;
        for (std::size_t i = 0; i < h; ++i) {
            std::uint64_t S = pl.psi_inv_rev[h + i];
            for (std::size_t j = j1; j < j1 + t; ++j) {
                std::uint64_t U = a[j];
                std::uint64_t V = a[j + t];
                a[j] = addmod(U, V, p);
                a[j + t] = mulmod(submod(U, V, p), S, p);
            }
            j1 += 2 * t;
        }
        t <<= 1;
    }
    for (auto& x : a) x = mulmod(x, pl.K_inv, p);
}

std::vector<std::uint64_t> multiply(const Plan& pl,
                                    std::vector<std::uint64_t> a,
                                    std::vector<std::uint64_t> b) {
    forward(pl, a);
    forward(pl, b);
    for (std::size_t i = 0; i < pl.K; ++i) a[i] = mulmod(a[i], b[i], pl.p);
    inverse(pl, a);
    return a;
}

}  // namespace bckks::ntt
