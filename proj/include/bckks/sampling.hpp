#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bckks/ring.hpp"

namespace bckks {

// (seed, stream_id) fully determines the sample sequence.
struct RngHandle {
    std::array<std::uint8_t, 32> seed{};
    std::uint64_t stream_id = 0;

    static RngHandle from_hex(const std::string& hex, std::uint64_t stream_id = 0);
    RngHandle with_stream(std::uint64_t sid) const {
        RngHandle h = *this;
        h.stream_id = sid;
        return h;
    }
};

class Rng {
  public:
    explicit Rng(const RngHandle& handle);

    std::uint64_t next_u64();
    std::uint64_t uniform_below(std::uint64_t n);  // rejection sampling
    double uniform01();                            // 53-bit mantissa in [0,1)
    double gaussian(double sigma);                 // Box-Muller

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// HWT(h): exactly h nonzero entries, each independently +-1 (R layout).
std::vector<std::int64_t> sample_hwt(std::size_t h, std::size_t dim, Rng& rng);

// DG(sigma^2): rounded continuous Gaussian, tail cut at 6 sigma.
std::vector<std::int64_t> sample_dg(double sigma, std::size_t dim, Rng& rng);

// ZO(rho): 0 w.p. 1-rho, +-1 each w.p. rho/2.
std::vector<std::int64_t> sample_zo(double rho, std::size_t dim, Rng& rng);

// Uniform coefficients in {0,1} (fresh BP element, used for pk/evk 'a').
BPoly sample_uniform_binary(const RingParams& params, Rng& rng);

// Signed bit decomposition of an R-layout vector into BP (p^{-1} with the
// sign carried into the bits); coefficients land in {-1,0,1}.
BPoly binarize(const RingParams& params, const std::vector<std::int64_t>& v);

}  // namespace bckks
