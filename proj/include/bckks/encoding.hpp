#pragma once

#include <complex>
#include <vector>

#include "bckks/ring.hpp"

namespace bckks {

// N/2 complex slots; index t corresponds to the canonical root zeta_{2N}^{4t+1}
// (one representative per conjugate pair, the residues j = 1 mod 4).
using PlainVec = std::vector<std::complex<double>>;

enum class DecodeMode { Exact, Approximate };

// Binary expansion p^{-1}: each R-coefficient becomes lambda_B signed bits.
BPoly bin_expand(const RingParams& params, const RPoly& a);

// Contraction p: a_i = sum_j 2^j * m_{i*lambda_B + j}; defined for arbitrary BPolys.
RPoly bin_contract(const RingParams& params, const BPoly& m);

// m = p^{-1}(round(Delta * pi^{-1}(z))); throws CoefficientOverflow when a
// rounded coefficient violates |a_i| < 2^lambda_B.
BPoly encode(const PlainVec& z, double delta, const RingParams& params);

// Contract, evaluate at the T-indexed roots, divide by delta; Exact mode
// rounds each slot to the nearest Gaussian integer.
PlainVec decode(const BPoly& m, double delta, const RingParams& params,
                DecodeMode mode = DecodeMode::Exact);

// Pre-binarization integer coefficients of encode (exposed for tests).
RPoly encode_rpoly(const PlainVec& z, double delta, const RingParams& params);

// Encoding of the real constant c at the given scale (constant polynomial).
BPoly encode_const(double c, double delta, const RingParams& params);

}  // namespace bckks
