#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bckks {

// Exit-code mapping used by the CLI: ParamError -> 2, DecodeFailure -> 3, IoError -> 4.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact-mode arithmetic would leave the 128-bit backing; detected, never wrapped.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// An R-coefficient violates the declared bound B = 2^lambda_B.
struct CoefficientOverflow : std::range_error {
    std::size_t index;
    CoefficientOverflow(const std::string& msg, std::size_t idx)
        : std::range_error(msg), index(idx) {}
};

// Uncorrectable BCH word (or pipeline block); caller policy decides.
struct DecodeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bckks
