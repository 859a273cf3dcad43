#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace bckks::detail {

// Iterative radix-2 FFT; invert=true applies the conjugate kernel and 1/n.
inline void fft(std::vector<std::complex<double>>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2 * pi / double(len) * (invert ? 1 : -1);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1);
            for (std::size_t j = 0; j < len / 2; ++j) {
                auto u = a[i + j];
                auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        for (auto& x : a) x /= double(n);
    }
}

// Evaluations of a real-coefficient length-N polynomial at zeta_{2N}^{2k+1},
// k = 0..N-1 (the odd powers of the primitive 2N-th root, positive direction).
inline std::vector<std::complex<double>> embed_odd_powers(const std::vector<double>& coeffs) {
    const std::size_t N = coeffs.size();
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> b(N);
    for (std::size_t i = 0; i < N; ++i) {
        double ang = pi * double(i) / double(N);
        b[i] = coeffs[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    fft(b, true);
    for (auto& x : b) x *= double(N);
    return b;
}

// Inverse of embed_odd_powers: real coefficients from the N evaluation values.
inline std::vector<double> unembed_odd_powers(std::vector<std::complex<double>> e) {
    const std::size_t N = e.size();
    const double pi = 3.14159265358979323846;
    fft(e, false);
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        double ang = -pi * double(i) / double(N);
        std::complex<double> tw(std::cos(ang), std::sin(ang));
        out[i] = (e[i] / double(N) * tw).real();
    }
    return out;
}

}  // namespace bckks::detail
