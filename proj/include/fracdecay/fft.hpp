#pragma once
// Iterative radix-2 transform with unitary normalization (1/sqrt(N) in both
// directions), so Parseval holds with no extra bookkeeping.  Power-of-two
// sizes only; the grid types enforce that upstream.

#include <complex>
#include <vector>

#include "errors.hpp"

namespace fracdecay::detail {

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw domain_error("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    constexpr double two_pi = 6.28318530717958647692528676655900577;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? two_pi : -two_pi) / static_cast<double>(len);
        const std::complex<double> step(std::cos(ang), std::sin(ang));
        for (std::size_t base = 0; base < n; base += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[base + k];
                const auto v = a[base + k + len / 2] * w;
                a[base + k] = u + v;
                a[base + k + len / 2] = u - v;
                w *= step;
            }
        }
    }
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : a) x *= s;
}

} // namespace fracdecay::detail
