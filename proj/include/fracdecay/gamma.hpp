#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace fracdecay {

namespace detail {

// sin(pi*y) with argument reduction done on y itself, so huge y stay exact.
inline long double sinpi(long double y) {
    long double n = std::nearbyint(y);
    long double r = y - n; // in [-0.5, 0.5]
    long double s = std::sin(3.14159265358979323846264338327950288L * r);
    return (std::fmod(std::fabs(n), 2.0L) == 1.0L) ? -s : s;
}

// 1/Gamma(y), entire in y: exact 0 at the poles y = 0, -1, -2, ...
// Series code multiplies by this instead of dividing by Gamma, so terms that
// hit a pole drop out instead of trapping.
inline long double recip_gamma(long double y) {
    constexpr long double pi = 3.14159265358979323846264338327950288L;
    if (y > 0.5L) {
        if (y < 1750.0L) return 1.0L / std::tgamma(y);
        return std::exp(-std::lgamma(y)); // underflows to 0 for huge y
    }
    if (y <= 0.0L && y == std::nearbyint(y)) return 0.0L;
    // reflection: 1/Gamma(y) = sin(pi y) * Gamma(1-y) / pi
    long double s = sinpi(y);
    long double oneMinus = 1.0L - y;
    if (oneMinus < 1750.0L) return s * std::tgamma(oneMinus) / pi;
    return s / pi * std::exp(std::lgamma(oneMinus)); // may overflow to inf, honestly
}

} // namespace detail

// Euler gamma on the real line. Poles are rejected rather than returned as inf.
inline double gamma_real(double x) {
    if (x <= 0.0 && x == std::nearbyint(x))
        throw domain_error("gamma_real: pole at nonpositive integer");
    return static_cast<double>(std::tgamma(static_cast<long double>(x)));
}

} // namespace fracdecay
