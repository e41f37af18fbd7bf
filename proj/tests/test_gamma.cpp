#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracdecay/gamma.hpp"

using fracdecay::detail::recip_gamma;
using fracdecay::detail::sinpi;
using fracdecay::gamma_real;

TEST_CASE("sinpi handles huge arguments exactly") {
    CHECK(sinpi(0.0L) == 0.0L);
    CHECK(sinpi(1.0L) == 0.0L);
    CHECK(sinpi(-7.0L) == 0.0L);
    CHECK(sinpi(0.5L) == 1.0L);
    CHECK(sinpi(1.5L) == -1.0L);
    CHECK(sinpi(2.5L) == 1.0L);
    // sin(pi (n + 1/2)) alternates without cancellation even for large n
    CHECK(sinpi(1000000.5L) == 1.0L);
    CHECK(sinpi(1000001.5L) == -1.0L);
    CHECK(std::fabs(sinpi(0.25L) - 0.70710678118654752440L) < 1e-18L);
}

TEST_CASE("recip_gamma at poles and standard values") {
    CHECK(recip_gamma(0.0L) == 0.0L);
    CHECK(recip_gamma(-1.0L) == 0.0L);
    CHECK(recip_gamma(-2.0L) == 0.0L);
    CHECK(recip_gamma(-100.0L) == 0.0L);
    CHECK(std::fabs(recip_gamma(1.0L) - 1.0L) < 1e-18L);
    CHECK(std::fabs(recip_gamma(2.0L) - 1.0L) < 1e-18L);
    CHECK(std::fabs(recip_gamma(5.0L) - 1.0L / 24.0L) < 1e-19L);
    // 1/Gamma(1/2) = 1/sqrt(pi)
    CHECK(std::fabs(recip_gamma(0.5L) - 0.564189583547756286948L) < 1e-18L);
    // Gamma(-0.5) = -2 sqrt(pi)
    CHECK(std::fabs(recip_gamma(-0.5L) - 1.0L / (-3.54490770181103205459L)) < 1e-18L);
}

TEST_CASE("recip_gamma agrees with lgamma across magnitudes") {
    for (long double y : {0.75L, 1.5L, 10.0L, 100.0L, 1000.0L, 1749.0L, 1751.0L}) {
        const long double want = std::exp(-std::lgamma(y));
        const long double got = recip_gamma(y);
        CHECK(std::fabs(got - want) <= 1e-15L * std::fabs(want));
    }
    // reflection branch vs direct product formula Gamma(y) = Gamma(y+n)/(y...(y+n-1))
    const long double y = -2.3L;
    const long double g = std::tgamma(y + 4.0L) / (y * (y + 1.0L) * (y + 2.0L) * (y + 3.0L));
    CHECK(std::fabs(recip_gamma(y) - 1.0L / g) < 1e-17L * std::fabs(1.0L / g));
}

TEST_CASE("recip_gamma underflows to zero for huge arguments") {
    CHECK(recip_gamma(20000.0L) == 0.0L);
}

TEST_CASE("gamma_real rejects poles and matches factorials") {
    CHECK(gamma_real(5.0) == 24.0);
    CHECK(std::fabs(gamma_real(0.5) - std::sqrt(3.14159265358979323846)) < 1e-15);
    CHECK_THROWS_AS(gamma_real(0.0), fracdecay::domain_error);
    CHECK_THROWS_AS(gamma_real(-3.0), fracdecay::domain_error);
    CHECK(std::fabs(gamma_real(-0.5) + 3.5449077018110320546) < 1e-14);
}
