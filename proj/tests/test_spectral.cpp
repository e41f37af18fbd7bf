#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <variant>

#include "fracdecay/spectral_model.hpp"

using namespace fracdecay;

TEST_CASE("discrete counting is strict and open at both ends") {
    SpectralProfile d{DiscreteSpectrum({0.0, 1.0, 1.0, 4.0})};
    CHECK(counting_function(d, 2.0) == 2.0);
    CHECK(counting_function(d, 1.0) == 0.0);       // strict upper end
    CHECK(counting_function(d, 1.0 + 1e-9) == 2.0); // multiplicity counted
    CHECK(counting_function(d, 4.0) == 2.0);
    CHECK(counting_function(d, 100.0) == 3.0);     // zero mode never counts
    CHECK(counting_function(d, 0.0) == 0.0);
    CHECK_THROWS_AS(counting_function(d, -1.0), domain_error);
    CHECK_THROWS_AS(DiscreteSpectrum({1.0, -2.0}), domain_error);
}

TEST_CASE("torus lattice counting in one and two dimensions") {
    SpectralProfile t1{TorusLatticeProfile(1, 40)};
    CHECK(counting_function(t1, 10.0) == 6.0); // k = ±1, ±2, ±3
    CHECK(counting_function(t1, 1.0) == 0.0);
    CHECK(counting_function(t1, 1.5) == 2.0);
    SpectralProfile t2{TorusLatticeProfile(2, 12)};
    CHECK(counting_function(t2, 2.0) == 4.0); // four unit vectors
    CHECK(counting_function(t2, 2.5) == 8.0); // plus the four diagonals
    CHECK_THROWS_AS(TorusLatticeProfile(3, 12), domain_error);
    CHECK_THROWS_AS(TorusLatticeProfile(1, 0), domain_error);
}

TEST_CASE("power law and vladimirov counting") {
    SpectralProfile p{PowerLawProfile(1.5, 2.0)};
    CHECK(std::fabs(counting_function(p, 4.0) - 16.0) < 1e-12);
    CHECK(counting_function(p, 0.0) == 0.0);
    CHECK_THROWS_AS(PowerLawProfile(-1.0, 1.0), domain_error);

    SpectralProfile v{VladimirovProfile(2, 1.0)};
    CHECK(counting_function(v, 8.0) == 8.0); // jumps exactly at the powers
    CHECK(counting_function(v, 7.9) == 4.0);
    CHECK(counting_function(v, 0.9) == 0.5);
    CHECK_THROWS_AS(VladimirovProfile(4, 1.0), domain_error); // rho must be prime
    CHECK_THROWS_AS(VladimirovProfile(2, 0.0), domain_error);
}

TEST_CASE("vladimirov counting sits inside its power-law sandwich") {
    SpectralProfile v{VladimirovProfile(3, 2.0)};
    for (double s : {0.1, 1.0, 2.5, 8.9, 9.0, 100.0, 1e5}) {
        const double n = counting_function(v, s);
        const double up = std::pow(s, 0.5);
        CHECK(n <= up * (1.0 + 1e-9));
        CHECK(n >= up / 3.0 * (1.0 - 1e-9));
    }
}

TEST_CASE("catalog rows map to the documented exponents") {
    CHECK(std::get<PowerLawProfile>(catalog_profile("euclidean(2)")).lambda == 1.0);
    CHECK(std::get<PowerLawProfile>(catalog_profile("euclidean(3)")).lambda == 1.5);
    CHECK(std::get<PowerLawProfile>(catalog_profile("compact(2)")).lambda == 1.0);
    CHECK(std::get<PowerLawProfile>(catalog_profile("heisenberg(1)")).lambda == 2.0);
    CHECK(std::get<PowerLawProfile>(catalog_profile("rockland(4,2)")).lambda == 2.0);
    CHECK(std::get<PowerLawProfile>(catalog_profile("engel")).lambda == 3.0);
    CHECK(std::get<PowerLawProfile>(catalog_profile("cartan")).lambda == 4.5);
    CHECK(std::get<PowerLawProfile>(catalog_profile("subcoercive(4,2)")).lambda == 2.0);
    const auto v = catalog_profile("vladimirov(2,1)");
    CHECK(std::get<VladimirovProfile>(v).rho == 2);
    CHECK(std::get<VladimirovProfile>(v).mu == 1.0);
    CHECK_THROWS_AS(catalog_profile("euclidean(2,3)"), domain_error);
    CHECK_THROWS_AS(catalog_profile("euclidean"), domain_error);
    CHECK_THROWS_AS(catalog_profile("martian(1)"), domain_error);
}

TEST_CASE("exponent fit recovers growth rates") {
    CHECK(std::fabs(exponent_fit(SpectralProfile(PowerLawProfile(2.5, 3.0)), 1e2, 1e5, 60) - 2.5) <
          1e-12);
    CHECK(std::fabs(exponent_fit(SpectralProfile(TorusLatticeProfile(1, 360)), 1e2, 1e5, 60) - 0.5) <
          0.05);
    CHECK(std::fabs(exponent_fit(SpectralProfile(TorusLatticeProfile(2, 360)), 1e2, 1e5, 60) - 1.0) <
          0.05);
    CHECK(std::fabs(exponent_fit(SpectralProfile(VladimirovProfile(2, 1.0)), 1e2, 1e5, 60) - 1.0) <
          0.05);
    CHECK_THROWS_AS(exponent_fit(SpectralProfile(PowerLawProfile(1.0, 1.0)), 1e5, 1e2, 60),
                    domain_error);
    CHECK_THROWS_AS(exponent_fit(SpectralProfile(PowerLawProfile(1.0, 1.0)), 1e2, 1e5, 4),
                    domain_error);
}

TEST_CASE("profile labels carry the variant and parameters") {
    CHECK(profile_label(SpectralProfile(PowerLawProfile(1.5, 1.0))).find("power") !=
          std::string::npos);
    CHECK(profile_label(SpectralProfile(VladimirovProfile(2, 1.0))).find("vladimirov") !=
          std::string::npos);
    CHECK(profile_label(SpectralProfile(TorusLatticeProfile(2, 8))).find("torus") !=
          std::string::npos);
    CHECK(profile_label(SpectralProfile(DiscreteSpectrum({1.0}))).find("discrete") !=
          std::string::npos);
}
