#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracdecay/mittag_leffler.hpp"

using namespace fracdecay;
using cd = std::complex<double>;

namespace {

struct FixtureRow {
    double alpha, delta;
    cd z, ref;
    double tol;
};

std::vector<FixtureRow> load_fixtures() {
    std::ifstream in(std::string(FRACDECAY_DATA_DIR) + "/ml_fixtures.csv");
    REQUIRE(in.good());
    std::vector<FixtureRow> rows;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[7];
        for (double& x : v) {
            REQUIRE(std::getline(ls, cell, ','));
            x = std::stod(cell);
        }
        rows.push_back({v[0], v[1], {v[2], v[3]}, {v[4], v[5]}, v[6]});
    }
    return rows;
}

} // namespace

TEST_CASE("fixture corpus across all evaluation regimes") {
    const auto rows = load_fixtures();
    REQUIRE(rows.size() > 900);
    std::size_t checked = 0;
    for (const auto& row : rows) {
        const cd got = ml({row.alpha, row.delta}, row.z);
        const double err = std::abs(got - row.ref);
        INFO("alpha=" << row.alpha << " delta=" << row.delta << " z=(" << row.z.real() << ","
                      << row.z.imag() << ") err=" << err << " tol=" << row.tol);
        REQUIRE(err <= row.tol * (1.0 + std::abs(row.ref)));
        ++checked;
    }
    CHECK(checked == rows.size());
}

TEST_CASE("exponential, cosine, and shifted-exponential identities") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> rad(0.0, 30.0), ang(-pi_d, pi_d);
    for (int i = 0; i < 300; ++i) {
        const cd z = std::polar(rad(rng), ang(rng));
        const cd e = std::exp(z);
        CHECK(std::abs(ml({1.0, 1.0}, z) - e) <= 1e-9 * (1.0 + std::abs(e)));
        const cd e12 = std::abs(z) < 1e-12 ? cd(1.0, 0.0) : (e - 1.0) / z;
        CHECK(std::abs(ml({1.0, 2.0}, z) - e12) <= 1e-9 * (1.0 + std::abs(e12)));
    }
    for (double x = 0.0; x <= 30.0; x += 0.37) {
        const double c = std::cos(x);
        CHECK(std::abs(ml({2.0, 1.0}, {-x * x, 0.0}) - c) <= 1e-9 * (1.0 + std::fabs(c)));
    }
}

TEST_CASE("recurrence lowers delta by one alpha step") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> a_d(0.05, 2.0), d_d(0.5, 3.0), rad(0.0, 20.0),
        ang(-pi_d, pi_d);
    for (int i = 0; i < 1000; ++i) {
        const double a = a_d(rng), d = d_d(rng);
        const cd z = std::polar(rad(rng), ang(rng));
        const cd lhs = ml({a, d}, z);
        const cd rhs = double(detail::recip_gamma(d)) + z * ml({a, d + a}, z);
        const double err = std::abs(lhs - rhs);
        if (!std::isfinite(err)) {
            // only legitimate past the double overflow scale e^{709}
            REQUIRE(std::pow(std::abs(z), 1.0 / a) > 690.0);
            continue;
        }
        CHECK(err <= 1e-8 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("value at the origin is 1/Gamma(delta), poles giving zero") {
    CHECK(ml({0.7, 1.0}, {0.0, 0.0}) == cd(1.0, 0.0));
    CHECK(std::abs(ml({0.7, 1.3}, {0.0, 0.0}).real() - 1.0 / gamma_real(1.3)) < 1e-15);
    CHECK(ml({0.7, 0.0}, {0.0, 0.0}) == cd(0.0, 0.0));
    CHECK(ml({0.7, -2.0}, {0.0, 0.0}) == cd(0.0, 0.0));
}

TEST_CASE("alpha=2 matches cosh on the positive axis including growth") {
    for (double x : {1.0, 25.0, 100.0, 1600.0, 4000.0}) {
        const double want = std::cosh(std::sqrt(x));
        const cd got = ml({2.0, 1.0}, {x, 0.0});
        CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::fabs(want)));
    }
}

TEST_CASE("parameter domain is enforced") {
    CHECK_THROWS_AS(ml({0.0, 1.0}, {1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(ml({-0.5, 1.0}, {1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(ml({2.5, 1.0}, {1.0, 0.0}), domain_error);
}

TEST_CASE("asymptotic form rejects points inside the growth sector") {
    CHECK_THROWS_AS(ml_asymptotic({0.8, 1.0}, {50.0, 0.0}, 100), domain_error);
    // far on the negative axis it matches the full evaluation
    const cd a = ml_asymptotic({0.8, 1.0}, {-80.0, 0.0}, 200);
    const cd f = ml({0.8, 1.0}, {-80.0, 0.0});
    CHECK(std::abs(a - f) <= 1e-10 * (1.0 + std::abs(f)));
}

TEST_CASE("propagator wrappers enforce their ranges") {
    CHECK_THROWS_AS(propagator_heat(1.2, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(propagator_heat(0.5, -1.0, 1.0), domain_error);
    CHECK_THROWS_AS(propagator_wave_pair(0.9, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(propagator_wave_pair(2.0, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(propagator_schrodinger(1.0, 1.0, 1.0), domain_error);
    // heat at beta=1 is the plain exponential
    CHECK(std::fabs(propagator_heat(1.0, 0.7, 2.0) - std::exp(-1.4)) < 1e-14);
    // wave pair second entry is t * E_{beta,2}(-t^beta s)
    const auto [w0, w1] = propagator_wave_pair(1.5, 0.8, 2.0);
    const double tb = std::pow(0.8, 1.5);
    CHECK(std::fabs(w0 - ml({1.5, 1.0}, {-tb * 2.0, 0.0}).real()) < 1e-14);
    CHECK(std::fabs(w1 - 0.8 * ml({1.5, 2.0}, {-tb * 2.0, 0.0}).real()) < 1e-14);
    // schrodinger lies on the imaginary axis
    const cd s = propagator_schrodinger(0.5, 1.0, 1.0);
    CHECK(std::abs(s - ml({0.5, 1.0}, {0.0, 1.0})) == 0.0);
}

TEST_CASE("half-order heat value matches the scaled complementary error function") {
    // E_{1/2}(-x) = exp(x^2) erfc(x)
    for (double x : {0.3, 1.0, 2.5}) {
        const double want = std::exp(x * x) * std::erfc(x);
        CHECK(std::fabs(ml({0.5, 1.0}, {-x, 0.0}).real() - want) <= 1e-12 * (1.0 + want));
    }
}

TEST_CASE("envelope constant is finite and stable for sub-exponential orders") {
    const double c2 = envelope_constant({0.9, 1.0}, default_sector(0.9), 1e2, 300);
    const double c4 = envelope_constant({0.9, 1.0}, default_sector(0.9), 1e4, 300);
    CHECK(c2 >= 1.0);
    CHECK(std::fabs(c4 - c2) / c2 < 0.05);
    CHECK_THROWS_AS(envelope_constant({0.9, 1.0}, default_sector(0.9), -1.0, 300), domain_error);
    CHECK_THROWS_AS(envelope_constant({0.9, 1.0}, default_sector(0.9), 1e2, 3), domain_error);
}
