#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fracdecay/harness.hpp"

using namespace fracdecay;

TEST_CASE("key=value config files parse with comments and whitespace") {
    const std::string path = "test_harness_tmp.cfg";
    {
        std::ofstream f(path);
        f << "# comment\nbeta = 0.9\n q=6\nname = heat run # trailing\nbad\n n = 64\n";
    }
    auto cfg = ExperimentConfig::from_file(path);
    std::remove(path.c_str());
    CHECK(cfg.get_double("beta", 0.0) == 0.9);
    CHECK(cfg.get_int("q", 0) == 6);
    CHECK(cfg.get_string("name", "") == "heat run");
    CHECK(cfg.get_int("n", 0) == 64);
    CHECK(!cfg.has("bad"));
    CHECK(cfg.get_double("missing", 2.5) == 2.5);
    cfg.set("beta", "0.5");
    CHECK(cfg.get_double("beta", 0.0) == 0.5);
    cfg.set("x", "abc");
    CHECK_THROWS_AS(cfg.get_double("x", 0.0), domain_error);
    CHECK_THROWS_AS(ExperimentConfig::from_file("no_such_file.cfg"), domain_error);
}

TEST_CASE("log-log fit recovers exact power laws") {
    TimeSeries s;
    for (int i = 0; i < 30; ++i) {
        const double t = std::pow(10.0, -1.0 + i * 0.1);
        s.times.push_back(t);
        s.values.push_back(3.7 * std::pow(t, -0.3));
    }
    auto f = slope_fit(s, 0.05, 200.0);
    CHECK(std::abs(f.slope + 0.3) < 1e-12);
    CHECK(f.stderr_ < 1e-12);
    TimeSeries c = s;
    for (auto& v : c.values) v = 2.0;
    CHECK(std::abs(slope_fit(c, 0.05, 200.0).slope) < 1e-14);
    CHECK_THROWS_AS(slope_fit(s, 99.0, 100.0), domain_error); // fewer than 5 points
    TimeSeries broken = s;
    broken.times[3] = broken.times[2]; // not strictly increasing
    CHECK_THROWS_AS(slope_fit(broken, 0.05, 200.0), domain_error);
    TimeSeries negative = s;
    negative.values[4] = -1.0;
    CHECK_THROWS_AS(slope_fit(negative, 0.05, 200.0), domain_error);
}

TEST_CASE("envelope profile rows stay under the bound and reproduce bytewise") {
    std::ostringstream os;
    auto r = run_envelope_profile(1.5, 100.0, 512, os);
    CHECK(r.dominated);
    CHECK(r.worst_gap >= 0.0);
    CHECK(os.str().substr(0, 13) == "x,E1,E2,bound");
    std::ostringstream os2;
    run_envelope_profile(1.5, 100.0, 512, os2);
    CHECK(os.str() == os2.str());
    std::ostringstream os3;
    auto r3 = run_envelope_profile(1.0 + 1e-6, 50.0, 256, os3);
    CHECK(r3.dominated);
    CHECK_THROWS_AS(run_envelope_profile(1.0, 10.0, 16, os3), domain_error);
    CHECK_THROWS_AS(run_envelope_profile(2.0, 10.0, 16, os3), domain_error);
}

TEST_CASE("random model sweep finds no violations and is seed-deterministic") {
    std::ostringstream os;
    const int bad = run_random_model_suite(42, 40, 2.5, os);
    CHECK(bad == 0);
    std::ostringstream os2;
    run_random_model_suite(42, 40, 2.5, os2);
    CHECK(os.str() == os2.str());

    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "model_id,r,lhs,rhs,margin,pass");
    int id = 0, tight_seen = 0;
    while (std::getline(in, line)) {
        if (id % 10 == 9) { // every tenth model uses the exactly-tight envelope
            ++tight_seen;
            std::istringstream ls(line);
            std::string cell;
            for (int c = 0; c < 5; ++c) std::getline(ls, cell, ',');
            CHECK(std::abs(std::stod(cell)) <= 1e-10);
        }
        ++id;
    }
    CHECK(id == 40);
    CHECK(tight_seen == 4);
}

TEST_CASE("diffusive decay run beats its envelope at the predicted rate") {
    DecayConfig cfg;
    cfg.kind = EquationKind::heat;
    cfg.beta = 0.9;
    cfg.dim = 2;
    cfg.n = 64;
    cfg.p = 2;
    cfg.q = 6;
    cfg.points = 25;
    cfg.seed = 7;
    std::ostringstream os;
    auto res = run_decay(cfg, os);
    CHECK(std::abs(res.expected_exponent + 0.3) < 1e-15);
    CHECK(std::abs(res.bound_slope - res.expected_exponent) <= 1e-3);
    CHECK(res.ratio_slope <= 0.02);
    CHECK(res.pass);
    CHECK(os.str().substr(0, 21) == "t,norm_q,bound,ratio\n");
    std::ostringstream os2;
    auto res2 = run_decay(cfg, os2);
    CHECK(os.str() == os2.str());
    CHECK(res2.bound_slope == res.bound_slope);
}

TEST_CASE("whole-space emulation guard rejects times past the box horizon") {
    DecayConfig cfg;
    cfg.kind = EquationKind::heat;
    cfg.beta = 0.9;
    cfg.dim = 2;
    cfg.q = 6.0;
    cfg.emulate_rn = true;
    cfg.t_max = 50.0;
    cfg.box_length = 2.0 * pi_d;
    std::ostringstream os;
    CHECK_THROWS_AS(run_decay(cfg, os), domain_error);
}

TEST_CASE("exponent catalog lists all entries with verified fits") {
    std::ostringstream os;
    auto res = run_catalog_table(0.5, 2.0, 2.4, os);
    REQUIRE(res.rows.size() == 8);
    CHECK(res.fits_ok);
    CHECK(res.rows[0].lambda == 1.0);
    CHECK(res.rows[2].lambda == 2.0);
    CHECK(res.rows[5].lambda == 4.5);
    CHECK(std::abs(decay_exponent(0.5, 0.5, 2.0, 4.0) + 0.0625) < 1e-15);
    std::ostringstream os2;
    run_catalog_table(0.5, 2.0, 2.4, os2);
    CHECK(os.str() == os2.str());
    CHECK(os.str().substr(0, 25) == "name,lambda,exponent,fit\n");
}

TEST_CASE("relative output paths honor the output directory variable") {
    setenv("FRACDECAY_OUTDIR", "/tmp/outx", 1);
    CHECK(resolve_output_path("a.csv") == "/tmp/outx/a.csv");
    CHECK(resolve_output_path("/abs/a.csv") == "/abs/a.csv");
    unsetenv("FRACDECAY_OUTDIR");
    CHECK(resolve_output_path("a.csv") == "a.csv");
}
