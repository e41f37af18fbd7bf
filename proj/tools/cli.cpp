// fracdecay command line: propagator evaluation, envelope bounds, the
// randomized domination suite, decay experiments, and the catalog table.
// Exit codes: 0 success, 1 a verdict failed (domination, fit, decay gate),
// 2 usage or domain errors.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "fracdecay/harness.hpp"

namespace {

// CSV sink: --out writes to a file (under FRACDECAY_OUTDIR when relative),
// no --out streams to stdout.
class OutputSink {
  public:
    explicit OutputSink(const std::string& path) {
        if (path.empty() || path == "-") return;
        resolved_ = fracdecay::resolve_output_path(path);
        file_ = std::make_unique<std::ofstream>(resolved_);
        if (!*file_) throw fracdecay::domain_error("cannot open output file " + resolved_);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void report() const {
        if (file_) std::fprintf(stderr, "wrote %s\n", resolved_.c_str());
    }

  private:
    std::string resolved_;
    std::unique_ptr<std::ofstream> file_;
};

// Effective parameter lookup: command-line flag if given, else config key,
// else the built-in default.
struct Params {
    fracdecay::ExperimentConfig cfg;
    double num(const CLI::Option* opt, double flag_value, const std::string& key, double dflt) const {
        if (opt->count() > 0) return flag_value;
        return cfg.get_double(key, dflt);
    }
    long integer(const CLI::Option* opt, long flag_value, const std::string& key, long dflt) const {
        if (opt->count() > 0) return flag_value;
        return cfg.get_int(key, dflt);
    }
    std::string str(const CLI::Option* opt, const std::string& flag_value, const std::string& key,
                    const std::string& dflt) const {
        if (opt->count() > 0) return flag_value;
        return cfg.get_string(key, dflt);
    }
};

fracdecay::EquationKind parse_kind(const std::string& s) {
    if (s == "heat") return fracdecay::EquationKind::heat;
    if (s == "wave") return fracdecay::EquationKind::wave;
    if (s == "schrodinger") return fracdecay::EquationKind::schrodinger;
    throw fracdecay::domain_error("kind must be heat, wave, or schrodinger: " + s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracdecay: fractional propagators, spectral envelopes, decay experiments"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file (flags override keys)");

    // ml: evaluate the two-parameter function at one complex point
    auto* ml_cmd = app.add_subcommand("ml", "evaluate E_{alpha,delta}(z)");
    double ml_alpha = 1.0, ml_delta = 1.0, ml_re = 0.0, ml_im = 0.0;
    ml_cmd->add_option("--alpha", ml_alpha, "series order alpha in (0, 2]")->required();
    ml_cmd->add_option("--delta", ml_delta, "second parameter delta");
    ml_cmd->add_option("--re", ml_re, "Re z");
    ml_cmd->add_option("--im", ml_im, "Im z");

    // bound: envelope bound for psi(v) = c/(1 + t^beta v) against a profile
    auto* bound_cmd = app.add_subcommand("bound", "envelope bound sup psi(v) N(v)^{1/r}");
    std::string bound_profile = "euclidean(2)";
    double bound_r = 3.0, bound_t = 1.0, bound_beta = 1.0, bound_c = 1.0, bound_vmax = 1e8;
    auto* bp = bound_cmd->add_option("--profile", bound_profile, "catalog row, e.g. euclidean(2)");
    auto* br = bound_cmd->add_option("--r", bound_r, "weak-norm index r >= 1");
    auto* bt = bound_cmd->add_option("--t", bound_t, "time in the envelope");
    auto* bb = bound_cmd->add_option("--beta", bound_beta, "time order in the envelope");
    auto* bc = bound_cmd->add_option("--c", bound_c, "envelope scale psi(0)");
    auto* bv = bound_cmd->add_option("--vmax", bound_vmax, "search upper endpoint");

    // suite: randomized domination models
    auto* suite_cmd = app.add_subcommand("suite", "randomized weak-norm domination suite");
    long suite_seed = 42, suite_count = 200;
    double suite_r = 2.5;
    std::string suite_out;
    auto* ss = suite_cmd->add_option("--seed", suite_seed, "random seed");
    auto* sc = suite_cmd->add_option("--count", suite_count, "number of models");
    auto* sr = suite_cmd->add_option("--r", suite_r, "weak-norm index");
    suite_cmd->add_option("--out", suite_out, "CSV path (stdout if omitted)");

    // decay: torus decay experiment
    auto* decay_cmd = app.add_subcommand("decay", "decay-rate experiment on the torus");
    std::string decay_kind = "heat", decay_out;
    double d_beta = 0.9, d_p = 2.0, d_q = 6.0, d_box = 2.0 * fracdecay::pi_d;
    double d_tmin = 0.5, d_tmax = 50.0;
    long d_dim = 2, d_n = 64, d_points = 40, d_seed = 1;
    auto* dk = decay_cmd->add_option("--kind", decay_kind, "heat|wave|schrodinger");
    auto* db = decay_cmd->add_option("--beta", d_beta, "time order");
    auto* dd = decay_cmd->add_option("--dim", d_dim, "1 or 2");
    auto* dn = decay_cmd->add_option("--n", d_n, "grid points per dimension (power of two)");
    auto* dbox = decay_cmd->add_option("--box", d_box, "box length");
    auto* dp = decay_cmd->add_option("--p", d_p, "data norm index");
    auto* dq = decay_cmd->add_option("--q", d_q, "solution norm index");
    auto* dt0 = decay_cmd->add_option("--tmin", d_tmin, "ladder start");
    auto* dt1 = decay_cmd->add_option("--tmax", d_tmax, "ladder end");
    auto* dpt = decay_cmd->add_option("--points", d_points, "ladder points");
    auto* dsd = decay_cmd->add_option("--seed", d_seed, "random seed for the data");
    decay_cmd->add_option("--out", decay_out, "CSV path (stdout if omitted)");

    // table4: catalog exponent table
    auto* table_cmd = app.add_subcommand("table4", "operator catalog exponent table");
    double t_alpha = 0.5, t_p = 2.0, t_q = 2.4;
    std::string table_out;
    auto* ta = table_cmd->add_option("--alpha", t_alpha, "time order");
    auto* tp = table_cmd->add_option("--p", t_p, "data norm index");
    auto* tq = table_cmd->add_option("--q", t_q, "solution norm index");
    table_cmd->add_option("--out", table_out, "CSV path (stdout if omitted)");

    // figure1: envelope profile data
    auto* fig_cmd = app.add_subcommand("figure1", "uniform envelope profile data");
    double f_alpha = 1.95, f_xmax = 100.0;
    long f_points = 512;
    std::string fig_out;
    auto* fa = fig_cmd->add_option("--alpha", f_alpha, "order in (1, 2)");
    auto* fx = fig_cmd->add_option("--xmax", f_xmax, "profile endpoint");
    auto* fp = fig_cmd->add_option("--points", f_points, "profile samples");
    fig_cmd->add_option("--out", fig_out, "CSV path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Params params;
        if (!config_path.empty()) params.cfg = fracdecay::ExperimentConfig::from_file(config_path);

        if (ml_cmd->parsed()) {
            const std::complex<double> v =
                fracdecay::ml({ml_alpha, ml_delta}, {ml_re, ml_im});
            std::printf("%.17g %.17g\n", v.real(), v.imag());
            return 0;
        }
        if (bound_cmd->parsed()) {
            const double r = params.num(br, bound_r, "r", 3.0);
            const double t = params.num(bt, bound_t, "t", 1.0);
            const double beta = params.num(bb, bound_beta, "beta", 1.0);
            const double c = params.num(bc, bound_c, "c", 1.0);
            const double vmax = params.num(bv, bound_vmax, "vmax", 1e8);
            const auto profile =
                fracdecay::catalog_profile(params.str(bp, bound_profile, "profile", "euclidean(2)"));
            const double tb = std::pow(t, beta);
            const double value = fracdecay::envelope_bound(
                [c, tb](double v) { return c / (1.0 + tb * v); }, profile, r, vmax);
            std::printf("%.17g\n", value);
            return 0;
        }
        if (suite_cmd->parsed()) {
            OutputSink sink(params.str(suite_cmd->get_option("--out"), suite_out, "out", suite_out));
            const int violations = fracdecay::run_random_model_suite(
                std::uint64_t(params.integer(ss, suite_seed, "seed", 42)),
                int(params.integer(sc, suite_count, "count", 200)),
                params.num(sr, suite_r, "r", 2.5), sink.stream());
            sink.report();
            if (violations != 0) {
                std::fprintf(stderr, "domination violations: %d\n", violations);
                return 1;
            }
            return 0;
        }
        if (decay_cmd->parsed()) {
            fracdecay::DecayConfig cfg;
            cfg.kind = parse_kind(params.str(dk, decay_kind, "kind", "heat"));
            cfg.beta = params.num(db, d_beta, "beta", 0.9);
            cfg.dim = int(params.integer(dd, d_dim, "dim", 2));
            cfg.n = std::size_t(params.integer(dn, d_n, "n", 64));
            cfg.box_length = params.num(dbox, d_box, "box", 2.0 * fracdecay::pi_d);
            cfg.p = params.num(dp, d_p, "p", 2.0);
            cfg.q = params.num(dq, d_q, "q", 6.0);
            cfg.t_min = params.num(dt0, d_tmin, "tmin", 0.5);
            cfg.t_max = params.num(dt1, d_tmax, "tmax", 50.0);
            cfg.points = int(params.integer(dpt, d_points, "points", 40));
            cfg.seed = std::uint64_t(params.integer(dsd, d_seed, "seed", 1));
            cfg.emulate_rn = params.cfg.get_int("emulate_rn", 0) != 0;
            OutputSink sink(params.str(decay_cmd->get_option("--out"), decay_out, "out", decay_out));
            const auto res = fracdecay::run_decay(cfg, sink.stream());
            sink.report();
            std::fprintf(stderr,
                         "expected exponent %.6g, bound slope %.6g, ratio slope %.4g, "
                         "solution slope %.4g (diagnostic)\n",
                         res.expected_exponent, res.bound_slope, res.ratio_slope,
                         res.solution_slope);
            return res.pass ? 0 : 1;
        }
        if (table_cmd->parsed()) {
            OutputSink sink(params.str(table_cmd->get_option("--out"), table_out, "out", table_out));
            const auto res = fracdecay::run_catalog_table(params.num(ta, t_alpha, "alpha", 0.5),
                                                          params.num(tp, t_p, "p", 2.0),
                                                          params.num(tq, t_q, "q", 2.4), sink.stream());
            sink.report();
            if (!res.fits_ok) {
                std::fprintf(stderr, "counting-function fit outside the 0.05 band\n");
                return 1;
            }
            return 0;
        }
        if (fig_cmd->parsed()) {
            OutputSink sink(params.str(fig_cmd->get_option("--out"), fig_out, "out", fig_out));
            const auto res = fracdecay::run_envelope_profile(
                params.num(fa, f_alpha, "alpha", 1.95), params.num(fx, f_xmax, "xmax", 100.0),
                int(params.integer(fp, f_points, "points", 512)), sink.stream());
            sink.report();
            std::fprintf(stderr, "envelope constant %.6g, worst gap %.3g\n", res.constant,
                         res.worst_gap);
            if (!res.dominated) {
                std::fprintf(stderr, "pointwise domination failed\n");
                return 1;
            }
            return 0;
        }
    } catch (const fracdecay::invariant_failure& e) {
        std::fprintf(stderr, "invariant failure: %s\n", e.what());
        return 1;
    } catch (const fracdecay::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fracdecay::accuracy_error& e) {
        std::fprintf(stderr, "accuracy: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
