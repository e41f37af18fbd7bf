#pragma once
// Batch experiment runners behind the CLI: envelope profiles, the randomized
// domination suite, decay-rate experiments on the torus, and the catalog
// exponent table.  Every runner is deterministic from (config, seed) and
// emits CSV with 17-significant-digit floats, so repeated runs are
// byte-identical.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "frac_calculus.hpp"
#include "lorentz.hpp"
#include "mittag_leffler.hpp"
#include "spectral_model.hpp"

namespace fracdecay {

// Flat key=value configuration with '#' comments.  Later assignments (and
// command-line overrides) win.
class ExperimentConfig {
  public:
    ExperimentConfig() = default;

    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw domain_error("config: cannot open " + path);
        ExperimentConfig cfg;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& value) {
        if (!key.empty()) kv_[key] = value;
    }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }
    double get_double(const std::string& key, double fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw domain_error("config: key '" + key + "' is not a number: " + it->second);
        }
    }
    long get_int(const std::string& key, long fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw domain_error("config: key '" + key + "' is not an integer: " + it->second);
        }
    }

  private:
    static std::string trim(std::string s) {
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
        s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
        return s;
    }
    std::map<std::string, std::string> kv_;
};

// Output files land in FRACDECAY_OUTDIR when it is set and the path is
// relative; absolute paths are honored as given.
inline std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv("FRACDECAY_OUTDIR");
    if (dir == nullptr || *dir == '\0' || path.empty() || path.front() == '/') return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

namespace detail {

inline void check_series(const TimeSeries& s, const char* who) {
    if (s.times.size() != s.values.size()) throw domain_error(std::string(who) + ": size mismatch");
    double prev = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        if (!(s.times[i] > prev)) throw domain_error(std::string(who) + ": times must increase and stay positive");
        prev = s.times[i];
        if (!std::isfinite(s.values[i])) throw domain_error(std::string(who) + ": values must be finite");
    }
}

inline std::vector<double> log_ladder(double t_min, double t_max, int points) {
    if (!(t_min > 0.0) || !(t_max > t_min) || points < 2)
        throw domain_error("time ladder: need 0 < t_min < t_max and >= 2 points");
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i)
        t[i] = t_min * std::pow(t_max / t_min, double(i) / (points - 1));
    return t;
}

} // namespace detail

struct SlopeFit {
    double slope;
    double stderr_;
};

// Least-squares slope of log(value) against log(time) over [t_lo, t_hi].
inline SlopeFit slope_fit(const TimeSeries& series, double t_lo, double t_hi) {
    detail::check_series(series, "slope_fit");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        if (series.times[i] < t_lo || series.times[i] > t_hi) continue;
        if (!(series.values[i] > 0.0)) throw domain_error("slope_fit: values must be positive");
        xs.push_back(std::log(series.times[i]));
        ys.push_back(std::log(series.values[i]));
    }
    const std::size_t n = xs.size();
    if (n < 5) throw domain_error("slope_fit: fewer than 5 points in the window");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= double(n); my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw domain_error("slope_fit: degenerate window");
    const double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - my - slope * (xs[i] - mx);
        ssr += e * e;
    }
    return {slope, std::sqrt(ssr / double(n - 2) / sxx)};
}

struct EnvelopeProfileResult {
    double constant;   // measured (1+|z|)|E| sup over the sector
    bool dominated;    // every emitted row satisfies |E| <= C/(1+x)
    double worst_gap;  // min over rows of bound - max(|E1|,|E2|)
};

// Data behind the uniform-envelope picture: E_{a,1}(-x) and E_{a,2}(-x)
// against C/(1+x) on [0, x_max], C measured over the full decay sector.
inline EnvelopeProfileResult run_envelope_profile(double alpha, double x_max, int points,
                                                  std::ostream& os) {
    if (!(alpha > 1.0) || !(alpha < 2.0))
        throw domain_error("run_envelope_profile: alpha must lie in (1, 2)");
    if (!(x_max > 0.0) || points < 2) throw domain_error("run_envelope_profile: bad grid");
    const double radius = std::max(1e4, x_max);
    double c = 0.0;
    for (double delta : {1.0, 2.0})
        c = std::max(c, envelope_constant({alpha, delta}, default_sector(alpha), radius, 500));

    std::vector<double> e1(points), e2(points), xs(points);
    for (int i = 0; i < points; ++i) {
        const double x = x_max * double(i) / (points - 1);
        xs[i] = x;
        e1[i] = std::abs(ml({alpha, 1.0}, {-x, 0.0}));
        e2[i] = std::abs(ml({alpha, 2.0}, {-x, 0.0}));
        c = std::max(c, (1.0 + x) * std::max(e1[i], e2[i]));
    }

    EnvelopeProfileResult res{c, true, std::numeric_limits<double>::infinity()};
    csv_row(os, {"x", "E1", "E2", "bound"});
    for (int i = 0; i < points; ++i) {
        const double bound = c / (1.0 + xs[i]);
        res.worst_gap = std::min(res.worst_gap, bound - std::max(e1[i], e2[i]));
        if (std::max(e1[i], e2[i]) > bound * (1.0 + 1e-12)) res.dominated = false;
        csv_row(os, {format_double(xs[i]), format_double(e1[i]), format_double(e2[i]),
                     format_double(bound)});
    }
    return res;
}

namespace detail {

// Measured sup of (1+x)|E(z)| along one ray from the origin, log grid plus
// the origin, inflated 0.2% to absorb between-sample curvature.  The suite
// only evaluates phi on this ray, so the ray sup is the right constant.
inline double ray_envelope_constant(MLParams p, std::complex<double> dir, double x_max) {
    double c = std::abs(ml(p, {0.0, 0.0}));
    constexpr int samples = 500;
    for (int i = 0; i < samples; ++i) {
        const double x = x_max * std::pow(1e-6, 1.0 - double(i) / (samples - 1));
        c = std::max(c, (1.0 + x) * std::abs(ml(p, dir * x)));
    }
    return c * 1.002;
}

// One randomized diagonal model: spectrum of <= 50 eigenvalues in (0, 100],
// a propagator drawn from the four families, and its measured envelope.
// family 0: E_{a,1}(-x); 1: E_{a,2}(-x); 2: E_a(ix), a < 1; 3: psi * cosine.
inline DiagonalPropagatorModel random_model(std::mt19937_64& rng, bool tight) {
    std::uniform_int_distribution<int> size_d(1, 50);
    std::uniform_real_distribution<double> eig_d(1e-3, 100.0);
    DiagonalPropagatorModel m;
    const int sz = size_d(rng);
    m.spectrum.resize(sz);
    for (auto& lam : m.spectrum) lam = eig_d(rng);

    if (tight) {
        std::uniform_real_distribution<double> c_d(0.5, 2.0);
        const double c = c_d(rng);
        m.psi = [c](double v) { return c / (1.0 + v); };
        m.phi = [c](double v) { return std::complex<double>(c / (1.0 + v), 0.0); };
        return m;
    }

    std::uniform_int_distribution<int> fam_d(0, 3);
    const int fam = fam_d(rng);
    if (fam == 0 || fam == 1) {
        std::uniform_real_distribution<double> a_d(0.3, 1.95);
        const double a = a_d(rng), delta = fam == 0 ? 1.0 : 2.0;
        const double c = ray_envelope_constant({a, delta}, {-1.0, 0.0}, 150.0);
        m.phi = [a, delta](double x) { return ml({a, delta}, {-x, 0.0}); };
        m.psi = [c](double v) { return c / (1.0 + v); };
    } else if (fam == 2) {
        std::uniform_real_distribution<double> a_d(0.3, 0.95);
        const double a = a_d(rng);
        const double c = ray_envelope_constant({a, 1.0}, {0.0, 1.0}, 150.0);
        m.phi = [a](double x) { return ml({a, 1.0}, {0.0, x}); };
        m.psi = [c](double v) { return c / (1.0 + v); };
    } else {
        std::uniform_real_distribution<double> c_d(0.5, 2.0), w_d(0.5, 10.0);
        const double c = c_d(rng), w = w_d(rng);
        m.psi = [c](double v) { return c / (1.0 + v); };
        m.phi = [c, w](double x) {
            return std::complex<double>(c / (1.0 + x) * std::cos(w * x), 0.0);
        };
    }
    return m;
}

} // namespace detail

// Randomized domination suite.  Every 10th model is the tight case phi = psi,
// where both sides agree exactly.  Returns the number of violations; the CSV
// carries one row per model.
inline int run_random_model_suite(std::uint64_t seed, int count, double r, std::ostream& os) {
    if (count < 1) throw domain_error("run_random_model_suite: count must be >= 1");
    std::mt19937_64 rng(seed);
    csv_row(os, {"model_id", "r", "lhs", "rhs", "margin", "pass"});
    int violations = 0;
    for (int id = 0; id < count; ++id) {
        const bool tight = (id % 10) == 9;
        const auto model = detail::random_model(rng, tight);
        const auto res = domination_check(model, r);
        if (!res.pass) ++violations;
        csv_row(os, {format_int(id), format_double(r), format_double(res.lhs),
                     format_double(res.rhs), format_double(res.margin),
                     res.pass ? "1" : "0"});
    }
    return violations;
}

struct DecayConfig {
    EquationKind kind = EquationKind::heat;
    double beta = 0.9;
    int dim = 2;
    std::size_t n = 64;
    double box_length = 2.0 * pi_d;
    double p = 2.0;
    double q = 6.0;
    double t_min = 0.5;
    double t_max = 50.0;
    int points = 40;
    std::uint64_t seed = 1;
    bool emulate_rn = false; // big-box near-delta data; caps the time window
};

struct DecayResult {
    TimeSeries solution;   // ||w(t)||_q
    TimeSeries bound;      // envelope bound trajectory sup psi_t N^{1/r}
    TimeSeries ratio;      // ||w(t)||_q / (t^e (||w0||_p [+ t ||w1||_p]))
    double expected_exponent;
    double bound_slope;
    double ratio_slope;
    double solution_slope; // diagnostic only, no gate
    bool pass;             // |bound_slope - expected| <= 1e-3 and ratio_slope <= 0.02
};

namespace detail {

// Mean-zero band-limited random field: modes 1..4 per axis with O(1)
// coefficients.  Real-valued so heat/wave tests exercise the reality
// invariant as well.
inline GridFunction random_band_limited(int dim, std::size_t n, double box, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * pi_d);
    GridFunction f = make_grid_function(dim, n, box);
    for (int k = 1; k <= 4; ++k) {
        const double a = amp(rng), ph = phase(rng);
        const double b = dim == 2 ? amp(rng) : 0.0, pb = dim == 2 ? phase(rng) : 0.0;
        for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
            const std::size_t ix = dim == 2 ? idx / n : idx;
            const double x = box * double(ix) / double(n);
            double v = a * std::cos(2.0 * pi_d * k * x / box + ph);
            if (dim == 2) {
                const double y = box * double(idx % n) / double(n);
                v += b * std::cos(2.0 * pi_d * k * y / box + pb);
            }
            f.values[idx] += v;
        }
    }
    return f;
}

} // namespace detail

// Decay experiment on the torus: solve on a log time ladder, compare the
// L^q norm against the envelope-bound trajectory, and fit slopes over
// [max(1, t_min), t_max].
inline DecayResult run_decay(const DecayConfig& cfg, std::ostream& os) {
    const double lambda = cfg.dim / 2.0;
    const double expected = decay_exponent(cfg.beta, lambda, cfg.p, cfg.q);
    const double r = NormIndices(cfg.p, cfg.q).r();
    if (cfg.emulate_rn && std::pow(cfg.t_max, cfg.beta / 2.0) > cfg.box_length / 4.0)
        throw domain_error("run_decay: diffusion length exceeds box_length/4 by t_max");

    std::mt19937_64 rng(cfg.seed);
    const GridFunction w0 = detail::random_band_limited(cfg.dim, cfg.n, cfg.box_length, rng);
    GridFunction w1g{};
    const bool wave = cfg.kind == EquationKind::wave;
    if (wave) w1g = detail::random_band_limited(cfg.dim, cfg.n, cfg.box_length, rng);
    const GridFunction* w1 = wave ? &w1g : nullptr;

    const EvolutionProblem problem{cfg.kind, cfg.beta, true};
    const double p_norm0 = lq_norm(w0, cfg.p);
    const double p_norm1 = wave ? lq_norm(w1g, cfg.p) : 0.0;

    DecayResult out{};
    out.expected_exponent = expected;
    csv_row(os, {"t", "norm_q", "bound", "ratio"});
    for (double t : detail::log_ladder(cfg.t_min, cfg.t_max, cfg.points)) {
        const double nq = lq_norm(apply_propagator(problem, t, w0, w1), cfg.q);
        const double tb = std::pow(t, cfg.beta);
        const auto psi_t = [tb](double v) { return 1.0 / (1.0 + tb * v); };
        const double b = envelope_bound(psi_t, SpectralProfile(PowerLawProfile(lambda, 1.0)), r, 1e8);
        const double denom = std::pow(t, expected) * (p_norm0 + (wave ? t * p_norm1 : 0.0));
        const double ratio = nq / denom;
        out.solution.times.push_back(t);
        out.solution.values.push_back(nq);
        out.bound.times.push_back(t);
        out.bound.values.push_back(b);
        out.ratio.times.push_back(t);
        out.ratio.values.push_back(ratio);
        csv_row(os, {format_double(t), format_double(nq), format_double(b), format_double(ratio)});
    }

    const double fit_lo = std::max(1.0, cfg.t_min);
    out.bound_slope = slope_fit(out.bound, fit_lo, cfg.t_max).slope;
    out.ratio_slope = slope_fit(out.ratio, fit_lo, cfg.t_max).slope;
    out.solution_slope = slope_fit(out.solution, fit_lo, cfg.t_max).slope;
    out.pass = std::abs(out.bound_slope - expected) <= 1e-3 && out.ratio_slope <= 0.02;
    return out;
}

struct CatalogRow {
    std::string name;
    double lambda;
    double exponent;
    std::optional<double> fit; // counting-function fit where a lattice model exists
};

struct CatalogTableResult {
    std::vector<CatalogRow> rows;
    bool fits_ok; // every fit within 0.05 of its lambda
};

// The operator-catalog table: growth exponent lambda and the decay exponent
// -alpha*lambda*(1/p - 1/q) per row.  The compact row carries a torus-lattice
// counting fit and the Vladimirov row its step-profile fit, both checked
// against lambda to within 0.05.
inline CatalogTableResult run_catalog_table(double alpha, double p, double q, std::ostream& os) {
    const char* entries[] = {"euclidean(2)", "compact(2)",      "heisenberg(1)",
                             "rockland(4,2)", "engel",           "cartan",
                             "subcoercive(4,2)", "vladimirov(2,1)"};
    CatalogTableResult out{{}, true};
    csv_row(os, {"name", "lambda", "exponent", "fit"});
    for (const char* name : entries) {
        const SpectralProfile prof = catalog_profile(name);
        CatalogRow row;
        row.name = name;
        if (const auto* pl = std::get_if<PowerLawProfile>(&prof)) row.lambda = pl->lambda;
        else row.lambda = 1.0 / std::get<VladimirovProfile>(prof).mu;
        row.exponent = decay_exponent(alpha, row.lambda, p, q);
        if (row.name == "compact(2)")
            row.fit = exponent_fit(SpectralProfile(TorusLatticeProfile(2, 360)), 1e2, 1e5, 60);
        else if (row.name == "vladimirov(2,1)")
            row.fit = exponent_fit(prof, 1e2, 1e5, 60);
        if (row.fit && std::abs(*row.fit - row.lambda) > 0.05) out.fits_ok = false;
        csv_row(os, {row.name, format_double(row.lambda), format_double(row.exponent),
                     row.fit ? format_double(*row.fit) : std::string()});
        out.rows.push_back(row);
    }
    return out;
}

} // namespace fracdecay
