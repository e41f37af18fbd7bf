#pragma once
// Periodic-grid solver for the fractional heat, wave, and schrodinger
// equations: diagonalize the Laplacian with the unitary FFT, multiply each
// mode by the scalar propagator at its eigenvalue, and transform back.
// Eigenvalue convention: mode k maps to (2*pi*|k|/box_length)^2, so the
// operator is nonnegative and the zero mode is exactly stationary.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "frac_calculus.hpp"
#include "mittag_leffler.hpp"

namespace fracdecay {

struct GridFunction {
    int dim;           // 1 or 2
    std::size_t n;     // points per dimension, power of two
    double box_length;
    std::vector<std::complex<double>> values; // row-major, n^dim entries
};

namespace detail {

inline void check_grid(const GridFunction& f, const char* who) {
    if (f.dim != 1 && f.dim != 2) throw domain_error(std::string(who) + ": dim must be 1 or 2");
    if (f.n < 2 || (f.n & (f.n - 1)) != 0)
        throw domain_error(std::string(who) + ": points per dim must be a power of two >= 2");
    if (!(f.box_length > 0.0)) throw domain_error(std::string(who) + ": box_length must be positive");
    const std::size_t want = f.dim == 2 ? f.n * f.n : f.n;
    if (f.values.size() != want) throw domain_error(std::string(who) + ": value count mismatch");
}

// Transform each axis in place with the unitary radix-2 kernel.  dir=false
// is the forward transform.
inline void transform_axes(GridFunction& f, bool inverse) {
    if (f.dim == 1) {
        fft_radix2(f.values, inverse);
        return;
    }
    std::vector<std::complex<double>> line(f.n);
    for (std::size_t row = 0; row < f.n; ++row) {
        for (std::size_t j = 0; j < f.n; ++j) line[j] = f.values[row * f.n + j];
        fft_radix2(line, inverse);
        for (std::size_t j = 0; j < f.n; ++j) f.values[row * f.n + j] = line[j];
    }
    for (std::size_t col = 0; col < f.n; ++col) {
        for (std::size_t j = 0; j < f.n; ++j) line[j] = f.values[j * f.n + col];
        fft_radix2(line, inverse);
        for (std::size_t j = 0; j < f.n; ++j) f.values[j * f.n + col] = line[j];
    }
}

// Signed frequency of index j on an n-point axis; the Nyquist index keeps
// the positive sign, which is irrelevant once squared.
inline long signed_freq(std::size_t j, std::size_t n) {
    return j <= n / 2 ? long(j) : long(j) - long(n);
}

// |k|^2 as an integer for each row-major mode index.
inline long mode_ksq(const GridFunction& f, std::size_t idx) {
    if (f.dim == 1) {
        const long k = signed_freq(idx, f.n);
        return k * k;
    }
    const long kx = signed_freq(idx / f.n, f.n);
    const long ky = signed_freq(idx % f.n, f.n);
    return kx * kx + ky * ky;
}

inline void subtract_mean(GridFunction& f) {
    std::complex<double> mean(0.0, 0.0);
    for (const auto& v : f.values) mean += v;
    mean /= double(f.values.size());
    for (auto& v : f.values) v -= mean;
}

} // namespace detail

inline GridFunction make_grid_function(int dim, std::size_t n, double box_length) {
    GridFunction f{dim, n, box_length, {}};
    f.values.assign(dim == 2 ? n * n : n, {0.0, 0.0});
    detail::check_grid(f, "make_grid_function");
    return f;
}

inline GridFunction forward_transform(GridFunction f) {
    detail::check_grid(f, "forward_transform");
    detail::transform_axes(f, false);
    return f;
}

inline GridFunction inverse_transform(GridFunction f) {
    detail::check_grid(f, "inverse_transform");
    detail::transform_axes(f, true);
    return f;
}

struct EvolutionProblem {
    EquationKind kind;
    double beta;
    bool zero_mode_projection = false;
};

// Modewise propagator multiply.  w1 must be present exactly for the wave
// kind.  t = 0 returns the data verbatim (after the optional mean removal)
// so norms at t = 0 are bit-exact.  Propagator values are memoized per
// integer |k|^2; the beta range checks live in the scalar propagators.
inline GridFunction apply_propagator(const EvolutionProblem& problem, double t,
                                     const GridFunction& w0, const GridFunction* w1 = nullptr) {
    detail::check_grid(w0, "apply_propagator");
    if (t < 0.0) throw domain_error("apply_propagator: t must be >= 0");
    const bool wave = problem.kind == EquationKind::wave;
    if (wave && w1 == nullptr) throw domain_error("apply_propagator: wave needs w1");
    if (!wave && w1 != nullptr) throw domain_error("apply_propagator: w1 is wave-only");
    if (w1 != nullptr) {
        detail::check_grid(*w1, "apply_propagator");
        if (w1->dim != w0.dim || w1->n != w0.n || w1->box_length != w0.box_length)
            throw domain_error("apply_propagator: w0/w1 shape mismatch");
    }
    // Validate beta for the kind even on the t = 0 fast path.
    switch (problem.kind) {
    case EquationKind::heat:
        if (!(problem.beta > 0.0) || !(problem.beta <= 1.0))
            throw domain_error("apply_propagator: heat needs beta in (0, 1]");
        break;
    case EquationKind::wave:
        if (!(problem.beta > 1.0) || !(problem.beta < 2.0))
            throw domain_error("apply_propagator: wave needs beta in (1, 2)");
        break;
    case EquationKind::schrodinger:
        if (!(problem.beta > 0.0) || !(problem.beta < 1.0))
            throw domain_error("apply_propagator: schrodinger needs beta in (0, 1)");
        break;
    }

    if (t == 0.0) {
        GridFunction out = w0;
        if (problem.zero_mode_projection) detail::subtract_mean(out);
        return out;
    }

    GridFunction c0 = w0;
    if (problem.zero_mode_projection) detail::subtract_mean(c0);
    detail::transform_axes(c0, false);
    GridFunction c1{};
    if (wave) {
        c1 = *w1;
        if (problem.zero_mode_projection) detail::subtract_mean(c1);
        detail::transform_axes(c1, false);
    }

    const double eig_unit = std::pow(2.0 * pi_d / w0.box_length, 2);
    const long ksq_max = (w0.dim == 2 ? 2 : 1) * long(w0.n / 2) * long(w0.n / 2);
    // memo[ksq]: (E, tE2) for wave, (E, unused) otherwise
    std::vector<std::pair<std::complex<double>, std::complex<double>>> memo(ksq_max + 1);
    std::vector<char> have(ksq_max + 1, 0);
    for (std::size_t idx = 0; idx < c0.values.size(); ++idx) {
        const long ksq = detail::mode_ksq(c0, idx);
        if (!have[ksq]) {
            const double s = eig_unit * double(ksq);
            switch (problem.kind) {
            case EquationKind::heat:
                memo[ksq] = {propagator_heat(problem.beta, t, s), 0.0};
                break;
            case EquationKind::wave: {
                const auto pair = propagator_wave_pair(problem.beta, t, s);
                memo[ksq] = {pair.first, pair.second};
                break;
            }
            case EquationKind::schrodinger:
                memo[ksq] = {propagator_schrodinger(problem.beta, t, s), 0.0};
                break;
            }
            have[ksq] = 1;
        }
        c0.values[idx] *= memo[ksq].first;
        if (wave) c0.values[idx] += memo[ksq].second * c1.values[idx];
    }
    if (problem.zero_mode_projection) c0.values[0] = 0.0;

    detail::transform_axes(c0, true);
    return c0;
}

// L applied through the transform: coefficients scaled by the eigenvalue.
inline GridFunction apply_laplacian(const GridFunction& f) {
    detail::check_grid(f, "apply_laplacian");
    GridFunction c = f;
    detail::transform_axes(c, false);
    const double eig_unit = std::pow(2.0 * pi_d / f.box_length, 2);
    for (std::size_t idx = 0; idx < c.values.size(); ++idx)
        c.values[idx] *= eig_unit * double(detail::mode_ksq(c, idx));
    detail::transform_axes(c, true);
    return c;
}

// Rectangle-rule L^q norm with weight (box_length/n)^dim per grid point.
inline double lq_norm(const GridFunction& f, double q) {
    detail::check_grid(f, "lq_norm");
    if (!(q >= 1.0) || !std::isfinite(q)) throw domain_error("lq_norm: need 1 <= q < inf");
    const double h = std::pow(f.box_length / double(f.n), f.dim);
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::pow(std::abs(v), q);
    return std::pow(acc * h, 1.0 / q);
}

// Max over probe points of the time-fractional residual of the solved field,
// with L*u computed spectrally at every time node.  This exercises the full
// PDE through the transform rather than a single diagonal mode.
inline double solution_residual(const EvolutionProblem& problem, const GridFunction& w0,
                                const GridFunction* w1, TimeGrid grid,
                                const std::vector<std::size_t>& probe) {
    detail::check_grid(w0, "solution_residual");
    if (probe.empty()) throw domain_error("solution_residual: need at least one probe point");
    for (std::size_t p : probe)
        if (p >= w0.values.size()) throw domain_error("solution_residual: probe off the grid");

    const int m = grid.steps;
    const SampledSignal<std::complex<double>> blank{
        grid, std::vector<std::complex<double>>(std::size_t(m) + 1)};
    std::vector<SampledSignal<std::complex<double>>> u(probe.size(), blank), lu(probe.size(), blank);
    for (int j = 0; j <= m; ++j) {
        const GridFunction field = apply_propagator(problem, grid.node(j), w0, w1);
        const GridFunction lfield = apply_laplacian(field);
        for (std::size_t pi = 0; pi < probe.size(); ++pi) {
            u[pi].values[j] = field.values[probe[pi]];
            lu[pi].values[j] = lfield.values[probe[pi]];
        }
    }

    // Wave initial slope: the evolved solution corresponds to the (possibly
    // mean-projected) w1, so the probe slope must match that field.
    std::vector<std::complex<double>> slope(probe.size(), {0.0, 0.0});
    if (problem.kind == EquationKind::wave) {
        GridFunction v1 = *w1;
        if (problem.zero_mode_projection) detail::subtract_mean(v1);
        for (std::size_t pi = 0; pi < probe.size(); ++pi) slope[pi] = v1.values[probe[pi]];
    }

    double worst = 0.0;
    for (std::size_t pi = 0; pi < probe.size(); ++pi) {
        std::optional<std::complex<double>> fp0;
        if (problem.kind == EquationKind::wave) fp0 = slope[pi];
        worst = std::max(worst, detail::kind_residual(problem.kind, problem.beta, u[pi], lu[pi], fp0));
    }
    return worst;
}

inline void write_field_csv(std::ostream& os, const GridFunction& f) {
    detail::check_grid(f, "write_field_csv");
    csv_row(os, {"index", "re", "im"});
    for (std::size_t i = 0; i < f.values.size(); ++i)
        csv_row(os, {format_int(long(i)), format_double(f.values[i].real()),
                     format_double(f.values[i].imag())});
}

} // namespace fracdecay
