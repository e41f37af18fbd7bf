#pragma once
// Discrete fractional calculus on uniform time grids: Riemann-Liouville
// integrals by piecewise-linear product integration (exact on linear data)
// and Caputo derivatives by the L1 scheme, global accuracy O(dt^{2-beta})
// away from t=0.  These are the independent residual oracles for the
// propagator formulas in mittag_leffler.hpp: the solvers never reuse them.

#include <cmath>
#include <complex>
#include <optional>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "mittag_leffler.hpp"

namespace fracdecay {

struct TimeGrid {
    double t_end;
    int steps;
    TimeGrid(double t_end_, int steps_) : t_end(t_end_), steps(steps_) {
        if (!(t_end > 0.0)) throw domain_error("TimeGrid: t_end must be positive");
        if (steps < 2) throw domain_error("TimeGrid: need at least 2 steps");
    }
    double dt() const { return t_end / steps; }
    double node(int j) const { return j * dt(); }
    int nodes() const { return steps + 1; }
};

// One value per node, values.size() == grid.steps + 1.
template <class T>
struct SampledSignal {
    TimeGrid grid;
    std::vector<T> values;
};

template <class F>
auto sample(TimeGrid grid, F f) -> SampledSignal<decltype(f(0.0))> {
    SampledSignal<decltype(f(0.0))> s{grid, {}};
    s.values.reserve(grid.nodes());
    for (int j = 0; j < grid.nodes(); ++j) s.values.push_back(f(grid.node(j)));
    return s;
}

// h_beta(t) = t^{beta-1}/Gamma(beta), the convolution kernel of the
// fractional integral.
struct Kernel {
    double beta;
    explicit Kernel(double b) : beta(b) {
        if (!(b > 0.0)) throw domain_error("Kernel: beta must be positive");
    }
    double operator()(double t) const {
        return std::pow(t, beta - 1.0) / gamma_real(beta);
    }
};

namespace detail {

template <class T>
void check_signal(const SampledSignal<T>& f, const char* who) {
    if (static_cast<int>(f.values.size()) != f.grid.nodes())
        throw domain_error(std::string(who) + ": signal length does not match grid");
}

} // namespace detail

// (I^beta f)(t_n) by product integration of f's piecewise-linear interpolant
// against the kernel.  Cell [t_j, t_{j+1}] seen from t_n contributes
// f_j*I0 + slope*(a*I0 - J) with a = t_n - t_j; the weights depend only on
// the lag m = n - j, so they are precomputed once.
template <class T>
SampledSignal<T> rl_integral(const SampledSignal<T>& f, double beta) {
    if (!(beta > 0.0)) throw domain_error("rl_integral: beta must be positive");
    detail::check_signal(f, "rl_integral");
    const int N = f.grid.steps;
    const double dt = f.grid.dt();
    const double gb = gamma_real(beta);
    const double gb1 = gamma_real(beta + 1.0);

    std::vector<double> pw(N + 1), pw1(N + 1);
    for (int m = 0; m <= N; ++m) {
        const double a = m * dt;
        pw[m] = std::pow(a, beta);
        pw1[m] = std::pow(a, beta + 1.0);
    }
    std::vector<double> I0(N + 1, 0.0), J(N + 1, 0.0);
    for (int m = 1; m <= N; ++m) {
        I0[m] = (pw[m] - pw[m - 1]) / gb1;
        J[m] = (pw1[m] - pw1[m - 1]) / ((beta + 1.0) * gb);
    }

    SampledSignal<T> out{f.grid, std::vector<T>(N + 1, T{})};
    for (int n = 1; n <= N; ++n) {
        T acc{};
        for (int j = 0; j < n; ++j) {
            const int m = n - j;
            const double a = m * dt;
            const T slope = (f.values[j + 1] - f.values[j]) * (1.0 / dt);
            acc += f.values[j] * I0[m] + slope * (a * I0[m] - J[m]);
        }
        out.values[n] = acc;
    }
    return out;
}

namespace detail {

// Plain L1 sum: dt^{-beta}/Gamma(2-beta) * sum b_l (f_{n-l} - f_{n-l-1}).
// b_0 is pinned to 1 explicitly: the formula (l+1)^{1-beta} - l^{1-beta}
// evaluates 0^0 at l=0, beta=1 and would silently zero the operator.
template <class T>
std::vector<T> l1_sum(const std::vector<T>& f, double dt, double beta) {
    const int N = static_cast<int>(f.size()) - 1;
    std::vector<double> b(N, 0.0);
    b[0] = 1.0;
    for (int l = 1; l < N; ++l)
        b[l] = std::pow(l + 1.0, 1.0 - beta) - std::pow(static_cast<double>(l), 1.0 - beta);
    const double c = std::pow(dt, -beta) / gamma_real(2.0 - beta);
    std::vector<T> out(N + 1, T{});
    for (int n = 1; n <= N; ++n) {
        T acc{};
        for (int l = 0; l < n; ++l) acc += b[l] * (f[n - l] - f[n - l - 1]);
        out[n] = acc * c;
    }
    return out;
}

// Starting corrections, exact on span{t^beta, t^{2beta}, t^{3beta}}: per
// node, solve the 3x3 system that makes weighted combinations of the first
// three samples cancel the L1 defect on those powers.  Only engaged for
// small beta, where the uncorrected preasymptotic order min(1+beta, 2-beta)
// falls short; for beta near 1/2 the corrections pollute an otherwise clean
// O(dt^{2-beta}) window, so they stay off.
template <class T>
void l1_start_corrections(std::vector<T>& out, const std::vector<T>& f,
                          double dt, double beta) {
    constexpr int nterms = 3;
    const int N = static_cast<int>(f.size()) - 1;
    double g[nterms];
    for (int i = 0; i < nterms; ++i) g[i] = (i + 1) * beta;

    std::vector<double> t(N + 1);
    for (int j = 0; j <= N; ++j) t[j] = j * dt;

    // defect R[i][m] = exact Caputo of t^{g_i} at t_m minus its L1 value
    std::vector<std::vector<double>> R(nterms);
    for (int i = 0; i < nterms; ++i) {
        std::vector<double> p(N + 1);
        for (int j = 0; j <= N; ++j) p[j] = std::pow(t[j], g[i]);
        std::vector<double> l1 = l1_sum(p, dt, beta);
        const double c = gamma_real(g[i] + 1.0) / gamma_real(g[i] + 1.0 - beta);
        R[i].resize(N + 1);
        R[i][0] = 0.0;
        for (int m = 1; m <= N; ++m) R[i][m] = c * std::pow(t[m], g[i] - beta) - l1[m];
    }

    // A[i][k] = t_{k+1}^{g_i}; solve A*W = R columnwise by elimination
    double A[nterms][nterms];
    for (int i = 0; i < nterms; ++i)
        for (int k = 0; k < nterms; ++k) A[i][k] = std::pow(t[k + 1], g[i]);
    int piv[nterms] = {0, 1, 2};
    for (int c = 0; c < nterms; ++c) {
        int best = c;
        for (int r = c + 1; r < nterms; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[best][c])) best = r;
        std::swap(A[c], A[best]);
        std::swap(piv[c], piv[best]);
        for (int r = c + 1; r < nterms; ++r) {
            const double m = A[r][c] / A[c][c];
            for (int k = c; k < nterms; ++k) A[r][k] -= m * A[c][k];
            A[r][c] = m; // store the multiplier in the zeroed slot
        }
    }
    for (int m = 1; m <= N; ++m) {
        double y[nterms];
        for (int i = 0; i < nterms; ++i) y[i] = R[piv[i]][m];
        for (int r = 1; r < nterms; ++r)
            for (int c = 0; c < r; ++c) y[r] -= A[r][c] * y[c];
        double w[nterms];
        for (int r = nterms - 1; r >= 0; --r) {
            double v = y[r];
            for (int k = r + 1; k < nterms; ++k) v -= A[r][k] * w[k];
            w[r] = v / A[r][r];
        }
        T corr{};
        for (int i = 0; i < nterms; ++i) corr += w[i] * (f[i + 1] - f[0]);
        out[m] += corr;
    }
}

} // namespace detail

// Caputo derivative of order beta in (0,2).  0 < beta <= 1: L1 scheme (beta=1
// degenerates to the backward difference).  1 < beta < 2: Riemann-Liouville
// integral of order 2-beta applied to second differences of
// f - f(0) - f'(0)t; the initial slope must be supplied by the caller, the
// scheme never estimates it one-sidedly from the samples.  Node 0 is set
// to 0 by convention (the derivative is classically undefined there).
template <class T>
SampledSignal<T> caputo_derivative(const SampledSignal<T>& f, double beta,
                                   std::optional<T> fp0 = std::nullopt) {
    if (!(beta > 0.0) || !(beta < 2.0))
        throw domain_error("caputo_derivative: beta out of (0, 2)");
    detail::check_signal(f, "caputo_derivative");
    if (f.grid.nodes() < 3) throw domain_error("caputo_derivative: need at least 3 nodes");
    const int N = f.grid.steps;
    const double dt = f.grid.dt();

    if (beta <= 1.0) {
        SampledSignal<T> out{f.grid, detail::l1_sum(f.values, dt, beta)};
        if (beta < 0.45 && N >= 4)
            detail::l1_start_corrections(out.values, f.values, dt, beta);
        return out;
    }

    if (!fp0)
        throw domain_error("caputo_derivative: order in (1,2) needs the initial slope fp0");
    std::vector<T> g(N + 1);
    for (int j = 0; j <= N; ++j) g[j] = f.values[j] - f.values[0] - *fp0 * (j * dt);
    std::vector<T> d2(N + 1);
    const double idt2 = 1.0 / (dt * dt);
    for (int j = 1; j < N; ++j) d2[j] = (g[j + 1] - 2.0 * g[j] + g[j - 1]) * idt2;
    d2[0] = 2.0 * g[1] * idt2; // g(0) = g'(0) = 0, so g ~ g''(0) t^2 / 2
    d2[N] = d2[N - 1];
    return rl_integral(SampledSignal<T>{f.grid, std::move(d2)}, 2.0 - beta);
}

enum class EquationKind { heat, wave, schrodinger };

namespace detail {

// Shared residual combination: given the sampled solution u and L(u), apply
// the Caputo oracle and measure max |c d^beta u (+i) + Lu| on the outer
// window t >= t_end/2.  The exact solutions have weakly singular derivatives
// at t=0; inside the self-similar boundary layer the L1 defect is O(1)
// regardless of dt, so only the outer window shows the scheme order.
template <class T>
double kind_residual(EquationKind kind, double beta, const SampledSignal<T>& u,
                     const SampledSignal<T>& lu, std::optional<T> fp0) {
    SampledSignal<T> cd = caputo_derivative(u, beta, fp0);
    const double t_half = u.grid.t_end / 2.0;
    double worst = 0.0;
    for (int j = 0; j <= u.grid.steps; ++j) {
        if (u.grid.node(j) < t_half) continue;
        T r;
        if (kind == EquationKind::schrodinger) {
            if constexpr (std::is_same_v<T, std::complex<double>>)
                r = std::complex<double>(0.0, 1.0) * cd.values[j] + lu.values[j];
            else
                throw domain_error("kind_residual: schrodinger needs complex samples");
        } else {
            r = cd.values[j] + lu.values[j];
        }
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace detail

// Residual of the single-mode problem c d^beta u = -(sign) s u with data
// (u0, u1), where u is built from the propagator kernels.  This is the
// ml_special <-> frac_calculus cross-check: two independent discretizations
// of the same equation must agree to scheme accuracy.
inline double fode_residual(double beta, double s, double u0, double u1,
                            TimeGrid grid, EquationKind kind) {
    if (s < 0.0) throw domain_error("fode_residual: s must be >= 0");
    const auto scaled = [s](const auto& u) {
        auto lu = u;
        for (auto& v : lu.values) v *= s;
        return lu;
    };
    switch (kind) {
    case EquationKind::heat: {
        auto u = sample(grid, [&](double t) { return propagator_heat(beta, t, s) * u0; });
        return detail::kind_residual(kind, beta, u, scaled(u), std::optional<double>{});
    }
    case EquationKind::wave: {
        auto u = sample(grid, [&](double t) {
            auto [c0, c1] = propagator_wave_pair(beta, t, s);
            return c0 * u0 + c1 * u1;
        });
        return detail::kind_residual(kind, beta, u, scaled(u), std::optional<double>(u1));
    }
    case EquationKind::schrodinger: {
        auto u = sample(grid, [&](double t) {
            return propagator_schrodinger(beta, t, s) * std::complex<double>(u0, 0.0);
        });
        return detail::kind_residual(kind, beta, u, scaled(u), std::optional<std::complex<double>>{});
    }
    }
    throw domain_error("fode_residual: unknown kind");
}

} // namespace fracdecay
