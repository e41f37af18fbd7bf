#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <quadmath.h>

#include "errors.hpp"
#include "gamma.hpp"

// Two-parameter Mittag-Leffler function E_{alpha,delta}(z) and the propagator
// kernels built on it.  Evaluation is dispatched on u = |z|^{1/alpha}, the
// natural scale of both failure modes: the Taylor series loses ~0.434*u digits
// to cancellation, and the large-|z| expansion has truncation floor ~e^{-u}.
//   u <= 20      : long double Taylor series
//   20 < u <= 34 : __float128 Taylor series (cancellation eats into 33 digits)
//   u > 34       : algebraic expansion plus exponential branch terms
// The branch terms zeta_m = u*e^{i(arg z + 2pi m)/alpha}, |arg z + 2pi m| <=
// pi*alpha, enter with weight 1 inside the sector and exactly 1/2 on the
// Stokes lines; dropping them leaves E_{1.95}(-x) wrong until x ~ 2000 and
// breaks the exp/cos identities that anchor the whole module.

namespace fracdecay {

struct MLParams {
    double alpha; // > 0; propagators use (0, 2]
    double delta;
};

// Sector |arg z| in [mu, pi] on which the algebraic expansion alone is valid.
struct SectorSpec {
    double mu;
};

inline constexpr double pi_d = 3.141592653589793238462643383279502884;

// Midpoint of the admissible range (pi*alpha/2, min(pi, pi*alpha)).
inline SectorSpec default_sector(double alpha) {
    double lo = pi_d * alpha / 2.0;
    double hi = std::min(pi_d, pi_d * alpha);
    return SectorSpec{0.5 * (lo + hi)};
}

namespace detail {

using cld = std::complex<long double>;

constexpr long double pi_l = 3.14159265358979323846264338327950288L;
constexpr double series_u_cut = 20.0;   // long double series up to here
constexpr double quad_u_cut = 34.0;     // __float128 series up to here

struct cq { // minimal complex __float128, just what the series loop needs
    __float128 re, im;
};
inline cq cq_mul(cq a, cq b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline cq cq_add(cq a, cq b) { return {a.re + b.re, a.im + b.im}; }
inline __float128 cq_abs(cq a) { return sqrtq(a.re * a.re + a.im * a.im); }

// Series in __float128 for the crossover band, where long double cancellation
// and the expansion's truncation floor would both sit near 1e-9.
inline std::complex<double> ml_series_quad(double alpha, double delta, std::complex<double> z) {
    cq zq{z.real(), z.imag()};
    cq pw{1.0, 0.0};
    cq sum{0.0, 0.0};
    __float128 al = alpha, dl = delta;
    __float128 prev = HUGE_VALQ;
    for (int k = 0; k < 3000; ++k) {
        __float128 arg = al * k + dl;
        __float128 rg;
        if (arg > (__float128)1e-4) {
            rg = (__float128)1 / tgammaq(arg);
        } else {
            rg = (__float128)recip_gamma((long double)arg);
        }
        cq term{pw.re * rg, pw.im * rg};
        sum = cq_add(sum, term);
        __float128 mag = cq_abs(term);
        __float128 budget = ((__float128)1 + cq_abs(sum)) * (__float128)1e-26;
        if (mag < budget && mag < prev) break;
        prev = mag;
        pw = cq_mul(pw, zq);
    }
    return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

constexpr long double log_pi_l = 1.14472988584940017414342735135306L;

// Algebraic tail sum_{k=1..kmax} z^{-k} / Gamma(delta - alpha k), truncated
// adaptively.  Raw term magnitudes cannot drive the truncation: the
// reflection factor sin(pi(delta - alpha k)) makes them oscillate and dip to
// near zero by Gamma poles, so a term larger than its predecessor does not
// mean the expansion has turned divergent.  Decisions use the sine-free
// envelope |1/Gamma(y)| <= Gamma(1-y)/pi instead (exact at y = 1/2, where the
// two reflection branches meet); its log is convex in k with one minimum, the
// optimal truncation point.
inline cld ml_algebraic_tail(long double al, long double dl, cld z, int kmax) {
    const cld zinv = 1.0L / z;
    const long double laz = std::log(std::abs(z));
    cld pw = zinv;
    cld sum(0.0L, 0.0L);
    long double lenv_prev = std::numeric_limits<long double>::max();
    for (int k = 1; k <= kmax; ++k) {
        const long double y = dl - al * k;
        const long double lenv =
            (y >= 0.5L ? -std::lgamma(y) : std::lgamma(1.0L - y) - log_pi_l) - k * laz;
        if (lenv > lenv_prev) break; // past the envelope minimum
        sum += pw * recip_gamma(y);
        if (lenv < -80.0L + std::log1p(std::abs(sum))) break; // tail < 2e-35 rel
        lenv_prev = lenv;
        pw *= zinv;
    }
    return sum;
}

} // namespace detail

// Taylor series sum_{k>=0} z^k / Gamma(alpha k + delta), truncated when the
// running term and its geometric tail bound drop below tol*(1+|sum|).
inline std::complex<double> ml_series(MLParams p, std::complex<double> z, double tol) {
    if (!(p.alpha > 0.0)) throw domain_error("ml_series: alpha must be positive");
    if (!(tol > 0.0)) throw domain_error("ml_series: tol must be positive");
    using detail::cld;
    const long double al = p.alpha, dl = p.delta;
    const cld zl(z.real(), z.imag());
    cld pw(1.0L, 0.0L);
    cld sum(0.0L, 0.0L);
    long double prev_mag = std::numeric_limits<long double>::max();
    long double tail = std::numeric_limits<double>::infinity();
    constexpr int kmax = 4000;
    for (int k = 0; k < kmax; ++k) {
        cld term = pw * detail::recip_gamma(al * k + dl);
        sum += term;
        long double mag = std::abs(term);
        long double budget = tol * (1.0L + std::abs(sum));
        if (mag < prev_mag) {
            long double ratio = (prev_mag > 0.0L) ? mag / prev_mag : 0.0L;
            if (ratio < 1.0L) {
                tail = mag * ratio / (1.0L - ratio);
                if (mag <= budget && tail <= budget)
                    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
            }
        }
        // dead-stop: past every Gamma pole (al*k+dl > 2), decayed, and tiny
        if (mag < 1e-35L * (1.0L + std::abs(sum)) && al * k + dl > 2.0L && mag <= prev_mag)
            return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
        prev_mag = mag;
        pw *= zl;
    }
    throw accuracy_error("ml_series: no convergence within term cap", static_cast<double>(tail));
}

// Algebraic expansion -sum_{k=1..terms} z^{-k} / Gamma(delta - alpha k).
// Valid only where every exponential branch decays; the growing branch is out
// of scope here, so args at or inside |arg z| = pi*alpha/2 are rejected.
inline std::complex<double> ml_asymptotic(MLParams p, std::complex<double> z, int terms) {
    if (!(p.alpha > 0.0) || p.alpha > 2.0)
        throw domain_error("ml_asymptotic: alpha out of (0, 2]");
    double az = std::abs(z);
    if (az == 0.0) throw domain_error("ml_asymptotic: z = 0");
    if (std::fabs(std::arg(z)) <= pi_d * p.alpha / 2.0 + 1e-12)
        throw domain_error("ml_asymptotic: arg(z) inside the exponential-growth sector");
    using detail::cld;
    cld sum = -detail::ml_algebraic_tail(p.alpha, p.delta, cld(z.real(), z.imag()), terms);
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

namespace detail {

// Exponential branch sum of the large-|z| expansion.  Branch m is active iff
// |arg z + 2pi m| <= pi*alpha, with weight 1/2 exactly on the boundary
// (Stokes line).  E_{1,1}(-x) = e^{-x} needs two half branches; E_{1/2}(iy)
// needs a single half branch.  Growing branches (Re zeta > 0) are kept: the
// expansion is then the honest full-plane value (e.g. E_1 = exp).
inline cld ml_branch_sum(double alpha, double delta, std::complex<double> z) {
    const long double al = alpha, dl = delta;
    const long double lr = std::log(std::abs(cld(z.real(), z.imag())));
    const long double th = std::atan2((long double)z.imag(), (long double)z.real());
    cld acc(0.0L, 0.0L);
    for (int m = -1; m <= 1; ++m) {
        long double thm = th + 2.0L * pi_l * m;
        long double lim = pi_l * al;
        long double w;
        if (std::fabs(thm) < lim - 1e-9L) w = 1.0L;
        else if (std::fabs(thm) <= lim + 1e-9L) w = 0.5L;
        else continue;
        cld lz(lr / al, thm / al);
        cld zeta = std::exp(lz);
        acc += w / al * std::exp((1.0L - dl) * lz) * std::exp(zeta);
    }
    return acc;
}

} // namespace detail

// Region-dispatched evaluation; see the header comment for the regions.
// Full-plane: inside the growth sector the branch terms supply the growing
// exponential, so identities like E_{1,1} = exp hold for every argument.
inline std::complex<double> ml(MLParams p, std::complex<double> z) {
    if (!(p.alpha > 0.0) || p.alpha > 2.0)
        throw domain_error("ml: alpha out of (0, 2]");
    // alpha 1 and 2 at delta 1 reduce to elementary functions.  The series
    // bands lose roughly e^{u} ulps to alternating cancellation on the
    // negative axis, which destroys exponentially small values, so these two
    // rows bypass the bands entirely.
    if (p.delta == 1.0) {
        if (p.alpha == 1.0) return std::exp(z);
        if (p.alpha == 2.0) return std::cosh(std::sqrt(z));
    }
    double az = std::abs(z);
    if (az == 0.0)
        return {static_cast<double>(detail::recip_gamma(p.delta)), 0.0};
    // log u = log|z| / alpha decides the region without materializing u,
    // which overflows for tiny alpha.
    long double logu = std::log((long double)az) / p.alpha;
    if (logu <= std::log((long double)detail::series_u_cut))
        return ml_series(p, z, 1e-15);
    if (logu <= std::log((long double)detail::quad_u_cut))
        return detail::ml_series_quad(p.alpha, p.delta, z);
    using detail::cld;
    cld alg = detail::ml_algebraic_tail(p.alpha, p.delta, cld(z.real(), z.imag()), 300);
    cld total = detail::ml_branch_sum(p.alpha, p.delta, z) - alg;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

// E_beta(-t^beta s); the heat kernel multiplier. Real by conjugate symmetry.
inline double propagator_heat(double beta, double t, double s) {
    if (!(beta > 0.0) || beta > 1.0)
        throw domain_error("propagator_heat: beta out of (0, 1]");
    if (t < 0.0 || s < 0.0) throw domain_error("propagator_heat: t, s must be >= 0");
    return ml({beta, 1.0}, {-std::pow(t, beta) * s, 0.0}).real();
}

// (E_beta(-t^beta s), t*E_{beta,2}(-t^beta s)): coefficients of w0 and w1.
inline std::pair<double, double> propagator_wave_pair(double beta, double t, double s) {
    if (!(beta > 1.0) || !(beta < 2.0))
        throw domain_error("propagator_wave_pair: beta out of (1, 2)");
    if (t < 0.0 || s < 0.0) throw domain_error("propagator_wave_pair: t, s must be >= 0");
    double arg = -std::pow(t, beta) * s;
    return {ml({beta, 1.0}, {arg, 0.0}).real(),
            t * ml({beta, 2.0}, {arg, 0.0}).real()};
}

// E_beta(i t^beta s); beta < 1 keeps the argument out of the growth sector.
inline std::complex<double> propagator_schrodinger(double beta, double t, double s) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw domain_error("propagator_schrodinger: beta out of (0, 1)");
    if (t < 0.0 || s < 0.0) throw domain_error("propagator_schrodinger: t, s must be >= 0");
    return ml({beta, 1.0}, {0.0, std::pow(t, beta) * s});
}

// Empirical sup of (1+|z|)|E_{alpha,delta}(z)| over a log-radial x angular
// grid on |arg z| in [sector.mu, pi], |z| <= radius, plus the origin.
// Conjugate symmetry makes the lower half plane redundant.
inline double envelope_constant(MLParams p, SectorSpec sector, double radius, int samples) {
    if (!(radius > 0.0)) throw domain_error("envelope_constant: radius must be positive");
    if (samples < 10) throw domain_error("envelope_constant: too few samples");
    double best = std::abs(ml(p, {0.0, 0.0})); // (1+0)*|E(0)|
    std::vector<double> angles;
    if (sector.mu >= pi_d - 1e-12) {
        angles.push_back(pi_d);
    } else {
        constexpr int n_ang = 13;
        for (int j = 0; j < n_ang; ++j)
            angles.push_back(sector.mu + (pi_d - sector.mu) * j / (n_ang - 1));
    }
    const double r_lo = std::min(1e-2, radius * 1e-4);
    const double lr0 = std::log(r_lo), lr1 = std::log(radius);
    for (int i = 0; i < samples; ++i) {
        double r = std::exp(lr0 + (lr1 - lr0) * i / (samples - 1));
        for (double th : angles) {
            std::complex<double> z = std::polar(r, th);
            best = std::max(best, (1.0 + r) * std::abs(ml(p, z)));
        }
    }
    return best;
}

} // namespace fracdecay
