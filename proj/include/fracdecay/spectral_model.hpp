#pragma once
// Spectral content of a positive operator, reduced to what the bounds need:
// either explicit eigenvalues or an analytic counting function
// N(s) = #(spectrum in the open interval (0, s)).  The interval is open on
// both ends everywhere in this module: zero modes never count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace fracdecay {

// Counting measure or analytic volume; monotone nondecreasing in s.
using TraceValue = double;

struct DiscreteSpectrum {
    std::vector<double> eigenvalues; // nonnegative, kept sorted
    explicit DiscreteSpectrum(std::vector<double> ev) : eigenvalues(std::move(ev)) {
        for (double v : eigenvalues)
            if (!(v >= 0.0)) throw domain_error("DiscreteSpectrum: eigenvalues must be >= 0");
        std::sort(eigenvalues.begin(), eigenvalues.end());
    }
};

struct PowerLawProfile {
    double lambda;
    double coeff;
    explicit PowerLawProfile(double lambda_, double coeff_ = 1.0)
        : lambda(lambda_), coeff(coeff_) {
        if (!(lambda > 0.0)) throw domain_error("PowerLawProfile: lambda must be positive");
        if (!(coeff > 0.0)) throw domain_error("PowerLawProfile: coeff must be positive");
    }
};

// N(s) = rho^{floor(log_rho(s^{1/mu}))}: the exact step function, not its
// smooth envelope.  Can sit below 1 for s < 1; N(0) = 0.
struct VladimirovProfile {
    int rho;
    double mu;
    VladimirovProfile(int rho_, double mu_) : rho(rho_), mu(mu_) {
        if (rho < 2) throw domain_error("VladimirovProfile: rho must be a prime >= 2");
        for (int d = 2; d * d <= rho; ++d)
            if (rho % d == 0) throw domain_error("VladimirovProfile: rho must be prime");
        if (!(mu > 0.0)) throw domain_error("VladimirovProfile: mu must be positive");
    }
};

// Squared norms |k|^2 of integer vectors with components in [-cutoff,cutoff];
// the eigenvalues of the box-length-2pi periodic Laplacian.  Enumerated and
// sorted once here so counting is a binary search; profiles are immutable.
struct TorusLatticeProfile {
    int dim;
    int cutoff;
    std::vector<double> sq;
    TorusLatticeProfile(int dim_, int cutoff_) : dim(dim_), cutoff(cutoff_) {
        if (dim != 1 && dim != 2) throw domain_error("TorusLatticeProfile: dim must be 1 or 2");
        if (cutoff < 1) throw domain_error("TorusLatticeProfile: cutoff must be >= 1");
        if (dim == 1) {
            sq.reserve(2 * cutoff + 1);
            for (int k = -cutoff; k <= cutoff; ++k) sq.push_back(double(k) * k);
        } else {
            sq.reserve(std::size_t(2 * cutoff + 1) * (2 * cutoff + 1));
            for (int kx = -cutoff; kx <= cutoff; ++kx)
                for (int ky = -cutoff; ky <= cutoff; ++ky)
                    sq.push_back(double(kx) * kx + double(ky) * ky);
        }
        std::sort(sq.begin(), sq.end());
    }
};

using SpectralProfile =
    std::variant<DiscreteSpectrum, PowerLawProfile, VladimirovProfile, TorusLatticeProfile>;

namespace detail {

inline TraceValue count_sorted_open(const std::vector<double>& sorted, double s) {
    auto below = std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    auto zeros = std::upper_bound(sorted.begin(), sorted.end(), 0.0) - sorted.begin();
    return below > zeros ? double(below - zeros) : 0.0;
}

} // namespace detail

inline TraceValue counting_function(const SpectralProfile& profile, double s) {
    if (s < 0.0) throw domain_error("counting_function: s must be >= 0");
    if (s <= 0.0) return 0.0;
    return std::visit(
        [s](const auto& p) -> TraceValue {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DiscreteSpectrum>) {
                return detail::count_sorted_open(p.eigenvalues, s);
            } else if constexpr (std::is_same_v<P, TorusLatticeProfile>) {
                return detail::count_sorted_open(p.sq, s);
            } else if constexpr (std::is_same_v<P, PowerLawProfile>) {
                return p.coeff * std::pow(s, p.lambda);
            } else {
                // exact breakpoints are powers of rho; the 1e-9 nudge keeps
                // floor from dropping a level to floating-point undershoot
                const double e = std::floor(std::log(s) / (p.mu * std::log(double(p.rho))) + 1e-9);
                return std::pow(double(p.rho), e);
            }
        },
        profile);
}

// Rows are compact strings like "heisenberg(1)" or "vladimirov(2,1)";
// parameter-free rows are bare names.  Exponents: euclidean n/2, compact Q/2,
// heisenberg n+1, rockland Q/nu, engel 3, cartan 9/2, subcoercive Q*/m,
// vladimirov 1/mu (as the exact step profile).
inline SpectralProfile catalog_profile(const std::string& row) {
    std::string name = row;
    std::vector<double> args;
    const auto open = row.find('(');
    if (open != std::string::npos) {
        if (row.back() != ')') throw domain_error("catalog_profile: malformed row " + row);
        name = row.substr(0, open);
        std::string body = row.substr(open + 1, row.size() - open - 2);
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t next = body.find(',', pos);
            if (next == std::string::npos) next = body.size();
            args.push_back(std::stod(body.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw domain_error("catalog_profile: row " + name + " takes " + std::to_string(n) +
                               " parameter(s)");
    };
    if (name == "euclidean") { need(1); return PowerLawProfile(args[0] / 2.0); }
    if (name == "compact") { need(1); return PowerLawProfile(args[0] / 2.0); }
    if (name == "heisenberg") { need(1); return PowerLawProfile(args[0] + 1.0); }
    if (name == "rockland") { need(2); return PowerLawProfile(args[0] / args[1]); }
    if (name == "engel") { need(0); return PowerLawProfile(3.0); }
    if (name == "cartan") { need(0); return PowerLawProfile(4.5); }
    if (name == "subcoercive") { need(2); return PowerLawProfile(args[0] / args[1]); }
    if (name == "vladimirov") { need(2); return VladimirovProfile(int(args[0]), args[1]); }
    throw domain_error("catalog_profile: unknown row " + row);
}

// Least-squares slope of log N against log s on log-spaced samples; samples
// where N vanishes carry no information and are skipped.
inline double exponent_fit(const SpectralProfile& profile, double s_min, double s_max,
                           int points) {
    if (!(s_min > 0.0) || !(s_max > s_min))
        throw domain_error("exponent_fit: need 0 < s_min < s_max");
    if (points < 10) throw domain_error("exponent_fit: need at least 10 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = 0; i < points; ++i) {
        const double s = s_min * std::pow(s_max / s_min, double(i) / (points - 1));
        const double n = counting_function(profile, s);
        if (n <= 0.0) continue;
        const double x = std::log(s), y = std::log(n);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 2) throw domain_error("exponent_fit: counting function vanishes on the range");
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw domain_error("exponent_fit: degenerate sample range");
    return (m * sxy - sx * sy) / denom;
}

// "variant(params)" label used by the CSV reports.
inline std::string profile_label(const SpectralProfile& profile) {
    char buf[96];
    return std::visit(
        [&](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DiscreteSpectrum>) {
                std::snprintf(buf, sizeof buf, "discrete(size=%zu)", p.eigenvalues.size());
            } else if constexpr (std::is_same_v<P, PowerLawProfile>) {
                std::snprintf(buf, sizeof buf, "powerlaw(lambda=%g;coeff=%g)", p.lambda, p.coeff);
            } else if constexpr (std::is_same_v<P, VladimirovProfile>) {
                std::snprintf(buf, sizeof buf, "vladimirov(rho=%d;mu=%g)", p.rho, p.mu);
            } else {
                std::snprintf(buf, sizeof buf, "torus(dim=%d;cutoff=%d)", p.dim, p.cutoff);
            }
            return std::string(buf);
        },
        profile);
}

} // namespace fracdecay
