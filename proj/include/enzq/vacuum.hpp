#pragma once

// Free-space collective decay rate and dipole-dipole shift between two
// parallel dipoles, plus the symmetric/antisymmetric channel populations.
// Arguments are x = k r12 with k = 2 pi n / lambda0 the medium wavenumber.

#include "enzq/core.hpp"

#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace enzq::vacuum {

/// Below this x the closed form of gamma12 is replaced by its Taylor series.
inline constexpr double series_threshold = 1e-3;

/// gamma12 / gamma0 = 3/2 (sin x / x + cos x / x^2 - sin x / x^3).
inline double gamma12(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("k*r must be finite and non-negative");
    if (x < series_threshold) {
        // 1 - x^2/5 + 3x^4/280 - x^6/3780
        const double x2 = x * x;
        return 1.0 + x2 * (-1.0 / 5.0 + x2 * (3.0 / 280.0 - x2 / 3780.0));
    }
    const double s = std::sin(x), c = std::cos(x);
    return 1.5 * (s / x + c / (x * x) - s / (x * x * x));
}

/// g12 / gamma0 = 3/4 (cos x / x - sin x / x^2 - cos x / x^3). Singular at x = 0.
inline double g12(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("g12 is singular at k*r = 0; need k*r > 0");
    const double s = std::sin(x), c = std::cos(x);
    return 0.75 * (c / x - s / (x * x) - c / (x * x * x));
}

struct ChannelPopulations {
    double symmetric;
    double antisymmetric;
};

/// n_s and n_a at normalized time t*gamma for beta = gamma12/gamma, |beta| < 1.
inline ChannelPopulations channel_populations(double t, double beta) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("time must be finite and non-negative");
    if (!(std::abs(beta) < 1.0))
        throw std::invalid_argument("channel populations need |gamma12/gamma| < 1");
    // e^{-2t} e^{(1 -+ beta) t} folded into a single exponent.
    const double e2 = std::exp(-2.0 * t);
    const double ns = (1.0 + beta) * (1.0 - (std::exp(-(1.0 + beta) * t) - beta * e2) / (1.0 - beta));
    const double na = (1.0 - beta) * (1.0 - (std::exp(-(1.0 - beta) * t) + beta * e2) / (1.0 + beta));
    return {ns, na};
}

struct CouplingRow {
    double r_over_lambda;
    double gamma12_over_gamma0;
    double g12_over_gamma0;
};

inline double k_times_r(double r_over_lambda, double index) {
    return 2.0 * std::numbers::pi * index * r_over_lambda;
}

inline CouplingRow coupling_at(double r_over_lambda, double index = 1.0) {
    if (!(r_over_lambda > 0.0))
        throw std::invalid_argument("r/lambda0 must be positive");
    if (!(index > 0.0))
        throw std::invalid_argument("refractive index must be positive");
    const double x = k_times_r(r_over_lambda, index);
    return {r_over_lambda, gamma12(x), g12(x)};
}

inline std::vector<CouplingRow> coupling_curve(std::span<const double> r_over_lambda,
                                               double index = 1.0) {
    std::vector<CouplingRow> rows;
    rows.reserve(r_over_lambda.size());
    for (double r : r_over_lambda)
        rows.push_back(coupling_at(r, index));
    return rows;
}

/// Normalized coupling triple for the dynamics (gamma = gamma0 = 1).
inline CouplingParameters coupling_parameters(double r_over_lambda, double index = 1.0) {
    const CouplingRow row = coupling_at(r_over_lambda, index);
    return CouplingParameters::normalized(row.gamma12_over_gamma0, row.g12_over_gamma0);
}

} // namespace enzq::vacuum
