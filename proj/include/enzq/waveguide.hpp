#pragma once

// Analytic dispersion of a hollow circular guide:
//   n_eff = sqrt(1 - (u/pi)^2 (lambda / 2 rho)^2)
// Below cutoff the index is real; above it the root is purely imaginary.

#include "enzq/core.hpp"

#include <numbers>
#include <span>
#include <vector>

namespace enzq::waveguide {

/// Bessel root quoted for the fundamental mode of the rolled-up guide.
inline constexpr double default_mode_root = 3.832;
/// Conventional TE11 root (first zero of J1'), for comparison runs.
inline constexpr double te11_mode_root = 1.841;

struct GuideGeometry {
    double diameter_nm;
    double mode_root = default_mode_root;

    GuideGeometry(double diameter, double root = default_mode_root)
        : diameter_nm(diameter), mode_root(root) {
        if (!(diameter > 0.0) || !std::isfinite(diameter))
            throw std::invalid_argument("guide diameter must be positive");
        if (!(root > 0.0) || !std::isfinite(root))
            throw std::invalid_argument("mode root must be positive");
    }

    double radius_nm() const { return 0.5 * diameter_nm; }
};

/// lambda_c = pi D / u.
inline double cutoff_wavelength(const GuideGeometry &g) {
    return std::numbers::pi * g.diameter_nm / g.mode_root;
}

inline cplx effective_index(double lambda_nm, const GuideGeometry &g) {
    if (!(lambda_nm > 0.0) || !std::isfinite(lambda_nm))
        throw std::invalid_argument("wavelength must be positive");
    // (u/pi)^2 (lambda/D)^2 == (lambda/lambda_c)^2; factoring keeps n_eff(lambda_c) exactly 0.
    const double q = lambda_nm / cutoff_wavelength(g);
    const double arg = (1.0 - q) * (1.0 + q);
    return arg >= 0.0 ? cplx{std::sqrt(arg), 0.0} : cplx{0.0, std::sqrt(-arg)};
}

struct DispersionRow {
    double diameter_nm;
    double lambda_nm;
    cplx n_eff;
};

/// Row-major sweep: diameters outer, wavelengths inner.
inline std::vector<DispersionRow> dispersion_curve(std::span<const double> diameters,
                                                   std::span<const double> lambdas,
                                                   double mode_root = default_mode_root) {
    if (diameters.empty())
        throw std::invalid_argument("diameter grid must not be empty");
    if (lambdas.empty())
        throw std::invalid_argument("wavelength grid must not be empty");
    std::vector<DispersionRow> rows;
    rows.reserve(diameters.size() * lambdas.size());
    for (double d : diameters) {
        const GuideGeometry g(d, mode_root);
        for (double l : lambdas)
            rows.push_back({d, l, effective_index(l, g)});
    }
    return rows;
}

} // namespace enzq::waveguide
