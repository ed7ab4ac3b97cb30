#pragma once

// Wootters concurrence and the Dicke-population shortcut valid on unpumped
// single-excitation trajectories.

#include "enzq/core.hpp"

namespace enzq {

/// sigma_y (x) sigma_y in the product basis {ee, eg, ge, gg}.
inline const Matrix4c &spin_flip_matrix() {
    static const Matrix4c y = [] {
        Matrix4c m = Matrix4c::Zero();
        m(basis::ee, basis::gg) = -1.0;
        m(basis::eg, basis::ge) = 1.0;
        m(basis::ge, basis::eg) = 1.0;
        m(basis::gg, basis::ee) = -1.0;
        return m;
    }();
    return y;
}

/// rho~ = (sy x sy) rho^* (sy x sy), product basis.
inline Matrix4c spin_flip(const Matrix4c &rho) {
    const Matrix4c &y = spin_flip_matrix();
    return y * rho.conjugate() * y;
}

namespace detail {

inline Matrix4c psd_sqrt(const Matrix4c &h) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace detail

/// Square roots of the eigenvalues u_i of rho rho~, sorted descending.
///
/// Computed as the singular values of sqrt(rho) sqrt(rho~): the product's
/// Gram matrix is sqrt(rho) rho~ sqrt(rho), which is similar to rho rho~.
/// Singular values are accurate to machine precision even where the
/// non-Hermitian eigenproblem is defective (pure states).
inline Eigen::Vector4d wootters_lambdas(const DensityMatrix &state, double clamp = 1e-9) {
    const Matrix4c rho = in_basis(state, Basis::Product).matrix();
    if (hermiticity_violation(rho) > clamp)
        throw InvalidState("concurrence needs a Hermitian state (violation " +
                           std::to_string(hermiticity_violation(rho)) + ")");
    const Matrix4c h = 0.5 * (rho + rho.adjoint());
    const double lo = min_eigenvalue(h);
    if (lo < -clamp)
        throw InvalidState("concurrence needs a positive semidefinite state (min eigenvalue " +
                           std::to_string(lo) + ")");
    const Matrix4c r = detail::psd_sqrt(h);
    const Matrix4c &y = spin_flip_matrix();
    const Matrix4c rt = y * r.conjugate() * y; // sqrt(rho~)
    Eigen::JacobiSVD<Matrix4c> svd(r * rt);
    return svd.singularValues(); // descending
}

/// C = max(0, l1 - l2 - l3 - l4).
inline double wootters_concurrence(const DensityMatrix &state) {
    const Eigen::Vector4d l = wootters_lambdas(state);
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

/// C = sqrt((rho_{++} - rho_{--})^2 + 4 Im(rho_{+-})^2). Only valid with no
/// double excitation, i.e. on unpumped trajectories from a single-excitation state.
inline double dicke_concurrence(const DensityMatrix &rho, double tol = 1e-8) {
    if (rho.basis() != Basis::Dicke)
        throw BasisMismatch("dicke_concurrence expects a Dicke-basis state");
    using namespace basis;
    if (std::abs(rho(three, three)) > tol)
        throw InvalidState("rho_33 = " + std::to_string(std::abs(rho(three, three))) +
                           " is non-zero; use wootters_concurrence");
    const double d = (rho(plus, plus) - rho(minus, minus)).real();
    const double im = rho(plus, minus).imag();
    return std::sqrt(d * d + 4.0 * im * im);
}

} // namespace enzq
