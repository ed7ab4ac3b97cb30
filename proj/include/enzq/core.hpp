#pragma once

// Shared value types for the two-qubit reservoir model: coupling triple,
// basis-tagged density matrices, pump drive, time grids and the state
// validation used by every other module.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace enzq {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr cplx I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors. The CLI maps ConfigError -> 2, IoError -> 3, DataError -> 4.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BasisMismatch : public Error {
  public:
    using Error::Error;
};

class InvalidState : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class DataError : public Error {
  public:
    using Error::Error;
};

class OutOfRange : public DataError {
  public:
    OutOfRange(const std::string &what, double value) : DataError(what), value_(value) {}
    double value() const { return value_; }

  private:
    double value_;
};

// ---------------------------------------------------------------------------
// Coupling parameters
// ---------------------------------------------------------------------------

/// Reservoir triple (gamma, gamma12, g12). gamma is the single-emitter decay
/// rate, gamma12 the cross decay rate and g12 the coherent dipole-dipole
/// shift. The collective rates gamma +- gamma12 must be non-negative.
class CouplingParameters {
  public:
    CouplingParameters(double gamma, double gamma12, double g12)
        : gamma_(gamma), gamma12_(gamma12), g12_(g12) {
        if (!std::isfinite(gamma) || !std::isfinite(gamma12) || !std::isfinite(g12))
            throw std::invalid_argument("coupling parameters must be finite");
        if (!(gamma > 0.0))
            throw std::invalid_argument("gamma must be positive");
        if (std::abs(gamma12) > gamma)
            throw std::invalid_argument("|gamma12| must not exceed gamma (got gamma12/gamma = " +
                                        std::to_string(gamma12 / gamma) + ")");
    }

    /// Parameters in units of gamma: (1, beta, g12/gamma).
    static CouplingParameters normalized(double beta, double g12_over_gamma) {
        return {1.0, beta, g12_over_gamma};
    }

    double gamma() const { return gamma_; }
    double gamma12() const { return gamma12_; }
    double g12() const { return g12_; }
    double beta() const { return gamma12_ / gamma_; }
    double superradiant_rate() const { return gamma_ + gamma12_; }
    double subradiant_rate() const { return gamma_ - gamma12_; }

    friend bool operator==(const CouplingParameters &, const CouplingParameters &) = default;

  private:
    double gamma_;
    double gamma12_;
    double g12_;
};

// ---------------------------------------------------------------------------
// Basis conventions
// ---------------------------------------------------------------------------

/// Product order {|e1e2>, |e1g2>, |g1e2>, |g1g2>}; Dicke order {|3>, |+>, |->, |0>}.
enum class Basis { Product, Dicke };

inline const char *to_string(Basis b) { return b == Basis::Product ? "product" : "Dicke"; }

namespace basis {

inline constexpr int ee = 0, eg = 1, ge = 2, gg = 3;
inline constexpr int three = 0, plus = 1, minus = 2, ground = 3;

/// Rows are the Dicke kets expressed in product coordinates, so that
/// rho_Dicke = U rho_product U^dagger. U is real, symmetric and an involution.
inline const Matrix4c &product_to_dicke() {
    static const Matrix4c u = [] {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix4c m = Matrix4c::Zero();
        m(three, ee) = 1.0;
        m(plus, eg) = s;
        m(plus, ge) = s;
        m(minus, eg) = s;
        m(minus, ge) = -s;
        m(ground, gg) = 1.0;
        return m;
    }();
    return u;
}

/// Express an operator given in the product basis in the requested basis.
inline Matrix4c express(const Matrix4c &product_op, Basis target) {
    if (target == Basis::Product)
        return product_op;
    const Matrix4c &u = product_to_dicke();
    return u * product_op * u.adjoint();
}

/// Lowering operator of qubit `q` (0 or 1) in the product basis. Each qubit is
/// ordered {e, g}, so sigma = |g><e|.
inline Matrix4c lowering_product(int q) {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    s(1, 0) = 1.0;
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Matrix4c out;
    const Eigen::Matrix2cd &a = q == 0 ? s : id;
    const Eigen::Matrix2cd &b = q == 0 ? id : s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Matrix4c lowering(int q, Basis target) { return express(lowering_product(q), target); }

} // namespace basis

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// A 4x4 two-qubit density matrix carrying its basis tag.
class DensityMatrix {
  public:
    DensityMatrix(const Matrix4c &entries, Basis basis) : m_(entries), basis_(basis) {}

    static DensityMatrix pure(const Vector4c &ket, Basis basis) {
        return {ket * ket.adjoint(), basis};
    }

    /// |k><k| for basis index k.
    static DensityMatrix basis_state(int k, Basis basis) {
        Matrix4c m = Matrix4c::Zero();
        m(k, k) = 1.0;
        return {m, basis};
    }

    const Matrix4c &matrix() const { return m_; }
    Basis basis() const { return basis_; }
    cplx operator()(int i, int j) const { return m_(i, j); }
    cplx trace() const { return m_.trace(); }

  private:
    Matrix4c m_;
    Basis basis_;
};

inline DensityMatrix to_dicke(const DensityMatrix &rho) {
    if (rho.basis() != Basis::Product)
        throw BasisMismatch("to_dicke expects a product-basis state");
    const Matrix4c &u = basis::product_to_dicke();
    return {u * rho.matrix() * u.adjoint(), Basis::Dicke};
}

inline DensityMatrix to_product(const DensityMatrix &rho) {
    if (rho.basis() != Basis::Dicke)
        throw BasisMismatch("to_product expects a Dicke-basis state");
    const Matrix4c &u = basis::product_to_dicke();
    return {u.adjoint() * rho.matrix() * u, Basis::Product};
}

inline DensityMatrix in_basis(const DensityMatrix &rho, Basis target) {
    if (rho.basis() == target)
        return rho;
    return target == Basis::Dicke ? to_dicke(rho) : to_product(rho);
}

/// Default thresholds; every field may be overridden.
struct Tolerances {
    double hermiticity = 1e-10;
    double trace = 1e-9;
    double positivity = 1e-8;
};

struct ValidationReport {
    double hermiticity_violation = 0.0; ///< max |rho_ij - conj(rho_ji)|
    double trace_error = 0.0;           ///< |Tr rho - 1|
    double min_eigenvalue = 0.0;        ///< of the Hermitian part
    bool hermitian = true;
    bool unit_trace = true;
    bool positive = true;

    bool ok() const { return hermitian && unit_trace && positive; }

    std::string describe() const {
        std::string s;
        if (!hermitian)
            s += "hermiticity violation " + std::to_string(hermiticity_violation) + "; ";
        if (!unit_trace)
            s += "trace error " + std::to_string(trace_error) + "; ";
        if (!positive)
            s += "min eigenvalue " + std::to_string(min_eigenvalue) + "; ";
        return s.empty() ? "ok" : s;
    }
};

inline double hermiticity_violation(const Matrix4c &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Matrix4c &m) {
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline ValidationReport validate_state(const DensityMatrix &rho, const Tolerances &tol = {}) {
    ValidationReport r;
    r.hermiticity_violation = hermiticity_violation(rho.matrix());
    r.trace_error = std::abs(rho.trace() - 1.0);
    r.min_eigenvalue = min_eigenvalue(rho.matrix());
    r.hermitian = r.hermiticity_violation <= tol.hermiticity;
    r.unit_trace = r.trace_error <= tol.trace;
    r.positive = r.min_eigenvalue >= -tol.positivity;
    return r;
}

// ---------------------------------------------------------------------------
// Pump drive
// ---------------------------------------------------------------------------

/// Coherent drive: complex Rabi frequencies per qubit and a shared detuning
/// omega0 - omega_p, all in units of gamma.
struct PumpDrive {
    cplx omega1{0.0, 0.0};
    cplx omega2{0.0, 0.0};
    double detuning = 0.0;

    PumpDrive() = default;
    PumpDrive(cplx o1, cplx o2, double delta = 0.0) : omega1(o1), omega2(o2), detuning(delta) {
        if (!std::isfinite(o1.real()) || !std::isfinite(o1.imag()) || !std::isfinite(o2.real()) ||
            !std::isfinite(o2.imag()) || !std::isfinite(delta))
            throw std::invalid_argument("pump amplitudes and detuning must be finite");
    }

    static PumpDrive none() { return {}; }
    static PumpDrive asymmetric(double omega = 0.4) { return {omega, 0.0}; }
    static PumpDrive symmetric(double omega = 0.2) { return {omega, omega}; }
    static PumpDrive antisymmetric(double omega = 0.2) { return {omega, -omega}; }

    bool active() const { return omega1 != cplx{} || omega2 != cplx{}; }

    friend bool operator==(const PumpDrive &, const PumpDrive &) = default;
};

// ---------------------------------------------------------------------------
// Time grid
// ---------------------------------------------------------------------------

/// Strictly increasing sample times t*gamma >= 0.
class TimeGrid {
  public:
    explicit TimeGrid(std::vector<double> samples) : t_(std::move(samples)) {
        if (t_.empty())
            throw std::invalid_argument("time grid must not be empty");
        if (!std::isfinite(t_.front()) || t_.front() < 0.0)
            throw std::invalid_argument("time grid must start at t >= 0");
        for (std::size_t i = 1; i < t_.size(); ++i)
            if (!std::isfinite(t_[i]) || !(t_[i] > t_[i - 1]))
                throw std::invalid_argument("time grid must be strictly increasing (sample " +
                                            std::to_string(i) + ")");
    }

    /// 0, step, 2*step, ... up to t_max inclusive (t_max is snapped onto the grid).
    static TimeGrid uniform(double t_max, double step) {
        if (!(step > 0.0) || !(t_max >= 0.0) || !std::isfinite(t_max))
            throw std::invalid_argument("uniform grid needs step > 0 and finite t_max >= 0");
        const auto n = static_cast<std::size_t>(std::llround(t_max / step));
        std::vector<double> t(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            t[i] = static_cast<double>(i) * step;
        return TimeGrid(std::move(t));
    }

    static TimeGrid linspace(double t0, double t1, std::size_t n) {
        if (n < 2)
            return TimeGrid({t0});
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i)
            t[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        return TimeGrid(std::move(t));
    }

    const std::vector<double> &samples() const { return t_; }
    std::size_t size() const { return t_.size(); }
    double operator[](std::size_t i) const { return t_[i]; }
    double front() const { return t_.front(); }
    double back() const { return t_.back(); }

  private:
    std::vector<double> t_;
};

} // namespace enzq
