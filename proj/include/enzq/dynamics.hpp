#pragma once

// Two-qubit master equation in the frame rotating at the qubit frequency:
//
//   drho/dt = -i [H, rho] + i [V(t), rho]
//             - 1/2 sum_ij gamma_ij (rho s_i^+ s_j + s_i^+ s_j rho - 2 s_j rho s_i^+)
//
//   H    = g12 (s_1^+ s_2 + s_2^+ s_1)                       (g_ii = 0)
//   V(t) = -sum_i (W_i e^{-i D t} s_i^+ + W_i^* e^{i D t} s_i)
//
// with gamma_11 = gamma_22 = gamma and gamma_12 = gamma_21. Everything is in
// units of gamma, and the closed-form solutions used as oracles live here too.

#include "enzq/core.hpp"
#include "enzq/integrator.hpp"

#include <array>
#include <optional>

namespace enzq {

class DegenerateSteadyState : public Error {
  public:
    DegenerateSteadyState(const std::string &what, long rank) : Error(what), rank_(rank) {}
    long rank() const { return rank_; }

  private:
    long rank_;
};

class IntegrationFailure : public Error {
  public:
    IntegrationFailure(const std::string &what, double t) : Error(what), time_(t) {}
    double time() const { return time_; }

  private:
    double time_;
};

/// Immutable generator: coupling, pump and the operators expressed in `basis`.
class LindbladGenerator {
  public:
    LindbladGenerator(CouplingParameters coupling, PumpDrive pump = {}, Basis basis = Basis::Dicke)
        : coupling_(coupling), pump_(pump), basis_(basis) {
        for (int q = 0; q < 2; ++q) {
            s_[q] = basis::lowering(q, basis);
            sd_[q] = s_[q].adjoint();
        }
        h_ = coupling_.g12() * (sd_[0] * s_[1] + sd_[1] * s_[0]);
        // W = s_1^+ W_1 + s_2^+ W_2: V(t) = -(e^{-iDt} W + h.c.)
        w_ = pump_.omega1 * sd_[0] + pump_.omega2 * sd_[1];
        number_ = sd_[0] * s_[0] + sd_[1] * s_[1];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                gamma_[i][j] = i == j ? coupling_.gamma() : coupling_.gamma12();
        anticomm_ = Matrix4c::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                anticomm_ += gamma_[i][j] * sd_[i] * s_[j];
    }

    const CouplingParameters &coupling() const { return coupling_; }
    const PumpDrive &pump() const { return pump_; }
    Basis basis() const { return basis_; }

    const Matrix4c &lowering(int q) const { return s_[q]; }
    const Matrix4c &hamiltonian() const { return h_; }
    const Matrix4c &number() const { return number_; }
    double gamma(int i, int j) const { return gamma_[i][j]; }

    /// Pump operator V(t) (already divided by hbar).
    Matrix4c pump_operator(double t) const {
        const cplx ph = std::exp(-I * pump_.detuning * t);
        const Matrix4c a = ph * w_;
        return -(a + a.adjoint());
    }

    /// Raw right-hand side on an untagged matrix in this generator's basis.
    Matrix4c apply(const Matrix4c &rho, double t = 0.0) const {
        Matrix4c out = -I * (h_ * rho - rho * h_);
        if (pump_.active()) {
            const Matrix4c v = pump_operator(t);
            out += I * (v * rho - rho * v);
        }
        out -= 0.5 * (rho * anticomm_ + anticomm_ * rho);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out += gamma_[i][j] * (s_[j] * rho * sd_[i]);
        return out;
    }

  private:
    CouplingParameters coupling_;
    PumpDrive pump_;
    Basis basis_;
    std::array<Matrix4c, 2> s_, sd_;
    Matrix4c h_, w_, number_, anticomm_;
    double gamma_[2][2];
};

/// d rho / dt at time t (time only matters for a detuned pump).
inline Matrix4c lindblad_rhs(const DensityMatrix &rho, const LindbladGenerator &gen, double t = 0.0) {
    if (rho.basis() != gen.basis())
        throw BasisMismatch(std::string("state is in the ") + to_string(rho.basis()) +
                            " basis but the generator acts in the " + to_string(gen.basis()) + " basis");
    return gen.apply(rho.matrix(), t);
}

// ---------------------------------------------------------------------------
// Vectorized Liouvillian and steady state
// ---------------------------------------------------------------------------

using Superoperator = Eigen::Matrix<cplx, 16, 16>;
using Vector16c = Eigen::Matrix<cplx, 16, 1>;

/// Column-major vec: vec(A X B) = (B^T kron A) vec(X).
inline Superoperator sandwich(const Matrix4c &a, const Matrix4c &b) {
    Superoperator s;
    const Matrix4c bt = b.transpose();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            s.block<4, 4>(4 * i, 4 * j) = bt(i, j) * a;
    return s;
}

inline Vector16c vec(const Matrix4c &m) { return Eigen::Map<const Vector16c>(m.data()); }

inline Matrix4c unvec(const Vector16c &v) { return Eigen::Map<const Matrix4c>(v.data()); }

/// Liouvillian in the frame co-rotating with the pump, where it is time
/// independent. The frame coincides with the lab frame when the detuning is 0:
/// rho_pump(t) = R rho(t) R^dagger with R = exp(i D N t).
inline Superoperator liouvillian(const LindbladGenerator &gen) {
    const Matrix4c id = Matrix4c::Identity();
    const PumpDrive &p = gen.pump();
    Matrix4c w = p.omega1 * gen.lowering(0).adjoint() + p.omega2 * gen.lowering(1).adjoint();
    const Matrix4c h = gen.hamiltonian() - p.detuning * gen.number() + w + w.adjoint();
    Superoperator l = -I * (sandwich(h, id) - sandwich(id, h));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix4c si_d = gen.lowering(i).adjoint();
            const Matrix4c &sj = gen.lowering(j);
            const Matrix4c a = si_d * sj;
            l += gen.gamma(i, j) * (sandwich(sj, si_d) - 0.5 * sandwich(a, id) - 0.5 * sandwich(id, a));
        }
    return l;
}

/// Maps a lab-frame state at time t into the pump frame (identity for D = 0).
inline Matrix4c to_pump_frame(const Matrix4c &rho, const LindbladGenerator &gen, double t) {
    if (gen.pump().detuning == 0.0)
        return rho;
    Matrix4c r = Matrix4c::Zero();
    const Matrix4c n = gen.number();
    // N is diagonal in both supported bases.
    for (int k = 0; k < 4; ++k)
        r(k, k) = std::exp(I * gen.pump().detuning * t * n(k, k).real());
    return r * rho * r.adjoint();
}

/// Unique stationary state of the Liouvillian (pump frame), found by a direct
/// 16x16 solve with the (0,0) population equation replaced by Tr rho = 1.
inline DensityMatrix steady_state(const LindbladGenerator &gen) {
    Superoperator m = liouvillian(gen);
    Vector16c rhs = Vector16c::Zero();
    m.row(0).setZero();
    for (int k = 0; k < 4; ++k)
        m(0, 5 * k) = 1.0; // vec index of (k, k)
    rhs(0) = 1.0;
    Eigen::FullPivLU<Superoperator> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() < 16)
        throw DegenerateSteadyState("steady-state manifold is degenerate (rank " + std::to_string(lu.rank()) +
                                        " of 16 after the trace constraint)",
                                    lu.rank());
    const Matrix4c x = unvec(lu.solve(rhs));
    return {0.5 * (x + x.adjoint()), gen.basis()};
}

// ---------------------------------------------------------------------------
// Time evolution
// ---------------------------------------------------------------------------

struct EvolveOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    bool fixed_step = false;   ///< classical RK4 instead of the adaptive pair
    double fixed_dt = 1e-3;    ///< upper bound on the RK4 step
    double fixed_courant = 5e-3; ///< RK4 step is also capped at fixed_courant / ||L||_inf
    double max_step = 0.5;
    Tolerances tolerances{};   ///< state checks applied at every sample
};

struct SampleDiagnostics {
    long accepted_steps = 0;
    long rejected_steps = 0;
    double max_scaled_error = 0.0; ///< adaptive only: max of |err| / (atol + rtol |y|)
};

struct Trajectory {
    TimeGrid grid;
    std::vector<DensityMatrix> states;
    std::vector<SampleDiagnostics> diagnostics;
};

/// Integrates from rho0 (at grid[0]) through every grid sample. States stay in
/// the generator's basis. Each sample is checked against the state invariants;
/// a violation aborts with the failing time rather than being projected away.
inline Trajectory evolve(const DensityMatrix &rho0, const LindbladGenerator &gen, const TimeGrid &grid,
                         const EvolveOptions &opt = {}) {
    const DensityMatrix start = in_basis(rho0, gen.basis());
    {
        const auto rep = validate_state(start, opt.tolerances);
        if (!rep.ok())
            throw InvalidState("initial state is invalid: " + rep.describe());
    }
    auto rhs = [&gen](double t, const Matrix4c &y) -> Matrix4c { return gen.apply(y, t); };

    Trajectory traj{grid, {}, {}};
    traj.states.reserve(grid.size());
    traj.diagnostics.reserve(grid.size());

    Matrix4c y = start.matrix();
    double t = grid.front();
    double h = std::min(1e-3, opt.max_step);
    ode::AdaptiveOptions aopt;
    aopt.rtol = opt.rtol;
    aopt.atol = opt.atol;
    aopt.max_step = opt.max_step;
    ode::DormandPrince<Matrix4c, decltype(rhs)> dp(rhs, aopt);
    double fixed_dt = opt.fixed_dt;
    if (opt.fixed_step) {
        // strong dipole shifts make the generator fast; keep h * ||L|| small
        const double norm = liouvillian(gen).cwiseAbs().rowwise().sum().maxCoeff();
        if (norm > 0.0)
            fixed_dt = std::min(fixed_dt, opt.fixed_courant / norm);
    }

    for (std::size_t k = 0; k < grid.size(); ++k) {
        ode::StepStats st;
        try {
            st = opt.fixed_step ? ode::rk4_advance(rhs, y, t, grid[k], fixed_dt) : dp.advance(y, t, grid[k], h);
        } catch (const ode::StepSizeUnderflow &e) {
            throw IntegrationFailure(e.what(), e.time());
        }
        DensityMatrix rho(y, gen.basis());
        const auto rep = validate_state(rho, opt.tolerances);
        if (!rep.ok())
            throw IntegrationFailure("state check failed at t = " + std::to_string(grid[k]) + ": " + rep.describe(),
                                     grid[k]);
        traj.states.push_back(std::move(rho));
        traj.diagnostics.push_back({st.accepted, st.rejected, st.max_error});
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// One emitter excited: rho_{++} = rho_{+-} = rho_{-+} = rho_{--} = 1/2 (Dicke basis).
inline DensityMatrix dicke_initial_state() {
    Matrix4c m = Matrix4c::Zero();
    m.block<2, 2>(basis::plus, basis::plus).setConstant(0.5);
    return {m, Basis::Dicke};
}

/// Exact unpumped solution from dicke_initial_state():
///   rho_{++} = e^{-(g+g12)t}/2, rho_{--} = e^{-(g-g12)t}/2,
///   rho_{+-} = e^{-g t} e^{-2i g12 t}/2, rho_{00} = 1 - rho_{++} - rho_{--}.
inline DensityMatrix unpumped_dicke_solution(const CouplingParameters &c, double t) {
    Matrix4c m = Matrix4c::Zero();
    const double pp = 0.5 * std::exp(-c.superradiant_rate() * t);
    const double mm = 0.5 * std::exp(-c.subradiant_rate() * t);
    const cplx pm = 0.5 * std::exp(-c.gamma() * t) * std::exp(-2.0 * I * c.g12() * t);
    m(basis::plus, basis::plus) = pp;
    m(basis::minus, basis::minus) = mm;
    m(basis::plus, basis::minus) = pm;
    m(basis::minus, basis::plus) = std::conj(pm);
    m(basis::ground, basis::ground) = 1.0 - pp - mm;
    return {m, Basis::Dicke};
}

/// C(t) = 1/2 sqrt([e^{-(g+g12)t} - e^{-(g-g12)t}]^2 + 4 e^{-2 g t} sin^2(2 g12 t)).
inline double transient_concurrence_closed_form(const CouplingParameters &c, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("time must be non-negative");
    const double d = std::exp(-c.superradiant_rate() * t) - std::exp(-c.subradiant_rate() * t);
    const double s = std::sin(2.0 * c.g12() * t);
    return 0.5 * std::sqrt(d * d + 4.0 * std::exp(-2.0 * c.gamma() * t) * s * s);
}

/// Driven single-qubit excited population, alpha = Omega/Gamma, t_norm = Gamma t:
///   2a^2/(1+4a^2) - a e^{-t}/(1+4a^2) (2a cos 2at + sin 2at).
inline double single_qubit_rho_ee(double alpha, double t_norm) {
    if (!(t_norm >= 0.0))
        throw std::invalid_argument("normalized time must be non-negative");
    const double d = 1.0 + 4.0 * alpha * alpha;
    return 2.0 * alpha * alpha / d -
           alpha * std::exp(-t_norm) / d * (2.0 * alpha * std::cos(2.0 * alpha * t_norm) + std::sin(2.0 * alpha * t_norm));
}

inline double single_qubit_rho_ee_steady(double alpha) { return 2.0 * alpha * alpha / (1.0 + 4.0 * alpha * alpha); }

/// Excited population of qubit `q` (partial trace over the other qubit).
inline double excited_population(const DensityMatrix &rho, int q) {
    const DensityMatrix p = in_basis(rho, Basis::Product);
    using namespace basis;
    return q == 0 ? (p(ee, ee) + p(eg, eg)).real() : (p(ee, ee) + p(ge, ge)).real();
}

} // namespace enzq
