#include "enzq/dynamics.hpp"
#include "enzq/entanglement.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace enzq;

namespace {

double max_abs(const Matrix4c &m) { return m.cwiseAbs().maxCoeff(); }

const CouplingParameters kEnz = CouplingParameters::normalized(0.95, 0.05);

} // namespace

TEST(Generator, PreservesTraceAndHermiticity) {
    std::mt19937_64 rng(3);
    for (const auto &pump : {PumpDrive::none(), PumpDrive::asymmetric(), PumpDrive({0.3, -0.1}, {0.05, 0.2}, 0.7)}) {
        const LindbladGenerator gen(CouplingParameters(1.0, 0.4, -0.3), pump);
        for (int k = 0; k < 20; ++k) {
            const Matrix4c d = lindblad_rhs(test::random_state(rng, Basis::Dicke), gen, 0.37 * k);
            EXPECT_LT(std::abs(d.trace()), 1e-14);
            EXPECT_LT(hermiticity_violation(d), 1e-14);
        }
    }
}

TEST(Generator, BasisCovariant) {
    std::mt19937_64 rng(5);
    const CouplingParameters c(1.3, -0.7, 0.45);
    const PumpDrive pump({0.2, 0.1}, {-0.3, 0.0}, 0.4);
    const LindbladGenerator gd(c, pump, Basis::Dicke), gp(c, pump, Basis::Product);
    const Matrix4c &u = basis::product_to_dicke();
    for (int k = 0; k < 10; ++k) {
        const DensityMatrix p = test::random_state(rng);
        const Matrix4c via_product = u * lindblad_rhs(p, gp, 1.1) * u.adjoint();
        EXPECT_LT(max_abs(via_product - lindblad_rhs(to_dicke(p), gd, 1.1)), 1e-14);
    }
}

TEST(Generator, RejectsBasisMismatch) {
    const LindbladGenerator gen(kEnz);
    EXPECT_THROW(lindblad_rhs(DensityMatrix::basis_state(0, Basis::Product), gen), BasisMismatch);
}

TEST(Generator, CollectiveRatesInDickeBasis) {
    // From |+> the decay rate is gamma + gamma12; from |-> it is gamma - gamma12.
    const LindbladGenerator gen(CouplingParameters::normalized(0.6, 0.0));
    const auto dp = lindblad_rhs(DensityMatrix::basis_state(basis::plus, Basis::Dicke), gen);
    const auto dm = lindblad_rhs(DensityMatrix::basis_state(basis::minus, Basis::Dicke), gen);
    EXPECT_NEAR(dp(basis::plus, basis::plus).real(), -1.6, 1e-15);
    EXPECT_NEAR(dm(basis::minus, basis::minus).real(), -0.4, 1e-15);
    EXPECT_NEAR(dp(basis::ground, basis::ground).real(), 1.6, 1e-15);
}

TEST(Evolve, MatchesUnpumpedClosedForm) {
    const auto grid = TimeGrid::uniform(10.0, 0.25);
    for (double beta : {-0.8, 0.0, 0.5, 0.99, 1.0})
        for (double g : {-2.0, 0.0, 0.1, 1.0}) {
            const CouplingParameters c = CouplingParameters::normalized(beta, g);
            const auto traj = evolve(dicke_initial_state(), LindbladGenerator(c), grid);
            for (std::size_t k = 0; k < grid.size(); ++k)
                ASSERT_LT(max_abs(traj.states[k].matrix() - unpumped_dicke_solution(c, grid[k]).matrix()), 1e-8)
                    << beta << " " << g << " t=" << grid[k];
        }
}

TEST(Evolve, AcceptsProductBasisInitialState) {
    const auto grid = TimeGrid::uniform(2.0, 1.0);
    const auto traj = evolve(to_product(dicke_initial_state()), LindbladGenerator(kEnz), grid);
    EXPECT_EQ(traj.states.back().basis(), Basis::Dicke);
    EXPECT_LT(max_abs(traj.states.back().matrix() - unpumped_dicke_solution(kEnz, 2.0).matrix()), 1e-8);
}

TEST(Evolve, GridStartingLaterThanZeroUsesFirstSampleAsOrigin) {
    const auto traj = evolve(dicke_initial_state(), LindbladGenerator(kEnz), TimeGrid({1.0, 2.0}));
    EXPECT_LT(max_abs(traj.states[0].matrix() - dicke_initial_state().matrix()), 1e-15);
    EXPECT_LT(max_abs(traj.states[1].matrix() - unpumped_dicke_solution(kEnz, 1.0).matrix()), 1e-8);
}

TEST(Evolve, RejectsInvalidInitialState) {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 2.0;
    EXPECT_THROW(evolve({m, Basis::Dicke}, LindbladGenerator(kEnz), TimeGrid({0.0})), InvalidState);
}

TEST(Evolve, FixedStepIsReproducibleAndAccurate) {
    EvolveOptions fixed;
    fixed.fixed_step = true;
    const LindbladGenerator gen(kEnz, PumpDrive::antisymmetric());
    const auto grid = TimeGrid::uniform(5.0, 0.5);
    const auto a = evolve(dicke_initial_state(), gen, grid, fixed);
    const auto b = evolve(dicke_initial_state(), gen, grid, fixed);
    const auto adaptive = evolve(dicke_initial_state(), gen, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_EQ(a.states[k].matrix(), b.states[k].matrix());
        EXPECT_LT(max_abs(a.states[k].matrix() - adaptive.states[k].matrix()), 1e-9);
    }
}

TEST(Evolve, ReportsStepStatistics) {
    const auto traj = evolve(dicke_initial_state(), LindbladGenerator(kEnz), TimeGrid::uniform(2.0, 1.0));
    EXPECT_EQ(traj.diagnostics[0].accepted_steps, 0);
    EXPECT_GT(traj.diagnostics[1].accepted_steps, 0);
    for (const auto &d : traj.diagnostics)
        EXPECT_LE(d.max_scaled_error, 1.0);
}

TEST(Evolve, PumpSignFlipIsLocalUnitary) {
    // Omega -> -Omega on both qubits is conjugation by sigma_z (x) sigma_z.
    const auto grid = TimeGrid::uniform(8.0, 0.5);
    const auto a = evolve(dicke_initial_state(), LindbladGenerator(kEnz, PumpDrive(0.3, -0.1)), grid);
    const auto b = evolve(dicke_initial_state(), LindbladGenerator(kEnz, PumpDrive(-0.3, 0.1)), grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
        EXPECT_NEAR(wootters_concurrence(a.states[k]), wootters_concurrence(b.states[k]), 1e-9);
}

TEST(SteadyState, NoPumpGivesGround) {
    for (double beta : {0.0, 0.5, 0.95, -0.3}) {
        const DensityMatrix s = steady_state(LindbladGenerator(CouplingParameters::normalized(beta, 0.2)));
        Matrix4c ground = Matrix4c::Zero();
        ground(basis::ground, basis::ground) = 1.0;
        EXPECT_LT(max_abs(s.matrix() - ground), 1e-15) << beta;
    }
}

TEST(SteadyState, DegenerateWhenSubradiantChannelIsDark) {
    try {
        steady_state(LindbladGenerator(CouplingParameters::normalized(1.0, 0.1)));
        FAIL();
    } catch (const DegenerateSteadyState &e) {
        EXPECT_LT(e.rank(), 16);
    }
}

TEST(SteadyState, IsStationaryAndPhysical) {
    for (const auto &pump : {PumpDrive::asymmetric(), PumpDrive::symmetric(), PumpDrive::antisymmetric(),
                             PumpDrive({0.3, 0.2}, {-0.1, 0.4}, 0.8)}) {
        const LindbladGenerator gen(kEnz, pump);
        const DensityMatrix s = steady_state(gen);
        EXPECT_TRUE(validate_state(s).ok()) << validate_state(s).describe();
        EXPECT_LT((liouvillian(gen) * vec(s.matrix())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SteadyState, LiouvillianMatchesGeneratorWithoutDetuning) {
    std::mt19937_64 rng(8);
    const LindbladGenerator gen(CouplingParameters(1.0, 0.3, 0.7), PumpDrive({0.2, 0.3}, {0.1, -0.4}));
    const Superoperator l = liouvillian(gen);
    for (int k = 0; k < 5; ++k) {
        const Matrix4c r = test::random_state(rng, Basis::Dicke).matrix();
        EXPECT_LT(max_abs(unvec(l * vec(r)) - gen.apply(r, 0.0)), 1e-14);
    }
}

TEST(SteadyState, AgreesWithLongIntegration) {
    // The slowest relaxation rate under these presets is ~0.05 gamma, so t = 600 is converged.
    for (const auto &pump : {PumpDrive::asymmetric(), PumpDrive::symmetric(), PumpDrive::antisymmetric()}) {
        const LindbladGenerator gen(kEnz, pump);
        const auto traj = evolve(dicke_initial_state(), gen, TimeGrid({0.0, 600.0}));
        EXPECT_LT(max_abs(traj.states.back().matrix() - steady_state(gen).matrix()), 1e-6);
    }
}

TEST(SteadyState, DetunedDriveIsStationaryInPumpFrame) {
    const LindbladGenerator gen(kEnz, PumpDrive(0.3, 0.15, 0.6));
    const auto traj = evolve(dicke_initial_state(), gen, TimeGrid({0.0, 600.0}));
    const Matrix4c rotated = to_pump_frame(traj.states.back().matrix(), gen, 600.0);
    EXPECT_LT(max_abs(rotated - steady_state(gen).matrix()), 1e-6);
}

TEST(SteadyState, DrivenIsolatedQubitMatchesLindbladSolution) {
    // H = -(alpha sigma^+ + h.c.): Rabi frequency 2 alpha, rho_ee = 4a^2/(1+8a^2).
    for (double a : {0.1, 0.5, 2.0}) {
        const LindbladGenerator gen(CouplingParameters(1.0, 0.0, 0.0), PumpDrive(a, 0.0));
        EXPECT_NEAR(excited_population(steady_state(gen), 0), 4 * a * a / (1 + 8 * a * a), 1e-12);
        EXPECT_NEAR(excited_population(steady_state(gen), 1), 0.0, 1e-14);
    }
}

TEST(ClosedForms, LosslessWaveguideLimit) {
    const auto c = CouplingParameters::normalized(1.0, 0.0);
    for (double t : {0.0, 0.1, 1.0, 5.0, 40.0})
        EXPECT_NEAR(transient_concurrence_closed_form(c, t), 0.5 * (1.0 - std::exp(-2.0 * t)), 1e-15);
}

TEST(ClosedForms, PureCoherentExchangePeak) {
    // gamma12 = 0, g12 = gamma: C = e^{-t}|sin 2t|.
    const auto c = CouplingParameters::normalized(0.0, 1.0);
    EXPECT_NEAR(transient_concurrence_closed_form(c, 0.55357435889704525151), 0.51419838006491664339, 1e-15);
    EXPECT_THROW(transient_concurrence_closed_form(c, -1.0), std::invalid_argument);
}

TEST(ClosedForms, UnpumpedSolutionIsAState) {
    for (double t : {0.0, 0.3, 3.0})
        EXPECT_TRUE(validate_state(unpumped_dicke_solution(kEnz, t)).ok());
}

TEST(ClosedForms, SingleQubitPopulation) {
    EXPECT_EQ(single_qubit_rho_ee(0.0, 3.0), 0.0);
    for (double a : {0.1, 0.5, 2.0}) {
        EXPECT_NEAR(single_qubit_rho_ee(a, 0.0), 0.0, 1e-16);
        EXPECT_NEAR(single_qubit_rho_ee(a, 60.0), single_qubit_rho_ee_steady(a), 1e-15);
    }
    EXPECT_DOUBLE_EQ(single_qubit_rho_ee_steady(0.5), 0.25);
    EXPECT_THROW(single_qubit_rho_ee(0.5, -0.1), std::invalid_argument);
}

TEST(ClosedForms, ExcitedPopulationPartialTrace) {
    const auto p = DensityMatrix::basis_state(basis::eg, Basis::Product);
    EXPECT_EQ(excited_population(p, 0), 1.0);
    EXPECT_EQ(excited_population(p, 1), 0.0);
    EXPECT_NEAR(excited_population(dicke_initial_state(), 0), 1.0, 1e-15);
}
