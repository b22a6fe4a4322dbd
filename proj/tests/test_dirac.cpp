#include <catch2/catch_amalgamated.hpp>

#include "esph/dirac.hpp"
#include "esph/integrators.hpp"
#include "esph/models.hpp"
#include "esph/structure.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <random>

using namespace esph;

namespace {

EnergyFunctional quadratic_energy(Index n) {
    return EnergyFunctional(
        n, [](const Vec& x) { return 0.5 * x.squaredNorm(); }, [](const Vec& x) { return x; });
}

// Random blocks with a PSD resistive relation built as BᵀB.
EsDiracSystem random_es_dirac(std::mt19937_64& rng, Index n, Index ny, Index r1, Index r2) {
    const Mat B = random_matrix(rng, r1 + r2, r1 + r2);
    const Mat phibar = B.transpose() * B;
    return EsDiracSystem(n, ny, r1, r2,
                         OperatorField::zero(n, n, SymmetryClass::skew),
                         OperatorField::constant(random_matrix(rng, n, ny)),
                         OperatorField::constant(random_matrix(rng, n, r1)),
                         OperatorField::constant(random_matrix(rng, ny, r2)),
                         OperatorField::zero(ny, ny),
                         OperatorField::constant(phibar, SymmetryClass::symmetric_psd),
                         quadratic_energy(n), "random_dirac");
}

IsoDiracSystem random_iso_dirac(std::mt19937_64& rng, Index n, Index ny, Index r1, Index r2) {
    const Mat B = random_matrix(rng, r1 + r2, r1 + r2);
    const Mat wbar = B.transpose() * B;
    return IsoDiracSystem(n, ny, r1, r2,
                          OperatorField::zero(n, n, SymmetryClass::skew),
                          OperatorField::constant(random_matrix(rng, n, ny)),
                          OperatorField::constant(random_matrix(rng, n, r1)),
                          OperatorField::constant(random_matrix(rng, ny, r2)),
                          OperatorField::zero(ny, ny),
                          OperatorField::constant(wbar, SymmetryClass::symmetric_psd),
                          quadratic_energy(n), "random_dirac_iso");
}

}  // namespace

TEST_CASE("es Dirac map assembles with the documented block placement", "[dirac]") {
    SECTION("oscillator blocks") {
        const EsDiracSystem sys = damped_oscillator_dirac(1.0, 1.0, 0.5);
        Mat expected(4, 4);
        expected << 0, 1, 1, 1,
                   -1, 0, 0, 0,
                   -1, 0, 0, 0,
                   -1, 0, 0, 0;
        const Mat L = assemble_L(sys, Vec::Zero(2));
        CHECK((L - expected).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK(skew_defect(L) == 0.0);
    }
    SECTION("zero blocks give the zero map") {
        const EsDiracSystem sys(2, 1, 1, 1, OperatorField::zero(2, 2, SymmetryClass::skew),
                                OperatorField::zero(2, 1), OperatorField::zero(2, 1),
                                OperatorField::zero(1, 1), OperatorField::zero(1, 1),
                                OperatorField::zero(2, 2, SymmetryClass::symmetric_psd),
                                quadratic_energy(2));
        CHECK(assemble_L(sys, Vec::Zero(2)) == Mat::Zero(5, 5));
    }
    SECTION("state-dependent skew blocks keep the map skew") {
        std::mt19937_64 rng(101);
        OperatorField omega(2, 2, SymmetryClass::skew, [](const Vec& x) -> Mat {
            const double s = 1.0 + x(0) * x(0);
            Mat w(2, 2);
            w << 0.0, -s, s, 0.0;
            return w;
        });
        const EsDiracSystem sys(2, 1, 1, 0, std::move(omega),
                                OperatorField::constant(Mat{{1.0}, {0.0}}),
                                OperatorField::constant(Mat{{0.5}, {0.7}}),
                                OperatorField::zero(1, 0), OperatorField::zero(1, 1),
                                OperatorField::constant(Mat{{0.3}}, SymmetryClass::symmetric_psd),
                                quadratic_energy(2));
        for (int i = 0; i < 100; ++i) {
            const Vec x = random_vector(rng, 2);
            CHECK(skew_defect(assemble_L(sys, x)) <= 1e-12);
        }
    }
}

TEST_CASE("iso Dirac map assembles with the documented block placement", "[dirac]") {
    SECTION("oscillator blocks") {
        const IsoDiracSystem sys = damped_oscillator_dirac_iso(1.0, 1.0, 0.5);
        Mat expected(4, 4);
        expected << 0, -1, 0, 0,
                    1, 0, -1, -1,
                    0, 1, 0, 0,
                    0, 1, 0, 0;
        const Mat K = assemble_K(sys, Vec::Zero(2));
        CHECK((K - expected).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK(skew_defect(K) == 0.0);
    }
    SECTION("zero blocks give the zero map") {
        const IsoDiracSystem sys(2, 1, 1, 1, OperatorField::zero(2, 2, SymmetryClass::skew),
                                 OperatorField::zero(2, 1), OperatorField::zero(2, 1),
                                 OperatorField::zero(1, 1), OperatorField::zero(1, 1),
                                 OperatorField::zero(2, 2, SymmetryClass::symmetric_psd),
                                 quadratic_energy(2));
        CHECK(assemble_K(sys, Vec::Zero(2)) == Mat::Zero(5, 5));
    }
    SECTION("skew at random states") {
        std::mt19937_64 rng(103);
        const IsoDiracSystem sys = damped_oscillator_dirac_iso(1.0, 2.0, 0.3);
        for (int i = 0; i < 100; ++i)
            CHECK(skew_defect(assemble_K(sys, random_vector(rng, 2))) <= 1e-12);
    }
}

TEST_CASE("the graph of a skew map conserves power", "[dirac]") {
    SECTION("random skew maps pass") {
        std::mt19937_64 rng(7);
        const Mat A = random_matrix(rng, 6, 6);
        const Mat L = A - A.transpose();
        const DiracCheck check = verify_dirac(L, 1000, 42);
        CHECK(check.passed);
        CHECK(check.dimension == 6);
        CHECK(check.max_power_defect <= 1e-15);
    }
    SECTION("the identity is flagged") {
        const DiracCheck check = verify_dirac(Mat::Identity(4, 4), 100, 42);
        CHECK_FALSE(check.passed);
        CHECK(check.max_power_defect > 0.4);
    }
    SECTION("assembled oscillator map passes") {
        const EsDiracSystem sys = damped_oscillator_dirac(1.0, 1.0, 0.5);
        const DiracCheck check = verify_dirac(assemble_L(sys, Vec{{0.3, -0.8}}), 1000, 42);
        CHECK(check.passed);
        CHECK(check.max_power_defect <= 1e-15);
    }
    SECTION("non-square input is rejected") {
        CHECK_THROWS_AS(verify_dirac(Mat::Zero(2, 3), 10, 1), std::invalid_argument);
    }
    SECTION("every Dirac-capable registry model passes at random states") {
        std::mt19937_64 rng(11);
        for (const ModelSpec& spec : model_registry()) {
            if (!spec.build_dirac) continue;
            const EsDiracSystem sys = spec.build_dirac(spec.defaults);
            const Vec x = random_vector(rng, sys.state_dim);
            CHECK(verify_dirac(assemble_L(sys, x), 1000, 42).passed);
        }
    }
}

TEST_CASE("resistive elimination recovers the ODE-form oscillator", "[dirac]") {
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.5);
    const EsPhSystem eliminated = eliminate_resistive_es(dsys);
    const EsPhSystem direct = damped_oscillator_es(1.0, 1.0, 0.5);

    Mat rho_expected = Mat::Zero(2, 2);
    rho_expected(0, 0) = 0.5;
    CHECK((eliminated.rho(Vec::Zero(2)) - rho_expected).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(max_abs(eliminated.sigma(Vec::Zero(2))) == 0.0);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        const Vec x = random_vector(rng, 2);
        const Vec xdot = random_vector(rng, 2);
        const Vec u = random_vector(rng, 1);
        CHECK((esph_residual(eliminated, x, xdot, u) - esph_residual(direct, x, xdot, u))
                  .lpNorm<Eigen::Infinity>() < 1e-15);
        CHECK((esph_output(eliminated, x, xdot, u) - esph_output(direct, x, xdot, u))
                  .lpNorm<Eigen::Infinity>() < 1e-15);
    }
}

TEST_CASE("zero resistive relations eliminate to conservative systems", "[dirac]") {
    const EsDiracSystem dsys(2, 1, 1, 0,
                             OperatorField::constant((Mat(2, 2) << 0, -1, 1, 0).finished(),
                                                     SymmetryClass::skew),
                             OperatorField::constant(Mat{{1.0}, {0.0}}),
                             OperatorField::constant(Mat{{1.0}, {0.0}}),
                             OperatorField::zero(1, 0), OperatorField::zero(1, 1),
                             OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                             quadratic_energy(2));
    const EsPhSystem eliminated = eliminate_resistive_es(dsys);
    for (const Vec& x : sample_states(2, 10, 5))
        CHECK(max_abs(assemble_phi(eliminated, x)) == 0.0);
}

TEST_CASE("congruence keeps eliminated dissipation blocks PSD", "[dirac]") {
    std::mt19937_64 rng(29);
    for (int draw = 0; draw < 100; ++draw) {
        const EsDiracSystem dsys = random_es_dirac(rng, 4, 2, 3, 2);
        const EsPhSystem eliminated = eliminate_resistive_es(dsys);
        const Mat phi = assemble_phi(eliminated, Vec::Zero(4));
        CHECK(symmetry_defect(phi) <= 1e-12 * std::max(1.0, max_abs(phi)));
        CHECK(min_symmetric_eigenvalue(phi) >= -1e-10 * std::max(1.0, max_abs(phi)));
    }
}

TEST_CASE("iso elimination mirrors the es path", "[dirac]") {
    SECTION("recovers the iso oscillator") {
        const IsoDiracSystem dsys = damped_oscillator_dirac_iso(1.0, 1.0, 0.5);
        const IsoPhSystem eliminated = eliminate_resistive_iso(dsys);
        const IsoPhSystem direct = damped_oscillator_iso(1.0, 1.0, 0.5);
        Mat R_expected = Mat::Zero(2, 2);
        R_expected(1, 1) = 0.5;
        CHECK((eliminated.R(Vec::Zero(2)) - R_expected).lpNorm<Eigen::Infinity>() == 0.0);

        std::mt19937_64 rng(31);
        for (int i = 0; i < 20; ++i) {
            const Vec x = random_vector(rng, 2);
            const Vec u = random_vector(rng, 1);
            const IsoRhs a = isoph_rhs(eliminated, x, u);
            const IsoRhs b = isoph_rhs(direct, x, u);
            CHECK((a.xdot - b.xdot).lpNorm<Eigen::Infinity>() < 1e-15);
            CHECK((a.output - b.output).lpNorm<Eigen::Infinity>() < 1e-15);
        }
    }
    SECTION("zero relation is lossless") {
        const IsoDiracSystem dsys(2, 1, 1, 0,
                                  OperatorField::constant((Mat(2, 2) << 0, 1, -1, 0).finished(),
                                                          SymmetryClass::skew),
                                  OperatorField::constant(Mat{{0.0}, {1.0}}),
                                  OperatorField::constant(Mat{{0.0}, {1.0}}),
                                  OperatorField::zero(1, 0), OperatorField::zero(1, 1),
                                  OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                                  quadratic_energy(2));
        const IsoPhSystem eliminated = eliminate_resistive_iso(dsys);
        for (const Vec& x : sample_states(2, 10, 5))
            CHECK(max_abs(assemble_W(eliminated, x)) == 0.0);
    }
    SECTION("congruence keeps W PSD over random draws") {
        std::mt19937_64 rng(37);
        for (int draw = 0; draw < 100; ++draw) {
            const IsoDiracSystem dsys = random_iso_dirac(rng, 4, 2, 3, 2);
            const IsoPhSystem eliminated = eliminate_resistive_iso(dsys);
            const Mat W = assemble_W(eliminated, Vec::Zero(4));
            CHECK(min_symmetric_eigenvalue(W) >= -1e-10 * std::max(1.0, max_abs(W)));
        }
    }
}

TEST_CASE("DAE stepping agrees with elimination plus simulation", "[dirac]") {
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.5);
    const EsPhSystem eliminated = eliminate_resistive_es(dsys);
    const InputSignal u = InputSignal::callable(1, [](double t) { return Vec{{0.5 * std::sin(t)}}; });
    SimConfig cfg;
    cfg.t_end = 10.0;
    cfg.dt = 1e-2;
    const Vec x0{{1.0, 0.0}};

    const DaeTrajectory dae = simulate_dae_es(dsys, u, cfg, x0);
    const Trajectory ode = simulate(eliminated, u, cfg, x0);

    REQUIRE(dae.trajectory.states.size() == ode.states.size());
    for (std::size_t k = 0; k < ode.states.size(); ++k)
        CHECK((dae.trajectory.states[k] - ode.states[k]).lpNorm<Eigen::Infinity>() <=
              10.0 * cfg.newton_tol);
}

TEST_CASE("elimination equivalence holds for every Dirac-capable model", "[dirac]") {
    SimConfig cfg;
    cfg.t_end = 2.0;
    cfg.dt = 1e-2;
    const InputSignal base = InputSignal::callable(1, [](double t) { return Vec{{0.5 * std::sin(t)}}; });

    for (const ModelSpec& spec : model_registry()) {
        if (!spec.build_dirac) continue;
        INFO("model " << spec.name);
        const EsDiracSystem dsys = spec.build_dirac(spec.defaults);
        const EsPhSystem eliminated = eliminate_resistive_es(dsys);
        const Vec x0 = spec.default_x0(spec.defaults);

        const DaeTrajectory dae = simulate_dae_es(dsys, base, cfg, x0);
        const Trajectory ode = simulate(eliminated, base, cfg, x0);
        REQUIRE(dae.trajectory.states.size() == ode.states.size());
        for (std::size_t k = 0; k < ode.states.size(); ++k)
            CHECK((dae.trajectory.states[k] - ode.states[k]).lpNorm<Eigen::Infinity>() <=
                  10.0 * cfg.newton_tol);
    }
}

TEST_CASE("DAE runs respect the resistive power split", "[dirac]") {
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.5);
    const InputSignal u = InputSignal::callable(1, [](double t) { return Vec{{std::sin(t)}}; });
    SimConfig cfg;
    cfg.t_end = 5.0;
    cfg.dt = 1e-2;
    const DaeTrajectory dae = simulate_dae_es(dsys, u, cfg, Vec{{1.0, 0.0}});
    const Trajectory& traj = dae.trajectory;

    const Mat phibar = dsys.phibar(Vec::Zero(2));
    for (std::size_t k = 0; k < traj.n_steps(); ++k) {
        const double pairing = dae.resistive_pairings[k];
        CHECK(pairing <= 1e-12);
        const Vec& e_R = dae.resistive_efforts[k];
        CHECK(pairing == Catch::Approx(-e_R.dot(phibar * e_R)).margin(1e-14));
        // per-step split: ΔH = dt·(supply + pairing) + residual
        const double dh = traj.energies[k + 1] - traj.energies[k];
        const double split = traj.step_dt(k) * (traj.supply_rates[k] + pairing);
        CHECK(dh - split == Catch::Approx(traj.pbe_residuals[k]).margin(1e-14));
        CHECK(std::abs(traj.pbe_residuals[k]) <= 1e-10 * std::max(1.0, std::abs(traj.energies[k])));
    }
}

TEST_CASE("conservative DAE runs keep the energy flat", "[dirac]") {
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.0);
    SimConfig cfg;
    cfg.t_end = 10.0;
    cfg.dt = 1e-2;
    const DaeTrajectory dae = simulate_dae_es(dsys, InputSignal::zero(1), cfg, Vec{{1.0, 0.0}});
    for (double h : dae.trajectory.energies) CHECK(std::abs(h - 0.5) <= 1e-10);
}

TEST_CASE("DAE stepping accepts only the discrete-gradient scheme", "[dirac]") {
    const EsDiracSystem dsys = damped_oscillator_dirac(1.0, 1.0, 0.5);
    SimConfig cfg;
    cfg.scheme = Scheme::implicit_midpoint;
    CHECK_THROWS_AS(simulate_dae_es(dsys, InputSignal::zero(1), cfg, Vec{{1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("dirac systems validate their block shapes", "[dirac]") {
    CHECK_THROWS_AS(EsDiracSystem(2, 1, 1, 0, OperatorField::zero(2, 2, SymmetryClass::skew),
                                  OperatorField::zero(2, 1),
                                  OperatorField::zero(2, 2),  // tau1 must be 2×1
                                  OperatorField::zero(1, 0), OperatorField::zero(1, 1),
                                  OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                                  quadratic_energy(2)),
                    std::invalid_argument);
}
