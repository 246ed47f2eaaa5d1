#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qoc1d/core/errors.hpp"
#include "qoc1d/core/fft.hpp"
#include "qoc1d/gpe/hamiltonian.hpp"
#include "qoc1d/gpe/potential.hpp"
#include "qoc1d/gpe/split_step.hpp"
#include "qoc1d/gpe/stationary.hpp"

using namespace qoc1d;
using gpe::GpeHamiltonian;

namespace {

constexpr double p2 = 65.8392, p4 = 97.6349, p6 = -15.3850;
constexpr double kappa = 0.36537;
constexpr double g1d = 1.8299;

GpeHamiltonian shakeup_hamiltonian(std::shared_ptr<const SpatialGrid> grid, double beta) {
    auto pot = gpe::make_anharmonic_potential(grid, p2, p4, p6, 0.0);
    GpeHamiltonian h(grid, kappa, pot, beta);
    h.set_analytic_derivative(gpe::make_anharmonic_potential_derivative(grid, p2, p4, p6, 0.0));
    return h;
}

GpeHamiltonian free_hamiltonian(std::shared_ptr<const SpatialGrid> grid) {
    const int n = grid->n();
    return GpeHamiltonian(grid, kappa,
                          gpe::PotentialFunction([n](double) { return RVec(RVec::Zero(n)); }, 0.0),
                          0.0);
}

double gpe_energy(const GpeHamiltonian& h, const StateVector& psi, double u) {
    const double dx = h.grid().dx();
    const CVec t_psi = apply_kinetic_spectral(psi.amplitudes(), h.grid(), h.kin_factor());
    const RVec v = h.potential_values(u);
    const CVec v_psi = v.array() * psi.amplitudes().array();
    const double lin = (psi.amplitudes().dot(t_psi + v_psi) * dx).real();
    const RVec rho = psi.amplitudes().cwiseAbs2();
    return lin + 0.5 * h.beta() * rho.dot(rho) * dx;
}

} // namespace

TEST_CASE("anharmonic potential and derivative") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 256);

    RVec v0 = gpe::anharmonic_potential_values(*grid, 0.0, p2, p4, p6);
    const auto value_at = [&](double x, double u) {
        const double s = x - u;
        return p2 * s * s + p4 * s * s * s * s + p6 * s * s * s * s * s * s;
    };
    CHECK(value_at(0.0, 0.0) == 0.0);
    CHECK(value_at(1.0, 0.0) == doctest::Approx(148.0891).epsilon(1e-12));

    // Pointwise match against independent evaluation, plus translation.
    for (int i = 0; i < grid->n(); i += 17)
        CHECK(v0[i] == doctest::Approx(value_at(grid->x()[i], 0.0)).epsilon(1e-13));
    RVec v_shift = gpe::anharmonic_potential_values(*grid, 0.3, p2, p4, p6);
    for (int i = 0; i < grid->n(); i += 17)
        CHECK(v_shift[i] == doctest::Approx(value_at(grid->x()[i], 0.3)).epsilon(1e-12));

    SUBCASE("derivative matches central finite differences") {
        const double u = 0.21;
        const double du = 1e-6;
        RVec d = gpe::anharmonic_potential_derivative_values(*grid, u, p2, p4, p6);
        RVec fd = (gpe::anharmonic_potential_values(*grid, u + du, p2, p4, p6) -
                   gpe::anharmonic_potential_values(*grid, u - du, p2, p4, p6)) /
                  (2.0 * du);
        for (int i = 0; i < grid->n(); i += 13)
            CHECK(d[i] == doctest::Approx(fd[i]).epsilon(1e-6));
    }

    SUBCASE("derivative vanishes at the center and is negative beyond it") {
        RVec d = gpe::anharmonic_potential_derivative_values(*grid, 0.0, 1.0, 1.0, 1.0);
        for (int i = 0; i < grid->n(); ++i)
            if (grid->x()[i] > 0.1)
                CHECK(d[i] < 0.0);
    }
}

TEST_CASE("split step: free mode phase, norm, errors") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 64);
    GpeHamiltonian h = free_hamiltonian(grid);

    const double k0 = grid->k()[5];
    CVec mode(64);
    for (int i = 0; i < 64; ++i)
        mode[i] = std::polar(1.0, k0 * grid->x()[i]);
    StateVector psi(mode, grid);
    psi.normalize();

    const double dt = 0.01;
    StateVector out = split_step(psi, h, 0.0, 0.0, dt);
    const complexd phase = std::polar(1.0, -kappa * k0 * k0 * dt);
    CHECK((out.amplitudes() - phase * psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);

    CHECK_THROWS_AS(split_step(psi, h, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(split_step(psi, h, 0.0, 0.0, -0.1), std::invalid_argument);
}

TEST_CASE("ground state: harmonic oscillator analytic energy") {
    // V = (omega^2 / 4 kappa) x^2 has ground energy omega/2; omega = 2,
    // kappa = 1/2 gives V = 2 x^2 and energy exactly 1.
    const auto grid = make_spatial_grid(-8.0, 8.0, 256);
    auto pot = gpe::PotentialFunction(
        [grid](double) { return RVec(2.0 * grid->x().cwiseProduct(grid->x())); }, 0.0);
    GpeHamiltonian h(grid, 0.5, pot, 0.0);

    auto result = gpe::ground_state_info(h, 0.0, 1e-12);
    CHECK(result.energy == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(result.residual < 1e-8);
}

TEST_CASE("ground and excited states match an independent eigensolver at beta = 0") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 96);
    GpeHamiltonian h = shakeup_hamiltonian(grid, 0.0);

    RMat dense = h.banded_kinetic().dense();
    dense.diagonal() += h.potential_values(0.0);

    StateVector ground = gpe::ground_state(h, 0.0, 1e-11);
    auto [e0, v0] = oracles::power_iteration_ground(dense);
    StateVector oracle0(v0.cast<complexd>() / std::sqrt(grid->dx()), grid);
    CHECK(fidelity(ground, oracle0) > 1.0 - 1e-10);

    // Deflate to reach the second eigenvector with the same oracle.
    const double lift = 1e3;
    RMat deflated = dense + lift * (v0 * v0.transpose());
    auto [e1, v1] = oracles::power_iteration_ground(deflated);
    StateVector oracle1(v1.cast<complexd>() / std::sqrt(grid->dx()), grid);
    StateVector excited = gpe::first_excited_state(h, 0.0, 1e-11);
    CHECK(fidelity(excited, oracle1) > 1.0 - 1e-10);
    CHECK(e1 > e0);
}

TEST_CASE("first excited state: parity and orthogonality with interactions") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 128);
    GpeHamiltonian h = shakeup_hamiltonian(grid, g1d);

    StateVector ground = gpe::ground_state(h, 0.0, 1e-10);
    StateVector excited = gpe::first_excited_state(h, 0.0, 1e-10);

    DiagonalOperator x_op(grid->x());
    CHECK(std::abs(expectation_value(x_op, excited)) < 1e-8);
    CHECK(std::abs(overlap(ground, excited)) < 1e-8);

    // One node: a single sign change away from the tails.
    const CVec& a = excited.amplitudes();
    int sign_changes = 0;
    for (int i = 1; i < grid->n(); ++i)
        if (a[i].real() * a[i - 1].real() < 0.0 &&
            (std::abs(a[i]) > 1e-6 || std::abs(a[i - 1]) > 1e-6))
            ++sign_changes;
    CHECK(sign_changes == 1);

    CHECK_THROWS_AS(gpe::stationary_state(h, 0.0, 2, 1e-10), std::invalid_argument);
}

TEST_CASE("stationarity and energy conservation under static control") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 128);
    GpeHamiltonian h = shakeup_hamiltonian(grid, g1d);
    StateVector psi = gpe::ground_state(h, 0.0, 1e-12);

    const double dt = 0.002;
    StateVector evolved = psi;
    const double e0 = gpe_energy(h, psi, 0.0);
    double max_drift = 0.0;
    double worst_norm = 0.0;
    for (int step = 0; step < 1000; ++step) {
        gpe::split_step_inplace(evolved.amplitudes(), h, 0.0, 0.0, dt);
        if (step == 499)
            CHECK(fidelity(evolved, psi) >= 1.0 - 1e-7);
        if (step % 50 == 49)
            max_drift = std::max(max_drift,
                                 std::abs(gpe_energy(h, evolved, 0.0) - e0) / std::abs(e0));
        worst_norm = std::max(worst_norm, std::abs(evolved.norm() - 1.0));
    }
    CHECK(worst_norm < 1e-12);
    CHECK(max_drift < 1e-8);
    CHECK(fidelity(evolved, psi) >= 1.0 - 1e-7);
}

TEST_CASE("split step matches an RK4 dense oracle and converges at 2nd order") {
    const int n = 32;
    const auto grid = make_spatial_grid(-2.0, 2.0, n);
    GpeHamiltonian h = shakeup_hamiltonian(grid, g1d);
    StateVector psi0 = gpe::ground_state(h, 0.0, 1e-11);

    const RMat t_dense = oracles::dense_spectral_kinetic(*grid, kappa);
    const double duration = 0.05;

    const auto u_of = [duration](double t) {
        return 0.2 * std::sin(pi * t / duration);
    };
    const auto rhs = [&](double t, const CVec& y) -> CVec {
        const RVec v = h.potential_values(u_of(t));
        CVec hy = t_dense * y;
        hy += (v.array() * y.array()).matrix();
        hy += (g1d * y.array().abs2() * y.array()).matrix();
        return -imag_unit * hy;
    };

    const auto split_error = [&](double dt) {
        const int n_steps = static_cast<int>(std::round(duration / dt));
        CVec psi = psi0.amplitudes();
        for (int i = 0; i < n_steps; ++i)
            gpe::split_step_inplace(psi, h, u_of(i * dt), u_of((i + 1) * dt), dt);
        const CVec reference = oracles::rk4(rhs, psi0.amplitudes(), 0.0, dt / 20.0,
                                            n_steps * 20);
        return std::sqrt((psi - reference).squaredNorm() * grid->dx());
    };

    const double e1 = split_error(8e-5);
    CHECK(e1 < 1e-6);

    const double e2 = split_error(4e-5);
    const double e3 = split_error(2e-5);
    const double order1 = std::log2(e1 / e2);
    const double order2 = std::log2(e2 / e3);
    CHECK(order1 > 1.8);
    CHECK(order1 < 2.2);
    CHECK(order2 > 1.8);
    CHECK(order2 < 2.2);
}

TEST_CASE("finite-difference dH/du fallback matches the analytic derivative") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 64);
    auto pot = gpe::make_anharmonic_potential(grid, p2, p4, p6, 0.0);
    GpeHamiltonian with_fd(grid, kappa, pot, 0.0);
    GpeHamiltonian with_analytic(grid, kappa, pot, 0.0);
    with_analytic.set_analytic_derivative(
        gpe::make_anharmonic_potential_derivative(grid, p2, p4, p6, 0.0));

    CHECK_FALSE(with_fd.has_analytic_derivative());
    const RVec fd = with_fd.potential_derivative_values(0.37);
    const RVec an = with_analytic.potential_derivative_values(0.37);
    for (int i = 0; i < grid->n(); i += 7)
        CHECK(fd[i] == doctest::Approx(an[i]).epsilon(1e-6));
}

TEST_CASE("convergence failure carries the last residual") {
    const auto grid = make_spatial_grid(-2.0, 2.0, 64);
    GpeHamiltonian h = shakeup_hamiltonian(grid, g1d);
    CHECK_THROWS_AS(gpe::ground_state_info(h, 0.0, 1e-13, 2), ConvergenceError);
}
