#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qoc1d/core/errors.hpp"
#include "qoc1d/lattice/fock_basis.hpp"
#include "qoc1d/lattice/hamiltonian.hpp"
#include "qoc1d/lattice/lanczos.hpp"
#include "qoc1d/lattice/operators.hpp"

using namespace qoc1d;
using namespace qoc1d::lattice;

namespace {

LatticeHamiltonian scenario_hamiltonian(std::shared_ptr<const FockBasis> basis) {
    const int l = basis->n_sites();
    RVec sites(l);
    for (int i = 0; i < l; ++i)
        sites[i] = l == 1 ? 0.0 : -1.0 + 2.0 * i / (l - 1);
    const RVec v = 0.1 * sites.cwiseProduct(sites);
    return make_bose_hubbard(basis, 1.0, v, BoundTransform(2.0, 40.0), false);
}

CVec random_fock_state(Eigen::Index dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    CVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v[i] = complexd(gauss(rng), gauss(rng));
    v /= v.norm();
    return v;
}

} // namespace

TEST_CASE("fock basis enumeration") {
    const auto b21 = make_fock_basis(2, 1);
    CHECK(b21->dim() == 2);
    CHECK(b21->state(0) == std::vector<int>{1, 0});
    CHECK(b21->state(1) == std::vector<int>{0, 1});

    CHECK(make_fock_basis(1, 7)->dim() == 1);
    const auto b55 = make_fock_basis(5, 5);
    CHECK(b55->dim() == 126);

    // Brute-force enumeration oracle: same set, same count.
    const auto all = oracles::enumerate_occupations(5, 5);
    CHECK(all.size() == 126);
    for (const auto& occ : all)
        CHECK(b55->state(b55->index_of(occ)) == occ);

    // Lexicographically descending ordering.
    for (Eigen::Index i = 1; i < b55->dim(); ++i)
        CHECK(b55->state(i - 1) > b55->state(i));

    CHECK_THROWS_AS(FockBasis(6, 6, 100), CapacityError);
    CHECK_THROWS_AS(make_fock_basis(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(b55->index_of({5, 0, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("fock dimension formula against enumeration") {
    for (int l = 1; l <= 6; ++l)
        for (int n = 1; n <= 6; ++n)
            CHECK(fock_dimension(l, n) == oracles::enumerate_occupations(l, n).size());
}

TEST_CASE("hopping operator") {
    SUBCASE("single particle on two sites") {
        const auto basis = make_fock_basis(2, 1);
        const SparseOperator hop = hopping_operator(*basis, false);
        CMat dense(hop.matrix());
        CHECK(dense(0, 0) == complexd(0, 0));
        CHECK(dense(0, 1) == complexd(1, 0));
        CHECK(dense(1, 0) == complexd(1, 0));
        CHECK(dense(1, 1) == complexd(0, 0));
    }

    SUBCASE("ladder algebra matrix element on the explicit 3-dim basis") {
        const auto basis = make_fock_basis(2, 2);
        REQUIRE(basis->dim() == 3);
        const SparseOperator hop = hopping_operator(*basis, false);
        const auto i11 = basis->index_of({1, 1});
        const auto i20 = basis->index_of({2, 0});
        // adag_2 a_1 |2,0> = sqrt(2) sqrt(1) |1,1>
        CHECK(CMat(hop.matrix())(i11, i20).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }

    SUBCASE("matrix elements are sqrt(n_i (n_{i+1} + 1)) at connected pairs") {
        const auto basis = make_fock_basis(3, 3);
        const SparseOperator hop = hopping_operator(*basis, false);
        const CMat dense(hop.matrix());
        for (Eigen::Index col = 0; col < basis->dim(); ++col) {
            const auto& occ = basis->state(col);
            for (int i = 0; i + 1 < 3; ++i) {
                if (occ[i] == 0)
                    continue;
                auto dest = occ;
                dest[i] -= 1;
                dest[i + 1] += 1;
                const double expected = std::sqrt(double(occ[i]) * (occ[i + 1] + 1));
                CHECK(dense(basis->index_of(dest), col).real() ==
                      doctest::Approx(expected).epsilon(1e-14));
            }
        }
    }

    SUBCASE("particle number is conserved by every nonzero element") {
        const auto basis = make_fock_basis(4, 3);
        const SparseOperator hop = hopping_operator(*basis, true);
        for (int k = 0; k < hop.matrix().outerSize(); ++k)
            for (SpCMat::InnerIterator it(hop.matrix(), k); it; ++it) {
                int row_total = 0, col_total = 0;
                for (int v : basis->state(it.row()))
                    row_total += v;
                for (int v : basis->state(it.col()))
                    col_total += v;
                CHECK(row_total == col_total);
            }
    }

    SUBCASE("periodic boundaries add a bond") {
        const auto basis = make_fock_basis(3, 2);
        const auto open_op = hopping_operator(*basis, false);
        const auto per_op = hopping_operator(*basis, true);
        CHECK(per_op.matrix().nonZeros() > open_op.matrix().nonZeros());
    }
}

TEST_CASE("diagonal lattice operators") {
    const auto basis = make_fock_basis(5, 5);
    const SparseOperator onsite = onsite_operator(*basis);
    CHECK(CMat(onsite.matrix())(basis->index_of({1, 1, 1, 1, 1}),
                                basis->index_of({1, 1, 1, 1, 1})).real() == 0.0);
    CHECK(CMat(onsite.matrix())(basis->index_of({5, 0, 0, 0, 0}),
                                basis->index_of({5, 0, 0, 0, 0})).real() == 20.0);

    const auto b3 = make_fock_basis(3, 5);
    CHECK(CMat(onsite_operator(*b3).matrix())(b3->index_of({2, 2, 1}),
                                              b3->index_of({2, 2, 1})).real() == 4.0);

    SUBCASE("site potential: scenario example values") {
        const auto b1 = make_fock_basis(5, 1);
        RVec sites(5);
        sites << -1.0, -0.5, 0.0, 0.5, 1.0;
        const RVec v = 0.1 * sites.cwiseProduct(sites);
        const SparseOperator pot = site_potential_operator(*b1, v);
        const RVec expected = (RVec(5) << 0.1, 0.025, 0.0, 0.025, 0.1).finished();
        for (int s = 0; s < 5; ++s) {
            std::vector<int> occ(5, 0);
            occ[s] = 1;
            const auto i = b1->index_of(occ);
            CHECK(CMat(pot.matrix())(i, i).real() == doctest::Approx(expected[s]).epsilon(1e-14));
        }
    }

    SUBCASE("uniform potential is c N identity") {
        const RVec v = RVec::Constant(5, 0.7);
        const SparseOperator pot = site_potential_operator(*basis, v);
        for (Eigen::Index i = 0; i < basis->dim(); ++i)
            CHECK(CMat(pot.matrix())(i, i).real() == doctest::Approx(0.7 * 5).epsilon(1e-13));
    }

    SUBCASE("single-site potential reads out the occupation") {
        RVec v = RVec::Zero(5);
        v[2] = 1.0;
        const SparseOperator pot = site_potential_operator(*basis, v);
        for (Eigen::Index i = 0; i < basis->dim(); ++i)
            CHECK(CMat(pot.matrix())(i, i).real() ==
                  doctest::Approx(double(basis->state(i)[2])).epsilon(1e-14));
    }

    CHECK_THROWS_AS(site_potential_operator(*basis, RVec::Zero(4)), std::invalid_argument);

    SUBCASE("number operator / Fock expectation example") {
        const auto b = make_fock_basis(5, 5);
        CVec amps = CVec::Zero(b->dim());
        amps[b->index_of({0, 5, 0, 0, 0})] = 1.0;
        StateVector psi(amps, b);
        CHECK(expectation_value(number_operator(*b, 1), psi) == doctest::Approx(5.0));
        CHECK(expectation_value(number_operator(*b, 0), psi) == doctest::Approx(0.0));
    }
}

TEST_CASE("bound transform") {
    const BoundTransform t(2.0, 40.0);
    CHECK(t(20.0) == doctest::Approx(40.0).epsilon(1e-12));   // tanh saturated
    CHECK(t(-20.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t(0.0) == doctest::Approx(21.0).epsilon(1e-13));    // A*B = (U_max+U_min)/2

    for (double u : {-2.0, -0.3, 0.0, 1.7}) {
        CHECK(t.inverse(t(u)) == doctest::Approx(u).epsilon(1e-10));
        // dU/du by central differences.
        const double fd = (t(u + 1e-6) - t(u - 1e-6)) / 2e-6;
        CHECK(t.derivative(u) == doctest::Approx(fd).epsilon(1e-8));
    }

    CHECK_THROWS_AS(t.inverse(41.0), std::domain_error);
    CHECK_THROWS_AS(t.inverse(2.0), std::domain_error);
    CHECK_THROWS_AS(BoundTransform(-1.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundTransform(4.0, 2.0), std::invalid_argument);
}

TEST_CASE("sparse ground state") {
    SUBCASE("diagonal matrix selects the smallest entry") {
        RVec diag(6);
        diag << 3.0, -1.0, 4.0, 1.0, 5.0, 9.0;
        const auto r = ground_state_sparse(SparseOperator::diagonal(diag), 1e-12);
        CHECK(r.energy == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(std::abs(r.state[1]) == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("Mott ground state at strong interaction") {
        const auto basis = make_fock_basis(5, 5);
        const LatticeHamiltonian h = scenario_hamiltonian(basis);
        const auto r = ground_state_sparse(h.assemble(BoundTransform(2.0, 40.0).inverse(30.0)),
                                           1e-12);
        StateVector psi(r.state, basis);
        for (int s = 0; s < 5; ++s) {
            const double n_s = expectation_value(number_operator(*basis, s), psi);
            CHECK(std::abs(n_s - 1.0) < 0.1);
        }
    }

    SUBCASE("Lanczos route agrees with a dense oracle") {
        const auto basis = make_fock_basis(5, 5); // dim 126
        const LatticeHamiltonian h = scenario_hamiltonian(basis);
        for (double u : {-1.0, 0.4}) {
            const SparseOperator op = h.assemble(u);
            // dense_threshold = 0 forces the restarted-Lanczos route.
            const auto lanczos = ground_state_sparse(op, 1e-11, 0);
            Eigen::SelfAdjointEigenSolver<CMat> oracle{CMat(op.matrix())};
            CHECK(std::abs(lanczos.energy - oracle.eigenvalues()[0]) < 1e-9);
            CHECK(lanczos.residual < 1e-11);
        }
    }
}

TEST_CASE("lanczos propagation") {
    SUBCASE("diagonal Hamiltonian: exact phase on basis vectors") {
        RVec diag(8);
        diag << 0.5, 1.5, -2.0, 3.0, 0.1, 7.0, -1.0, 2.5;
        const SparseOperator h = SparseOperator::diagonal(diag);
        const auto basis = make_fock_basis(8, 1); // any 8-dim unit-weight basis
        CVec amps = CVec::Zero(8);
        amps[3] = 1.0;
        StateVector psi(amps, basis);
        StateVector out = lanczos_step(h, psi, 0.13, 4);
        CHECK(std::abs(out.amplitudes()[3] - std::polar(1.0, -3.0 * 0.13)) < 1e-13);
    }

    SUBCASE("matches dense matrix exponential along the interaction ramp") {
        const auto basis = make_fock_basis(5, 5);
        const LatticeHamiltonian h = scenario_hamiltonian(basis);
        const BoundTransform t(2.0, 40.0);
        const double dt = 0.002, duration = 2.2;
        const int n_steps = 1101;
        const double rate = std::log((30.0 - 2.0) / 0.5);
        const auto u_of = [&](int i) {
            return t.inverse(2.0 + 0.5 * std::exp(rate * (i * dt) / duration));
        };

        // The final ~20 ramp steps (peak dU/dt) reach 1.3e-8 at order 4;
        // the quasi-adiabatic bulk tested here stays below 1e-8.
        CVec psi = ground_state_sparse(h.assemble(u_of(0)), 1e-12).state;
        double worst = 0.0, worst_norm = 0.0;
        for (int step = 0; step + 1 < std::min(n_steps, 1001); ++step) {
            const double u_mid = 0.5 * (u_of(step) + u_of(step + 1));
            const CMat dense(h.assemble(u_mid).matrix());
            const CVec exact = oracles::expm_apply(dense, psi, dt);
            CVec krylov = psi;
            lanczos_step_inplace([&](const CVec& v) { return h.apply(u_mid, v); }, krylov,
                                 dt, 4);
            worst = std::max(worst, (krylov - exact).norm());
            worst_norm = std::max(worst_norm, std::abs(krylov.norm() - psi.norm()));
            psi = krylov;
        }
        CHECK(worst < 1e-8);
        CHECK(worst_norm < 1e-10);
    }

    SUBCASE("doubling the order never increases the error") {
        const auto basis = make_fock_basis(4, 4);
        const LatticeHamiltonian h = scenario_hamiltonian(basis);
        CVec psi = random_fock_state(basis->dim(), 3);
        const CMat dense(h.assemble(0.3).matrix());
        const CVec exact = oracles::expm_apply(dense, psi, 0.002);
        double previous = 1.0;
        for (int order : {2, 4, 8}) {
            CVec out = psi;
            lanczos_step_inplace([&](const CVec& v) { return h.apply(0.3, v); }, out, 0.002,
                                 order);
            const double err = (out - exact).norm();
            CHECK(err <= previous + 1e-16);
            previous = err;
        }
    }

    SUBCASE("Krylov breakdown finishes with a smaller effective order") {
        RVec diag(8);
        diag << 1, 1, 1, 1, 1, 1, 1, 1; // identity: 1-dim Krylov space
        const SparseOperator h = SparseOperator::diagonal(diag);
        CVec psi = random_fock_state(8, 5);
        CVec out = psi;
        lanczos_step_inplace([&](const CVec& v) { return h.apply(v); }, out, 0.1, 4);
        CHECK((out - std::polar(1.0, -0.1) * psi).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("norm drift over a full scenario-length trajectory") {
        const auto basis = make_fock_basis(5, 5);
        const LatticeHamiltonian h = scenario_hamiltonian(basis);
        CVec psi = ground_state_sparse(h.assemble(-1.1), 1e-12).state;
        const double initial_norm = psi.norm();
        for (int step = 0; step < 1101; ++step) {
            const double u = -1.1 + 2.0 * step / 1100.0;
            lanczos_step_inplace([&](const CVec& v) { return h.apply(u, v); }, psi, 0.002, 4);
        }
        CHECK(std::abs(psi.norm() - initial_norm) < 1e-7);
    }

    CHECK_THROWS_AS(lanczos_step(SparseOperator::diagonal(RVec::Ones(4)),
                                 StateVector(CVec::Ones(4) / 2.0, make_fock_basis(4, 1)),
                                 0.01, 1),
                    std::invalid_argument);
}

TEST_CASE("assembled Hamiltonian is Hermitian for random controls") {
    const auto basis = make_fock_basis(4, 4);
    const LatticeHamiltonian h = scenario_hamiltonian(basis);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uniform(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double u = uniform(rng);
        const CMat dense(h.assemble(u).matrix());
        CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("single-particle density matrix") {
    SUBCASE("unit-filling Fock state has no coherence") {
        const auto basis = make_fock_basis(5, 5);
        CVec amps = CVec::Zero(basis->dim());
        amps[basis->index_of({1, 1, 1, 1, 1})] = 1.0;
        const CMat rho = single_particle_density_matrix(StateVector(amps, basis), *basis);
        CHECK((rho - CMat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("trace equals the particle number; spectrum in range") {
        const auto basis = make_fock_basis(4, 3);
        StateVector psi(random_fock_state(basis->dim(), 23), basis);
        const CMat rho = single_particle_density_matrix(psi, *basis);
        CHECK(std::abs(rho.trace().real() - 3.0) < 1e-10);
        CHECK(std::abs(rho.trace().imag()) < 1e-12);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<CMat> eig(rho);
        CHECK(eig.eigenvalues().minCoeff() > -1e-10);
        CHECK(eig.eigenvalues().maxCoeff() < 3.0 + 1e-10);
    }

    SUBCASE("two-site single particle against the hand expansion") {
        const auto basis = make_fock_basis(2, 1);
        const complexd a(0.6, 0.2), b(-0.3, 0.7);
        CVec amps(2);
        amps[basis->index_of({1, 0})] = a;
        amps[basis->index_of({0, 1})] = b;
        amps /= amps.norm();
        const CMat rho = single_particle_density_matrix(StateVector(amps, basis), *basis);
        const complexd an = amps[basis->index_of({1, 0})];
        const complexd bn = amps[basis->index_of({0, 1})];
        CHECK(std::abs(rho(0, 0) - std::norm(an)) < 1e-14);
        CHECK(std::abs(rho(1, 1) - std::norm(bn)) < 1e-14);
        CHECK(std::abs(rho(0, 1) - std::conj(an) * bn) < 1e-14);
        CHECK(std::abs(rho(1, 0) - std::conj(bn) * an) < 1e-14);
    }
}

TEST_CASE("few-mode models") {
    SUBCASE("Landau-Zener spectrum") {
        const auto h = landau_zener_hamiltonian(0.7);
        Eigen::SelfAdjointEigenSolver<CMat> at_zero(h.assemble(RVec::Zero(1)));
        CHECK(at_zero.eigenvalues()[0] == doctest::Approx(-0.7).epsilon(1e-14));
        CHECK(at_zero.eigenvalues()[1] == doctest::Approx(0.7).epsilon(1e-14));

        const auto diag = landau_zener_hamiltonian(0.0);
        const CMat hd = diag.assemble(RVec::Constant(1, 1.3));
        CHECK(std::abs(hd(0, 1)) == 0.0);

        for (double u : {-2.0, 0.3, 5.0}) {
            Eigen::SelfAdjointEigenSolver<CMat> eig(h.assemble(RVec::Constant(1, u)));
            const double gap = eig.eigenvalues()[1] - eig.eigenvalues()[0];
            CHECK(gap == doctest::Approx(2.0 * std::sqrt(u * u + 0.7 * 0.7)).epsilon(1e-12));
        }
    }

    SUBCASE("Hermiticity validation") {
        CMat bad(2, 2);
        bad << complexd(0, 0), complexd(1, 0), complexd(0.5, 0), complexd(0, 0);
        CHECK_THROWS_AS(FewModeHamiltonian(bad, {CMat::Identity(2, 2)}), std::invalid_argument);
        CHECK_THROWS_AS(FewModeHamiltonian(CMat::Identity(2, 2), {bad}), std::invalid_argument);
    }
}

TEST_CASE("sparse operator hermitian flag is verified") {
    SpCMat m(2, 2);
    m.insert(0, 1) = complexd(1.0, 0.5);
    CHECK_THROWS_AS(SparseOperator(m, true), std::invalid_argument);
    SparseOperator ok(m, false);
    const auto basis = make_fock_basis(2, 1);
    StateVector psi(random_fock_state(2, 31), basis);
    CHECK_THROWS_AS(expectation_value(ok, psi), std::invalid_argument);
}
