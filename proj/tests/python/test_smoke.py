"""Smoke tests for the python bindings: one touch point per subsystem."""

import json
import math

import numpy as np
import pytest

import qoc1d


def test_version():
    assert qoc1d.__version__


def test_grid_and_states():
    grid = qoc1d.make_spatial_grid(-2.0, 2.0, 64)
    assert grid.n == 64
    assert grid.dx == pytest.approx(4.0 / 63)
    assert grid.k[0] == 0.0

    amps = np.exp(-grid.x**2).astype(complex)
    psi = qoc1d.StateVector(amps, grid).normalized()
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    assert qoc1d.fidelity(psi, psi) == pytest.approx(1.0, abs=1e-12)
    assert qoc1d.overlap(psi, psi).real == pytest.approx(1.0, abs=1e-12)


def test_gpe_ground_state_harmonic_energy():
    # V = 2 x^2 with kappa = 1/2: analytic ground state exp(-x^2) up to norm.
    grid = qoc1d.make_spatial_grid(-8.0, 8.0, 256)
    pot = qoc1d.make_anharmonic_potential(grid, p2=2.0, p4=0.0, p6=0.0)
    h = qoc1d.GpeHamiltonian(grid, kin_factor=0.5, potential=pot, beta=0.0)
    psi = qoc1d.ground_state(h, u=0.0, tol=1e-12)
    exact = np.exp(-grid.x**2).astype(complex)
    exact_sv = qoc1d.StateVector(exact, grid).normalized()
    assert qoc1d.fidelity(psi, exact_sv) > 1 - 1e-8

    evolved = qoc1d.split_step(psi, h, 0.0, 0.0, 0.002)
    assert qoc1d.fidelity(evolved, psi) > 1 - 1e-10


def test_fock_basis_and_bound_transform():
    basis = qoc1d.make_fock_basis(5, 5)
    assert basis.dim == 126
    assert qoc1d.fock_dimension(5, 5) == 126
    assert basis.state(0) == [5, 0, 0, 0, 0]

    transform = qoc1d.BoundTransform(2.0, 40.0)
    assert transform(0.0) == pytest.approx(21.0)
    assert transform.inverse(transform(0.3)) == pytest.approx(0.3)

    hop = qoc1d.hopping_operator(basis, periodic=False)
    dense = hop.to_dense()
    assert np.allclose(dense, dense.conj().T)

    bh = qoc1d.make_bose_hubbard(basis, 1.0, 0.1 * np.linspace(-1, 1, 5) ** 2, transform)
    energy, state, residual = qoc1d.ground_state_sparse(bh.assemble(transform.inverse(30.0)))
    assert residual < 1e-8
    psi = qoc1d.StateVector(state, basis)
    rho = qoc1d.single_particle_density_matrix(psi, basis)
    assert np.trace(rho).real == pytest.approx(5.0, abs=1e-9)


def test_two_particle_ground_state():
    axis = qoc1d.make_spatial_grid(-2.0, 2.0, 24)
    grid = qoc1d.make_tensor_grid(axis)
    trap = qoc1d.make_anharmonic_potential(axis, p2=30.0, p4=0.0, p6=0.0)
    h = qoc1d.TwoParticleHamiltonian(grid, 0.36537, trap, g=1.0)
    psi = qoc1d.ground_state_2d(h, u=0.0, tol=1e-8)
    assert psi.norm() == pytest.approx(1.0, abs=1e-10)
    # exchange symmetry
    a = psi.amplitudes.reshape(24, 24)
    assert np.max(np.abs(a - a.T)) < 1e-8


def test_landau_zener_optimization():
    h = qoc1d.landau_zener_hamiltonian(1.0)
    dyn = qoc1d.few_mode_dynamics(h)

    _, v0 = np.linalg.eigh(h.assemble(np.array([-5.0])))
    _, vT = np.linalg.eigh(h.assemble(np.array([5.0])))

    n_steps, dt = 501, 0.004
    control = qoc1d.ControlField(np.linspace(-5.0, 5.0, n_steps), dt)

    psi0 = qoc1d.few_mode_state(v0[:, 0].astype(complex))
    psit = qoc1d.few_mode_state(vT[:, 0].astype(complex))

    problem = qoc1d.StateTransferProblem(dyn, psi0, psit, control)
    f_before = problem.fidelity()
    result = qoc1d.optimize(problem, fidelity_target=0.99, max_iterations=300)
    assert result.final_fidelity > 0.99
    assert result.final_fidelity > f_before
    assert len(result.fidelity_history) == result.iterations + 1
    assert result.final_fidelity == pytest.approx(max(result.fidelity_history))


def test_group_problem_roundtrip():
    h = qoc1d.landau_zener_hamiltonian(1.0)
    dyn = qoc1d.few_mode_dynamics(h)
    _, v0 = np.linalg.eigh(h.assemble(np.array([-5.0])))
    _, vT = np.linalg.eigh(h.assemble(np.array([5.0])))
    psi0 = qoc1d.few_mode_state(v0[:, 0].astype(complex))
    psit = qoc1d.few_mode_state(vT[:, 0].astype(complex))

    n_steps, dt = 501, 0.004
    control = qoc1d.ControlField(np.linspace(-5.0, 5.0, n_steps), dt)
    problem = qoc1d.StateTransferProblem(dyn, psi0, psit, control)

    group = qoc1d.make_group_problem(problem, basis_size=10, max_rand=0.1, seed=7)
    result = qoc1d.optimize_group(group, dressed=True, fidelity_target=0.98,
                                  max_iterations=200)
    assert result.final_fidelity > 0.9
    # control endpoints are pinned by the shape function
    values = problem.control_values()
    assert values[0, 0] == -5.0
    assert values[-1, 0] == 5.0


def test_scenarios(tmp_path):
    ids = qoc1d.list_scenarios()
    assert "gpe-shakeup" in ids and len(ids) == 5

    defaults = qoc1d.scenario_defaults("twolevel-landau-zener")
    assert defaults["dt"] == 0.002

    summary = qoc1d.run_scenario(
        {"scenario": "twolevel-landau-zener", "seed": 11}, out_dir=tmp_path
    )
    assert summary["final_fidelity"] > 0.99
    result = json.loads((tmp_path / "twolevel-landau-zener.json").read_text())
    assert result["format_version"] == 1
    assert result["seed"] == 11
    assert len(result["fidelity_history"]) == result["iterations"] + 1


def test_config_errors():
    with pytest.raises(qoc1d.ConfigurationError):
        qoc1d.run_scenario({"scenario": "no-such-scenario"}, out_dir="/tmp/qoc1d_nope")
