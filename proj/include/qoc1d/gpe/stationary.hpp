#pragma once

#include "qoc1d/core/state.hpp"
#include "qoc1d/gpe/hamiltonian.hpp"

namespace qoc1d::gpe {

struct StationaryResult {
    StateVector state;
    double energy;             // E = <T+V> + beta/2 * integral |psi|^4
    double chemical_potential; // mu = <T+V> + beta * integral |psi|^4
    double residual;           // ||(H[psi] - mu) psi||
    int iterations;
};

/// Self-consistent ground state via damped density mixing; each sweep
/// diagonalizes T_banded + V + beta*rho densely. Converged when the energy
/// change per iteration is below tol and the residual below 100*tol.
StationaryResult ground_state_info(const GpeHamiltonian& h, double u, double tol,
                                   int max_iterations = 2000);
StateVector ground_state(const GpeHamiltonian& h, double u, double tol);

/// First excited stationary state: same sweep on the second eigenvector
/// with Gram-Schmidt projection against the converged ground state.
StationaryResult first_excited_state_info(const GpeHamiltonian& h, double u, double tol,
                                          int max_iterations = 2000);
StateVector first_excited_state(const GpeHamiltonian& h, double u, double tol);

/// index 0 = ground, 1 = first excited; anything higher is rejected.
StateVector stationary_state(const GpeHamiltonian& h, double u, int index, double tol);

} // namespace qoc1d::gpe
