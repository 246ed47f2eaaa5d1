#pragma once

#include <functional>

#include "qoc1d/core/state.hpp"
#include "qoc1d/lattice/hamiltonian.hpp"
#include "qoc1d/lattice/operators.hpp"

namespace qoc1d::lattice {

using Matvec = std::function<CVec(const CVec&)>;

/// psi <- V exp(-i T_k dt) e_1 ||psi||, T_k the order-k Lanczos projection
/// of the (Hermitian) operator, with full reorthogonalization. Krylov
/// breakdown finishes with a smaller effective order.
void lanczos_step_inplace(const Matvec& matvec, CVec& psi, double dt, int krylov_order);

StateVector lanczos_step(const SparseOperator& h, const StateVector& psi,
                         double dt, int krylov_order);
StateVector lanczos_step(const LatticeHamiltonian& h, double u, const StateVector& psi,
                         double dt, int krylov_order);

struct SparseEigResult {
    double energy;
    CVec state;
    double residual;
    int iterations;
};

/// Restarted Lanczos (full reorthogonalization) for the lowest eigenpair of
/// a Hermitian operator given as a matvec closure; converged when
/// ||H psi - E psi|| < tol.
SparseEigResult lowest_eigenpair(const Matvec& matvec, Eigen::Index dim, double tol,
                                 const CVec* seed = nullptr, int block_size = 40,
                                 int max_restarts = 500);

/// Lowest eigenpair: dense diagonalization below dense_threshold, otherwise
/// restarted Lanczos with full reorthogonalization.
SparseEigResult ground_state_sparse(const SparseOperator& h, double tol,
                                    Eigen::Index dense_threshold = 512);

} // namespace qoc1d::lattice
