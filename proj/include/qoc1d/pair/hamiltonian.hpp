#pragma once

#include <memory>
#include <optional>

#include "qoc1d/core/operators.hpp"
#include "qoc1d/core/state.hpp"
#include "qoc1d/gpe/potential.hpp"
#include "qoc1d/pair/grid2d.hpp"

namespace qoc1d::pair {

/// Regularized contact interaction g delta(x1-x2): g/dx on the grid
/// diagonal, zero elsewhere, flattened over the 2D grid.
RVec contact_interaction_values(const TensorGrid2D& grid, double g);
DiagonalOperator contact_interaction(const TensorGrid2D& grid, double g);

/// H = -kappa (d^2/dx1^2 + d^2/dx2^2) + V(x1,u) + V(x2,u) + g delta(x1-x2),
/// exchange-symmetric by construction.
class TwoParticleHamiltonian {
public:
    TwoParticleHamiltonian(std::shared_ptr<const TensorGrid2D> grid, double kin_factor,
                           gpe::PotentialFunction trap, double g);

    const TensorGrid2D& grid() const { return *grid_; }
    std::shared_ptr<const TensorGrid2D> grid_ptr() const { return grid_; }
    double kin_factor() const { return kin_factor_; }
    double g() const { return g_; }
    const gpe::PotentialFunction& trap() const { return trap_; }

    /// V(x1,u) + V(x2,u) + interaction, flattened.
    RVec potential_values(double u) const;
    /// d/du of the trap part, flattened (interaction is control-independent).
    RVec potential_derivative_values(double u) const;

    void set_analytic_derivative(gpe::PotentialFunction dtrap) { dtrap_ = std::move(dtrap); }

    const RVec& interaction() const { return interaction_; }

private:
    std::shared_ptr<const TensorGrid2D> grid_;
    double kin_factor_;
    gpe::PotentialFunction trap_;
    std::optional<gpe::PotentialFunction> dtrap_;
    double g_;
    RVec interaction_;

    RVec trap_derivative_1d(double u) const;
};

/// One Strang split step with 2D spectral kinetic action and midpoint
/// potential + interaction kicks.
void split_step_2d_inplace(CVec& psi, const TwoParticleHamiltonian& h,
                           double u_now, double u_next, double dt);
StateVector split_step_2d(const StateVector& psi, const TwoParticleHamiltonian& h,
                          double u_now, double u_next, double dt);

/// Backward step chi(t+dt) -> chi(t); the dynamics is linear, so this is
/// the exact inverse of the forward step.
void adjoint_step_2d_inplace(CVec& chi, const TwoParticleHamiltonian& h,
                             double u_now, double u_next, double dt);

struct Stationary2DResult {
    StateVector state;
    double energy;
    double residual;
    int iterations;
};

/// Lowest stationary state via imaginary-time split stepping with
/// renormalization; converged when the energy change per sweep is below tol
/// and the residual ||(H-mu)psi|| below 100*tol.
Stationary2DResult ground_state_2d_info(const TwoParticleHamiltonian& h, double u, double tol,
                                        int max_iterations = 20000);
StateVector ground_state_2d(const TwoParticleHamiltonian& h, double u, double tol);

} // namespace qoc1d::pair
