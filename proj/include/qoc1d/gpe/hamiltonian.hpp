#pragma once

#include <memory>
#include <optional>

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/operators.hpp"
#include "qoc1d/gpe/potential.hpp"

namespace qoc1d::gpe {

/// H(u)[psi] = -kappa d^2/dx^2 + V(x,u) + beta |psi|^2. With beta = 0 this
/// is a plain single-particle Hamiltonian.
class GpeHamiltonian {
public:
    GpeHamiltonian(std::shared_ptr<const SpatialGrid> grid, double kin_factor,
                   PotentialFunction potential, double beta);

    const SpatialGrid& grid() const { return *grid_; }
    std::shared_ptr<const SpatialGrid> grid_ptr() const { return grid_; }
    double kin_factor() const { return kin_factor_; }
    double beta() const { return beta_; }
    const PotentialFunction& potential() const { return potential_; }

    RVec potential_values(double u) const { return potential_(u); }

    /// dV/du values: analytic if supplied, otherwise central finite
    /// differences with du = 1e-6 * max(1, |u|).
    RVec potential_derivative_values(double u) const;

    void set_analytic_derivative(PotentialFunction dVdu) { dpotential_ = std::move(dVdu); }
    bool has_analytic_derivative() const { return dpotential_.has_value(); }

    BandedKineticOperator banded_kinetic() const {
        return BandedKineticOperator(kin_factor_, *grid_);
    }

private:
    std::shared_ptr<const SpatialGrid> grid_;
    double kin_factor_;
    PotentialFunction potential_;
    std::optional<PotentialFunction> dpotential_;
    double beta_;
};

} // namespace qoc1d::gpe
