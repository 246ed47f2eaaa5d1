#include "qoc1d/gpe/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::gpe {

GpeHamiltonian::GpeHamiltonian(std::shared_ptr<const SpatialGrid> grid, double kin_factor,
                               PotentialFunction potential, double beta)
    : grid_(std::move(grid)), kin_factor_(kin_factor),
      potential_(std::move(potential)), beta_(beta) {
    if (!grid_)
        throw std::invalid_argument("GpeHamiltonian: null grid");
    if (!potential_)
        throw std::invalid_argument("GpeHamiltonian: missing potential function");
    if (beta_ < 0.0)
        throw std::invalid_argument("GpeHamiltonian: beta must be non-negative");
    if (potential_(potential_.initial_control()).size() != grid_->n())
        throw std::invalid_argument("GpeHamiltonian: potential does not match grid size");
}

RVec GpeHamiltonian::potential_derivative_values(double u) const {
    if (dpotential_)
        return (*dpotential_)(u);
    const double du = 1e-6 * std::max(1.0, std::abs(u));
    return (potential_(u + du) - potential_(u - du)) / (2.0 * du);
}

} // namespace qoc1d::gpe
