#pragma once

#include <memory>

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/types.hpp"

namespace qoc1d {

/// Complex amplitude vector over a grid or Fock basis. Physical states are
/// unit-norm by convention; adjoint/costate vectors are not.
class StateVector {
public:
    StateVector(CVec amplitudes, std::shared_ptr<const Basis> basis);

    const CVec& amplitudes() const { return amps_; }
    CVec& amplitudes() { return amps_; }

    const Basis& basis() const { return *basis_; }
    std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
    BasisTag tag() const { return basis_->tag(); }
    Eigen::Index dim() const { return amps_.size(); }
    double weight() const { return basis_->quadrature_weight(); }

    double norm_sq() const;
    double norm() const;
    void normalize();

private:
    CVec amps_;
    std::shared_ptr<const Basis> basis_;
};

/// <a|b> with the basis quadrature weight; conjugates the first argument.
complexd overlap(const StateVector& a, const StateVector& b);

/// F = |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

} // namespace qoc1d
