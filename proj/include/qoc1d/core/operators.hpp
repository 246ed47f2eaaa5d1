#pragma once

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/state.hpp"
#include "qoc1d/core/types.hpp"

namespace qoc1d {

/// A potential (or any multiplication operator) evaluated pointwise.
class DiagonalOperator {
public:
    explicit DiagonalOperator(RVec values);

    const RVec& values() const { return values_; }
    Eigen::Index dim() const { return values_.size(); }

    CVec apply(const CVec& v) const;

private:
    RVec values_;
};

/// T = -kin_factor * d^2/dx^2 as a symmetric 5-diagonal stencil, 4th order
/// in the interior; boundary rows are the symmetric truncation of the
/// interior stencil (non-periodic, zero extension).
class BandedKineticOperator {
public:
    BandedKineticOperator(double kin_factor, const SpatialGrid& grid);

    double kin_factor() const { return kin_factor_; }
    Eigen::Index dim() const { return n_; }

    CVec apply(const CVec& v) const;
    RVec apply(const RVec& v) const;

    /// Dense matrix; used by stationary-state solvers.
    RMat dense() const;

private:
    double kin_factor_;
    int n_;
    double dx_;
    double c0_, c1_, c2_; // stencil coefficients: c2 v[i-2] + c1 v[i-1] + c0 v[i] + ...
};

double expectation_value(const DiagonalOperator& op, const StateVector& psi);
double expectation_value(const BandedKineticOperator& op, const StateVector& psi);

/// Real expectation of a generic applied operator; checks the imaginary
/// residue and Hermiticity is the caller's responsibility.
double real_expectation(const CVec& applied, const StateVector& psi);

/// Spectral action of -kappa d^2/dx^2: IFFT(kappa k^2 FFT(psi)).
StateVector apply_kinetic_spectral(const StateVector& psi, double kappa);
CVec apply_kinetic_spectral(const CVec& amps, const SpatialGrid& grid, double kappa);

} // namespace qoc1d
