#pragma once

#include "qoc1d/core/state.hpp"
#include "qoc1d/core/types.hpp"
#include "qoc1d/lattice/fock_basis.hpp"

namespace qoc1d::lattice {

/// Sparse operator on a Fock (or other unit-weight) basis.
class SparseOperator {
public:
    SparseOperator(SpCMat matrix, bool hermitian);

    Eigen::Index dim() const { return mat_.rows(); }
    bool is_hermitian() const { return hermitian_; }
    const SpCMat& matrix() const { return mat_; }

    CVec apply(const CVec& v) const;

    static SparseOperator diagonal(const RVec& values);

private:
    SpCMat mat_;
    bool hermitian_;
};

/// sum_{i=1}^{L-1} (adag_{i+1} a_i + h.c.), plus the wrap bond if periodic.
SparseOperator hopping_operator(const FockBasis& basis, bool periodic);

/// Diagonal of sum_i n_i (n_i - 1).
SparseOperator onsite_operator(const FockBasis& basis);

/// Diagonal of sum_i V_i n_i.
SparseOperator site_potential_operator(const FockBasis& basis, const RVec& v);

/// Diagonal of n_site.
SparseOperator number_operator(const FockBasis& basis, int site);

double expectation_value(const SparseOperator& op, const StateVector& psi);

/// U(u) = A (tanh u + B) maps the unbounded control onto (U_min, U_max);
/// A = U_max/(1+B), B = (1 + U_min/U_max)/(1 - U_min/U_max).
struct BoundTransform {
    BoundTransform(double u_min, double u_max);

    double operator()(double u) const;
    double inverse(double physical) const;
    double derivative(double u) const; // dU/du = A (1 - tanh^2 u)

    double u_min, u_max, a, b;
};

double bound_transform(double u, double u_min, double u_max);
double bound_transform_inverse(double physical, double u_min, double u_max);

/// rho1[i][j] = <psi| adag_i a_j |psi>; Hermitian, trace N.
CMat single_particle_density_matrix(const StateVector& psi, const FockBasis& basis);

} // namespace qoc1d::lattice
