#pragma once

#include <functional>
#include <memory>

#include "qoc1d/lattice/operators.hpp"

namespace qoc1d::lattice {

/// H(u) = H_const + 0.5 * U(u) * sum_i n_i(n_i-1), with
/// H_const = -J * hopping + sum_i V_i n_i and U a scalar control map.
class LatticeHamiltonian {
public:
    LatticeHamiltonian(std::shared_ptr<const FockBasis> basis,
                       SparseOperator h_const, SparseOperator onsite,
                       std::function<double(double)> u_map,
                       std::function<double(double)> u_map_derivative);

    const FockBasis& basis() const { return *basis_; }
    std::shared_ptr<const FockBasis> basis_ptr() const { return basis_; }
    Eigen::Index dim() const { return basis_->dim(); }

    CVec apply(double u, const CVec& v) const;
    CVec apply_dhdu(double u, const CVec& v) const;

    double interaction_strength(double u) const { return u_map_(u); }

    /// Assembled H(u) for exact diagonalization.
    SparseOperator assemble(double u) const;

private:
    std::shared_ptr<const FockBasis> basis_;
    SparseOperator h_const_;
    RVec onsite_diag_;
    std::function<double(double)> u_map_, du_map_;
};

/// Standard Bose-Hubbard assembly: J, site potential V_i, bound-transformed
/// interaction U(u) in (u_min, u_max).
LatticeHamiltonian make_bose_hubbard(std::shared_ptr<const FockBasis> basis,
                                     double j_hopping, const RVec& site_potential,
                                     const BoundTransform& transform, bool periodic);

/// Dense few-mode model H(u) = H0 + sum_f u_f * Hc_f.
class FewModeHamiltonian {
public:
    FewModeHamiltonian(CMat h0, std::vector<CMat> controls);

    Eigen::Index dim() const { return h0_.rows(); }
    int n_fields() const { return static_cast<int>(controls_.size()); }

    CMat assemble(const RVec& u) const;
    const CMat& h0() const { return h0_; }
    const CMat& control_operator(int field) const { return controls_[field]; }

private:
    CMat h0_;
    std::vector<CMat> controls_;
};

/// H(u) = u sigma_z + delta sigma_x.
FewModeHamiltonian landau_zener_hamiltonian(double delta);

} // namespace qoc1d::lattice
