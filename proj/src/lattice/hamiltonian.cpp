#include "qoc1d/lattice/hamiltonian.hpp"

#include <stdexcept>

namespace qoc1d::lattice {

LatticeHamiltonian::LatticeHamiltonian(std::shared_ptr<const FockBasis> basis,
                                       SparseOperator h_const, SparseOperator onsite,
                                       std::function<double(double)> u_map,
                                       std::function<double(double)> u_map_derivative)
    : basis_(std::move(basis)), h_const_(std::move(h_const)),
      u_map_(std::move(u_map)), du_map_(std::move(u_map_derivative)) {
    if (!basis_)
        throw std::invalid_argument("LatticeHamiltonian: null basis");
    if (h_const_.dim() != basis_->dim() || onsite.dim() != basis_->dim())
        throw std::invalid_argument("LatticeHamiltonian: operator dimensions do not match basis");
    if (!h_const_.is_hermitian())
        throw std::invalid_argument("LatticeHamiltonian: constant part must be Hermitian");
    if (!u_map_ || !du_map_)
        throw std::invalid_argument("LatticeHamiltonian: missing control map");
    onsite_diag_ = onsite.matrix().diagonal().real();
}

CVec LatticeHamiltonian::apply(double u, const CVec& v) const {
    CVec out = h_const_.apply(v);
    out.array() += (0.5 * u_map_(u)) * onsite_diag_.array() * v.array();
    return out;
}

CVec LatticeHamiltonian::apply_dhdu(double u, const CVec& v) const {
    return (0.5 * du_map_(u)) * (onsite_diag_.array() * v.array()).matrix();
}

SparseOperator LatticeHamiltonian::assemble(double u) const {
    SpCMat m = h_const_.matrix();
    const double scale = 0.5 * u_map_(u);
    SpCMat diag(dim(), dim());
    diag.reserve(Eigen::VectorXi::Constant(dim(), 1));
    for (Eigen::Index i = 0; i < dim(); ++i)
        diag.insert(i, i) = scale * onsite_diag_[i];
    m = m + diag;
    return SparseOperator(std::move(m), true);
}

LatticeHamiltonian make_bose_hubbard(std::shared_ptr<const FockBasis> basis,
                                     double j_hopping, const RVec& site_potential,
                                     const BoundTransform& transform, bool periodic) {
    SparseOperator hop = hopping_operator(*basis, periodic);
    SparseOperator pot = site_potential_operator(*basis, site_potential);
    SpCMat h_const = -j_hopping * hop.matrix() + pot.matrix();
    BoundTransform t = transform;
    return LatticeHamiltonian(basis, SparseOperator(std::move(h_const), true),
                              onsite_operator(*basis),
                              [t](double u) { return t(u); },
                              [t](double u) { return t.derivative(u); });
}

FewModeHamiltonian::FewModeHamiltonian(CMat h0, std::vector<CMat> controls)
    : h0_(std::move(h0)), controls_(std::move(controls)) {
    if (h0_.rows() != h0_.cols())
        throw std::invalid_argument("FewModeHamiltonian: H0 must be square");
    if ((h0_ - h0_.adjoint()).cwiseAbs().maxCoeff() > 1e-13)
        throw std::invalid_argument("FewModeHamiltonian: H0 must be Hermitian");
    if (controls_.empty())
        throw std::invalid_argument("FewModeHamiltonian: need at least one control operator");
    for (const auto& hc : controls_) {
        if (hc.rows() != h0_.rows() || hc.cols() != h0_.cols())
            throw std::invalid_argument("FewModeHamiltonian: control operator dimension mismatch");
        if ((hc - hc.adjoint()).cwiseAbs().maxCoeff() > 1e-13)
            throw std::invalid_argument("FewModeHamiltonian: control operators must be Hermitian");
    }
}

CMat FewModeHamiltonian::assemble(const RVec& u) const {
    if (u.size() != n_fields())
        throw std::invalid_argument("FewModeHamiltonian: control vector size mismatch");
    CMat h = h0_;
    for (int f = 0; f < n_fields(); ++f)
        h += u[f] * controls_[f];
    return h;
}

FewModeHamiltonian landau_zener_hamiltonian(double delta) {
    CMat sigma_z(2, 2), sigma_x(2, 2);
    sigma_z << 1.0, 0.0, 0.0, -1.0;
    sigma_x << 0.0, 1.0, 1.0, 0.0;
    return FewModeHamiltonian(delta * sigma_x, {sigma_z});
}

} // namespace qoc1d::lattice
