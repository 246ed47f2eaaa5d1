#include "qoc1d/control/backends.hpp"

#include <Eigen/Eigenvalues>

#include "qoc1d/gpe/split_step.hpp"
#include "qoc1d/lattice/lanczos.hpp"

namespace qoc1d::ctrl {

GpeDynamics::GpeDynamics(gpe::GpeHamiltonian hamiltonian) : h_(std::move(hamiltonian)) {}

std::shared_ptr<const Basis> GpeDynamics::basis() const { return h_.grid_ptr(); }

void GpeDynamics::step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const {
    gpe::split_step_inplace(psi, h_, u_now[0], u_next[0], dt);
}

void GpeDynamics::adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                               const RVec& u_now, const RVec& u_next, double dt) const {
    gpe::adjoint_step_inplace(chi, h_, psi_now, psi_next, u_now[0], u_next[0], dt);
}

CVec GpeDynamics::apply_dhdu(const RVec& u, const CVec& psi, int) const {
    return (h_.potential_derivative_values(u[0]).array() * psi.array()).matrix();
}

PairDynamics::PairDynamics(pair::TwoParticleHamiltonian hamiltonian) : h_(std::move(hamiltonian)) {}

std::shared_ptr<const Basis> PairDynamics::basis() const { return h_.grid_ptr(); }

void PairDynamics::step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const {
    pair::split_step_2d_inplace(psi, h_, u_now[0], u_next[0], dt);
}

void PairDynamics::adjoint_step(CVec& chi, const CVec&, const CVec&,
                                const RVec& u_now, const RVec& u_next, double dt) const {
    pair::adjoint_step_2d_inplace(chi, h_, u_now[0], u_next[0], dt);
}

CVec PairDynamics::apply_dhdu(const RVec& u, const CVec& psi, int) const {
    return (h_.potential_derivative_values(u[0]).array() * psi.array()).matrix();
}

LatticeDynamics::LatticeDynamics(lattice::LatticeHamiltonian hamiltonian, int krylov_order)
    : h_(std::move(hamiltonian)), krylov_order_(krylov_order) {
    if (krylov_order_ < 2)
        throw std::invalid_argument("LatticeDynamics: krylov_order must be at least 2");
}

std::shared_ptr<const Basis> LatticeDynamics::basis() const { return h_.basis_ptr(); }

void LatticeDynamics::step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const {
    const double u_mid = 0.5 * (u_now[0] + u_next[0]);
    lattice::lanczos_step_inplace([this, u_mid](const CVec& v) { return h_.apply(u_mid, v); },
                                  psi, dt, krylov_order_);
}

void LatticeDynamics::adjoint_step(CVec& chi, const CVec&, const CVec&,
                                   const RVec& u_now, const RVec& u_next, double dt) const {
    const double u_mid = 0.5 * (u_now[0] + u_next[0]);
    lattice::lanczos_step_inplace([this, u_mid](const CVec& v) { return h_.apply(u_mid, v); },
                                  chi, -dt, krylov_order_);
}

CVec LatticeDynamics::apply_dhdu(const RVec& u, const CVec& psi, int) const {
    return h_.apply_dhdu(u[0], psi);
}

FewModeDynamics::FewModeDynamics(lattice::FewModeHamiltonian hamiltonian)
    : h_(std::move(hamiltonian)), basis_(std::make_shared<const FewModeBasis>(h_.dim())) {}

std::shared_ptr<const Basis> FewModeDynamics::basis() const { return basis_; }

namespace {

void expm_step(const lattice::FewModeHamiltonian& h, CVec& psi, const RVec& u_mid, double dt) {
    const CMat ham = h.assemble(u_mid);
    Eigen::SelfAdjointEigenSolver<CMat> solver(ham);
    const RVec& evals = solver.eigenvalues();
    const CMat& evecs = solver.eigenvectors();
    CVec coeffs = evecs.adjoint() * psi;
    for (Eigen::Index a = 0; a < coeffs.size(); ++a)
        coeffs[a] *= std::polar(1.0, -evals[a] * dt);
    psi = evecs * coeffs;
}

} // namespace

void FewModeDynamics::step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const {
    expm_step(h_, psi, 0.5 * (u_now + u_next), dt);
}

void FewModeDynamics::adjoint_step(CVec& chi, const CVec&, const CVec&,
                                   const RVec& u_now, const RVec& u_next, double dt) const {
    expm_step(h_, chi, 0.5 * (u_now + u_next), -dt);
}

CVec FewModeDynamics::apply_dhdu(const RVec&, const CVec& psi, int field) const {
    return h_.control_operator(field) * psi;
}

} // namespace qoc1d::ctrl
