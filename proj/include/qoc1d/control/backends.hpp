#pragma once

#include <memory>

#include "qoc1d/control/problem.hpp"
#include "qoc1d/gpe/hamiltonian.hpp"
#include "qoc1d/lattice/hamiltonian.hpp"
#include "qoc1d/pair/hamiltonian.hpp"

namespace qoc1d::ctrl {

/// GPE / single-particle backend: split-step propagation, adjoint with the
/// conjugate-coupling local blocks when beta > 0.
class GpeDynamics final : public Dynamics {
public:
    explicit GpeDynamics(gpe::GpeHamiltonian hamiltonian);

    std::shared_ptr<const Basis> basis() const override;
    int n_fields() const override { return 1; }
    void step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const override;
    void adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                      const RVec& u_now, const RVec& u_next, double dt) const override;
    CVec apply_dhdu(const RVec& u, const CVec& psi, int field) const override;

    const gpe::GpeHamiltonian& hamiltonian() const { return h_; }

private:
    gpe::GpeHamiltonian h_;
};

/// Two-particle backend; the dynamics is linear, the adjoint step is the
/// exact inverse of the forward step.
class PairDynamics final : public Dynamics {
public:
    explicit PairDynamics(pair::TwoParticleHamiltonian hamiltonian);

    std::shared_ptr<const Basis> basis() const override;
    int n_fields() const override { return 1; }
    void step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const override;
    void adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                      const RVec& u_now, const RVec& u_next, double dt) const override;
    CVec apply_dhdu(const RVec& u, const CVec& psi, int field) const override;

    const pair::TwoParticleHamiltonian& hamiltonian() const { return h_; }

private:
    pair::TwoParticleHamiltonian h_;
};

/// Bose-Hubbard backend: Lanczos stepping at the midpoint control.
class LatticeDynamics final : public Dynamics {
public:
    LatticeDynamics(lattice::LatticeHamiltonian hamiltonian, int krylov_order);

    std::shared_ptr<const Basis> basis() const override;
    int n_fields() const override { return 1; }
    void step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const override;
    void adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                      const RVec& u_now, const RVec& u_next, double dt) const override;
    CVec apply_dhdu(const RVec& u, const CVec& psi, int field) const override;

    const lattice::LatticeHamiltonian& hamiltonian() const { return h_; }
    int krylov_order() const { return krylov_order_; }

private:
    lattice::LatticeHamiltonian h_;
    int krylov_order_;
};

/// Dense few-mode backend: exact matrix exponentials per step.
class FewModeDynamics final : public Dynamics {
public:
    explicit FewModeDynamics(lattice::FewModeHamiltonian hamiltonian);

    std::shared_ptr<const Basis> basis() const override;
    int n_fields() const override { return h_.n_fields(); }
    void step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const override;
    void adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                      const RVec& u_now, const RVec& u_next, double dt) const override;
    CVec apply_dhdu(const RVec& u, const CVec& psi, int field) const override;

    const lattice::FewModeHamiltonian& hamiltonian() const { return h_; }

private:
    lattice::FewModeHamiltonian h_;
    std::shared_ptr<const FewModeBasis> basis_;
};

} // namespace qoc1d::ctrl
