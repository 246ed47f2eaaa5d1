#pragma once

#include "qoc1d/core/state.hpp"
#include "qoc1d/gpe/hamiltonian.hpp"

namespace qoc1d::gpe {

/// One Strang split step psi(t) -> psi(t+dt):
///   exp(-i V1 dt/2) . exp(-i T dt) . exp(-i V2 dt/2)
/// where V1/V2 are the midpoint potential (V(u_now)+V(u_next))/2 plus the
/// nonlinear term evaluated from the pre-step and intermediate densities.
void split_step_inplace(CVec& psi, const GpeHamiltonian& h,
                        double u_now, double u_next, double dt);

StateVector split_step(const StateVector& psi, const GpeHamiltonian& h,
                       double u_now, double u_next, double dt);

/// Backward adjoint step chi(t+dt) -> chi(t) for
///   i chi_dot = (H0(u) + 2 beta |psi|^2) chi + beta psi^2 conj(chi),
/// with psi interpolated at the step midpoint from the forward trajectory.
/// The conjugate-linear coupling is applied by exponentiating the per-point
/// 2x2 block acting on (Re chi, Im chi).
void adjoint_step_inplace(CVec& chi, const GpeHamiltonian& h,
                          const CVec& psi_now, const CVec& psi_next,
                          double u_now, double u_next, double dt);

} // namespace qoc1d::gpe
