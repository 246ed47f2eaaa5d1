#include "qoc1d/gpe/split_step.hpp"

#include <cmath>
#include <stdexcept>

#include "qoc1d/core/fft.hpp"

namespace qoc1d::gpe {

namespace {

void phase_kick(CVec& psi, const RVec& v_eff, double dt_half) {
    const Eigen::Index n = psi.size();
    for (Eigen::Index i = 0; i < n; ++i)
        psi[i] *= std::polar(1.0, -v_eff[i] * dt_half);
}

void kinetic_full_step(CVec& psi, const SpatialGrid& grid, double kappa, double dt) {
    fft::forward(psi);
    const Eigen::Index n = psi.size();
    const RVec& k = grid.k();
    for (Eigen::Index i = 0; i < n; ++i)
        psi[i] *= std::polar(1.0, -kappa * k[i] * k[i] * dt);
    fft::inverse(psi);
}

/// expm(tau * M) acting on (Re chi, Im chi) per point, where
/// M = [[gi, W - gr], [-(W + gr), -gi]] is the generator of
/// i chi_dot = W chi + G conj(chi) with G = gr + i gi.
void local_block_step(CVec& chi, const RVec& w, const CVec& g, double tau) {
    const Eigen::Index n = chi.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double W = w[i];
        const double gr = g[i].real();
        const double gi = g[i].imag();
        const double lam2 = gr * gr + gi * gi - W * W; // M^2 = lam2 * I
        double a, b;
        const double z = lam2 * tau * tau;
        if (std::abs(z) < 1e-12) {
            a = 1.0 + 0.5 * z;
            b = tau * (1.0 + z / 6.0);
        } else if (lam2 < 0.0) {
            const double om = std::sqrt(-lam2);
            a = std::cos(om * tau);
            b = std::sin(om * tau) / om;
        } else {
            const double lam = std::sqrt(lam2);
            a = std::cosh(lam * tau);
            b = std::sinh(lam * tau) / lam;
        }
        const double p = chi[i].real();
        const double q = chi[i].imag();
        const double mp = gi * p + (W - gr) * q;
        const double mq = -(W + gr) * p - gi * q;
        chi[i] = complexd(a * p + b * mp, a * q + b * mq);
    }
}

} // namespace

void split_step_inplace(CVec& psi, const GpeHamiltonian& h,
                        double u_now, double u_next, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("split_step: dt must be positive");
    const RVec v_mid = 0.5 * (h.potential_values(u_now) + h.potential_values(u_next));
    const double beta = h.beta();

    RVec v_eff = v_mid;
    if (beta != 0.0)
        v_eff += (beta * psi.array().abs2()).matrix();
    phase_kick(psi, v_eff, 0.5 * dt);

    kinetic_full_step(psi, h.grid(), h.kin_factor(), dt);

    v_eff = v_mid;
    if (beta != 0.0)
        v_eff += (beta * psi.array().abs2()).matrix();
    phase_kick(psi, v_eff, 0.5 * dt);
}

StateVector split_step(const StateVector& psi, const GpeHamiltonian& h,
                       double u_now, double u_next, double dt) {
    if (psi.tag() != BasisTag::spatial_1d)
        throw std::invalid_argument("split_step: spatial-1d state required");
    StateVector out = psi;
    split_step_inplace(out.amplitudes(), h, u_now, u_next, dt);
    return out;
}

void adjoint_step_inplace(CVec& chi, const GpeHamiltonian& h,
                          const CVec& psi_now, const CVec& psi_next,
                          double u_now, double u_next, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("adjoint_step: dt must be positive");
    const RVec v_mid = 0.5 * (h.potential_values(u_now) + h.potential_values(u_next));
    const double beta = h.beta();
    const double tau = -0.5 * dt; // backward half step

    if (beta == 0.0) {
        // Plain backward Schroedinger evolution: exact inverse of the
        // forward split step.
        CVec zero_g = CVec::Zero(chi.size());
        local_block_step(chi, v_mid, zero_g, tau);
        fft::forward(chi);
        const RVec& k = h.grid().k();
        const double kappa = h.kin_factor();
        for (Eigen::Index i = 0; i < chi.size(); ++i)
            chi[i] *= std::polar(1.0, kappa * k[i] * k[i] * dt);
        fft::inverse(chi);
        local_block_step(chi, v_mid, zero_g, tau);
        return;
    }

    const CVec psi_mid = 0.5 * (psi_now + psi_next);
    const RVec w = v_mid + (2.0 * beta * psi_mid.array().abs2()).matrix();
    const CVec g = beta * psi_mid.array().square().matrix();

    local_block_step(chi, w, g, tau);
    fft::forward(chi);
    const RVec& k = h.grid().k();
    const double kappa = h.kin_factor();
    for (Eigen::Index i = 0; i < chi.size(); ++i)
        chi[i] *= std::polar(1.0, kappa * k[i] * k[i] * dt);
    fft::inverse(chi);
    local_block_step(chi, w, g, tau);
}

} // namespace qoc1d::gpe
