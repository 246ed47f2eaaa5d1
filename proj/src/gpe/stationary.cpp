#include "qoc1d/gpe/stationary.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qoc1d/core/errors.hpp"

namespace qoc1d::gpe {

namespace {

// Deterministic global sign: largest-magnitude component made positive.
void fix_sign(RVec& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0)
        v = -v;
}

struct Sweep {
    RVec psi;       // real amplitudes, physically normalized (sum psi^2 dx = 1)
    double energy;
    double mu;
    double residual;
};

// One damped self-consistent sweep: diagonalize T + V + beta*rho and pick
// the eigenvector with the requested index, optionally projecting out a
// previously converged state.
Sweep diagonalize(const RMat& t_dense, const RVec& v, const RVec& rho, double beta,
                  double dx, int index, const RVec* project_out) {
    RMat ham = t_dense;
    ham.diagonal() += v + beta * rho;

    Eigen::SelfAdjointEigenSolver<RMat> solver(ham);
    RVec vec = solver.eigenvectors().col(index);
    if (project_out)
        vec -= (project_out->dot(vec)) * (*project_out);
    vec.normalize();
    fix_sign(vec);

    Sweep s;
    s.psi = vec / std::sqrt(dx);

    const RVec rho_psi = s.psi.cwiseProduct(s.psi);
    const RVec h_lin = t_dense * s.psi + v.cwiseProduct(s.psi);
    const double e_lin = s.psi.dot(h_lin) * dx;
    const double quartic = rho_psi.dot(rho_psi) * dx;
    s.energy = e_lin + 0.5 * beta * quartic;
    s.mu = e_lin + beta * quartic;

    const RVec h_psi = h_lin + beta * rho_psi.cwiseProduct(s.psi);
    s.residual = std::sqrt((h_psi - s.mu * s.psi).squaredNorm() * dx);
    return s;
}

StationaryResult self_consistent_state(const GpeHamiltonian& h, double u, double tol,
                                       int max_iterations, int index) {
    if (!(tol > 0.0))
        throw std::invalid_argument("stationary state: tol must be positive");
    const auto& grid = h.grid();
    const double dx = grid.dx();
    const RMat t_dense = h.banded_kinetic().dense();
    const RVec v = h.potential_values(u);
    const double beta = h.beta();

    RVec ground; // euclidean-normalized ground state, for projection
    if (index == 1) {
        StationaryResult gs = ground_state_info(h, u, tol, max_iterations);
        ground = gs.state.amplitudes().real() * std::sqrt(dx);
    }
    const RVec* project = index == 1 ? &ground : nullptr;

    RVec rho = RVec::Zero(grid.n());
    double damping = 0.7;
    double prev_energy = 0.0;
    Sweep sweep;

    for (int it = 1; it <= max_iterations; ++it) {
        sweep = diagonalize(t_dense, v, rho, beta, dx, index, project);
        const RVec rho_psi = sweep.psi.cwiseProduct(sweep.psi);

        if (it > 1) {
            const double de = sweep.energy - prev_energy;
            if (std::abs(de) < tol && sweep.residual < 100.0 * tol) {
                StateVector state(sweep.psi.cast<complexd>(), h.grid_ptr());
                return {std::move(state), sweep.energy, sweep.mu, sweep.residual, it};
            }
            damping = de > 0.0 ? std::max(0.05, 0.5 * damping)
                               : std::min(0.95, 1.1 * damping);
        }
        prev_energy = sweep.energy;
        rho = (1.0 - damping) * rho + damping * rho_psi;
    }
    throw ConvergenceError("stationary state did not converge within " +
                               std::to_string(max_iterations) + " iterations",
                           sweep.residual);
}

} // namespace

StationaryResult ground_state_info(const GpeHamiltonian& h, double u, double tol,
                                   int max_iterations) {
    return self_consistent_state(h, u, tol, max_iterations, 0);
}

StateVector ground_state(const GpeHamiltonian& h, double u, double tol) {
    return ground_state_info(h, u, tol).state;
}

StationaryResult first_excited_state_info(const GpeHamiltonian& h, double u, double tol,
                                          int max_iterations) {
    return self_consistent_state(h, u, tol, max_iterations, 1);
}

StateVector first_excited_state(const GpeHamiltonian& h, double u, double tol) {
    return first_excited_state_info(h, u, tol).state;
}

StateVector stationary_state(const GpeHamiltonian& h, double u, int index, double tol) {
    if (index == 0)
        return ground_state(h, u, tol);
    if (index == 1)
        return first_excited_state(h, u, tol);
    throw std::invalid_argument("stationary_state: only the ground and first excited "
                                "states are supported for GPE-type Hamiltonians");
}

} // namespace qoc1d::gpe
