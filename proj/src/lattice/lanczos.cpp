#include "qoc1d/lattice/lanczos.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qoc1d/core/errors.hpp"

namespace qoc1d::lattice {

namespace {

constexpr double breakdown_tol = 1e-14;

struct Tridiag {
    std::vector<CVec> v;     // Krylov basis, up to k vectors
    std::vector<double> alpha, beta; // beta[j] couples v[j] and v[j+1]
};

Tridiag build_krylov(const Matvec& matvec, const CVec& start, int order) {
    Tridiag t;
    t.v.push_back(start);
    for (int j = 0; j < order; ++j) {
        CVec w = matvec(t.v[j]);
        const double alpha = w.dot(t.v[j]).real();
        t.alpha.push_back(alpha);
        if (j + 1 == order)
            break;
        w -= alpha * t.v[j];
        if (j > 0)
            w -= t.beta[j - 1] * t.v[j - 1];
        // Full reorthogonalization; the Krylov block is small.
        for (const auto& vi : t.v)
            w -= vi.dot(w) * vi;
        const double beta = w.norm();
        if (beta < breakdown_tol)
            break; // invariant subspace reached: finish with smaller order
        t.beta.push_back(beta);
        t.v.push_back(w / beta);
    }
    return t;
}

} // namespace

void lanczos_step_inplace(const Matvec& matvec, CVec& psi, double dt, int krylov_order) {
    if (krylov_order < 2)
        throw std::invalid_argument("lanczos_step: krylov_order must be at least 2");
    const double norm = psi.norm();
    if (norm == 0.0)
        throw std::invalid_argument("lanczos_step: zero state");

    const Tridiag t = build_krylov(matvec, psi / norm, krylov_order);
    const int k = static_cast<int>(t.alpha.size());

    RMat tk = RMat::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        tk(j, j) = t.alpha[j];
        if (j + 1 < k) {
            tk(j, j + 1) = t.beta[j];
            tk(j + 1, j) = t.beta[j];
        }
    }

    Eigen::SelfAdjointEigenSolver<RMat> solver(tk);
    const RVec& evals = solver.eigenvalues();
    const RMat& evecs = solver.eigenvectors();

    // y = exp(-i dt T_k) e_1 via the eigendecomposition.
    CVec y = CVec::Zero(k);
    for (int a = 0; a < k; ++a) {
        const complexd phase = std::polar(1.0, -evals[a] * dt);
        for (int j = 0; j < k; ++j)
            y[j] += evecs(j, a) * phase * evecs(0, a);
    }

    CVec out = CVec::Zero(psi.size());
    for (int j = 0; j < k; ++j)
        out += y[j] * t.v[j];
    psi = norm * out;
}

StateVector lanczos_step(const SparseOperator& h, const StateVector& psi,
                         double dt, int krylov_order) {
    if (!h.is_hermitian())
        throw std::invalid_argument("lanczos_step: operator must be Hermitian");
    StateVector out = psi;
    lanczos_step_inplace([&h](const CVec& v) { return h.apply(v); },
                         out.amplitudes(), dt, krylov_order);
    return out;
}

StateVector lanczos_step(const LatticeHamiltonian& h, double u, const StateVector& psi,
                         double dt, int krylov_order) {
    StateVector out = psi;
    lanczos_step_inplace([&h, u](const CVec& v) { return h.apply(u, v); },
                         out.amplitudes(), dt, krylov_order);
    return out;
}

SparseEigResult lowest_eigenpair(const Matvec& matvec, Eigen::Index dim, double tol,
                                 const CVec* seed, int block_size, int max_restarts) {
    if (!(tol > 0.0))
        throw std::invalid_argument("lowest_eigenpair: tol must be positive");
    const int block = static_cast<int>(std::min<Eigen::Index>(dim, block_size));

    CVec x;
    if (seed && seed->size() == dim && seed->norm() > 0.0)
        x = *seed / seed->norm();
    else {
        x = CVec::Constant(dim, complexd(1.0, 0.0));
        x /= x.norm();
    }

    double energy = 0.0;
    for (int it = 1; it <= max_restarts; ++it) {
        const Tridiag t = build_krylov(matvec, x, block);
        const int k = static_cast<int>(t.alpha.size());
        RMat tk = RMat::Zero(k, k);
        for (int j = 0; j < k; ++j) {
            tk(j, j) = t.alpha[j];
            if (j + 1 < k) {
                tk(j, j + 1) = t.beta[j];
                tk(j + 1, j) = t.beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<RMat> solver(tk);
        energy = solver.eigenvalues()[0];
        CVec ritz = CVec::Zero(dim);
        for (int j = 0; j < k; ++j)
            ritz += solver.eigenvectors()(j, 0) * t.v[j];
        ritz /= ritz.norm();
        const double residual = (matvec(ritz) - energy * ritz).norm();
        if (residual < tol)
            return {energy, std::move(ritz), residual, it};
        x = std::move(ritz);
    }
    throw ConvergenceError("lowest_eigenpair: no convergence after restarts",
                           (matvec(x) - energy * x).norm());
}

SparseEigResult ground_state_sparse(const SparseOperator& h, double tol,
                                    Eigen::Index dense_threshold) {
    if (!h.is_hermitian())
        throw std::invalid_argument("ground_state_sparse: operator must be Hermitian");
    if (!(tol > 0.0))
        throw std::invalid_argument("ground_state_sparse: tol must be positive");
    const Eigen::Index n = h.dim();

    if (n <= dense_threshold) {
        Eigen::SelfAdjointEigenSolver<CMat> solver(CMat(h.matrix()));
        SparseEigResult r;
        r.energy = solver.eigenvalues()[0];
        r.state = solver.eigenvectors().col(0);
        r.residual = (h.apply(r.state) - r.energy * r.state).norm();
        r.iterations = 1;
        return r;
    }
    return lowest_eigenpair([&h](const CVec& v) { return h.apply(v); }, n, tol, nullptr, 40, 200);
}

} // namespace qoc1d::lattice
