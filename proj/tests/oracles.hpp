// Test-only oracles, kept independent of the library's implementation paths:
// the dense spectral kinetic matrix is built by direct Fourier summation
// (not the library FFT), eigenpairs come from shifted power iteration or
// Eigen (never the solver under test), and time integration uses RK4.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/types.hpp"

namespace oracles {

using qoc1d::CMat;
using qoc1d::complexd;
using qoc1d::CVec;
using qoc1d::RMat;
using qoc1d::RVec;

/// Dense matrix of the spectral operator -kappa d^2/dx^2 on the periodic
/// n-point grid: T[a][b] = (1/n) sum_j kappa k_j^2 cos(2 pi j (a-b) / n).
inline RMat dense_spectral_kinetic(const qoc1d::SpatialGrid& grid, double kappa) {
    const int n = grid.n();
    const RVec& k = grid.k();
    RMat t(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += kappa * k[j] * k[j] *
                       std::cos(2.0 * qoc1d::pi * j * (a - b) / n);
            t(a, b) = acc / n;
        }
    return t;
}

/// Classic RK4 for y' = f(t, y) over [t0, t0 + n_sub*h].
inline CVec rk4(const std::function<CVec(double, const CVec&)>& f, CVec y,
                double t0, double h, int n_sub) {
    for (int s = 0; s < n_sub; ++s) {
        const double t = t0 + s * h;
        const CVec k1 = f(t, y);
        const CVec k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        const CVec k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        const CVec k4 = f(t + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

/// Lowest eigenpair of a real symmetric matrix via shifted power iteration
/// (spectral shift from Gershgorin discs); independent of any eigensolver.
inline std::pair<double, RVec> power_iteration_ground(const RMat& h, double tol = 1e-13,
                                                      int max_iters = 200000) {
    const int n = static_cast<int>(h.rows());
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                radius += std::abs(h(i, j));
        shift = std::max(shift, h(i, i) + radius);
    }
    RMat shifted = -h;
    shifted.diagonal().array() += shift;

    RVec v = RVec::Zero(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(-0.01 * (i - 0.37 * n) * (i - 0.37 * n) / n);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        RVec w = shifted * v;
        lambda = v.dot(w);
        w.normalize();
        const double delta = (w - v).norm();
        v = w;
        if (delta < tol)
            break;
    }
    // Two extra Rayleigh evaluations tighten the eigenvalue.
    const double energy = v.dot(h * v);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0)
        v = -v;
    return {energy, v};
}

/// exp(-i H dt) v for a dense Hermitian matrix, via eigendecomposition.
inline CVec expm_apply(const CMat& h, const CVec& v, double dt) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    CVec coeffs = solver.eigenvectors().adjoint() * v;
    for (Eigen::Index a = 0; a < coeffs.size(); ++a)
        coeffs[a] *= std::polar(1.0, -solver.eigenvalues()[a] * dt);
    return solver.eigenvectors() * coeffs;
}

/// All occupation vectors of length n_sites summing to n_particles, by a
/// plain odometer loop (no recursion shared with the library).
inline std::vector<std::vector<int>> enumerate_occupations(int n_sites, int n_particles) {
    std::vector<std::vector<int>> all;
    std::vector<int> occ(n_sites, 0);
    while (true) {
        int total = 0;
        for (int v : occ)
            total += v;
        if (total == n_particles)
            all.push_back(occ);
        int pos = n_sites - 1;
        while (pos >= 0 && occ[pos] == n_particles)
            occ[pos--] = 0;
        if (pos < 0)
            break;
        ++occ[pos];
    }
    return all;
}

/// Compensated (Kahan) weighted inner product, conjugating the first factor.
inline complexd kahan_overlap(const CVec& a, const CVec& b, double weight) {
    complexd sum{0.0, 0.0}, c{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const complexd y = std::conj(a[i]) * b[i] - c;
        const complexd t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum * weight;
}

} // namespace oracles
