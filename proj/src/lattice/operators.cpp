#include "qoc1d/lattice/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qoc1d/core/errors.hpp"
#include "qoc1d/core/operators.hpp"

namespace qoc1d::lattice {

SparseOperator::SparseOperator(SpCMat matrix, bool hermitian)
    : mat_(std::move(matrix)), hermitian_(hermitian) {
    if (mat_.rows() != mat_.cols())
        throw std::invalid_argument("SparseOperator: matrix must be square");
    mat_.makeCompressed();
    if (hermitian_) {
        const SpCMat diff = SpCMat(mat_.adjoint()) - mat_;
        double max_abs = 0.0;
        for (int k = 0; k < diff.outerSize(); ++k)
            for (SpCMat::InnerIterator it(diff, k); it; ++it)
                max_abs = std::max(max_abs, std::abs(it.value()));
        if (max_abs > 1e-14)
            throw std::invalid_argument("SparseOperator: matrix flagged Hermitian deviates by " +
                                        std::to_string(max_abs));
    }
}

CVec SparseOperator::apply(const CVec& v) const {
    if (v.size() != mat_.cols())
        throw std::invalid_argument("SparseOperator: dimension mismatch");
    return mat_ * v;
}

SparseOperator SparseOperator::diagonal(const RVec& values) {
    SpCMat m(values.size(), values.size());
    m.reserve(Eigen::VectorXi::Constant(values.size(), 1));
    for (Eigen::Index i = 0; i < values.size(); ++i)
        m.insert(i, i) = values[i];
    return SparseOperator(std::move(m), true);
}

SparseOperator hopping_operator(const FockBasis& basis, bool periodic) {
    const int l = basis.n_sites();
    std::vector<Eigen::Triplet<complexd>> triplets;
    std::vector<int> occ;

    const auto add_bond = [&](Eigen::Index col, int from, int to) {
        // adag_to a_from acting on |occ>, plus the Hermitian conjugate.
        if (occ[from] == 0)
            return;
        const double amp = std::sqrt(static_cast<double>(occ[from]) * (occ[to] + 1));
        std::vector<int> dest = occ;
        dest[from] -= 1;
        dest[to] += 1;
        const Eigen::Index row = basis.index_of(dest);
        triplets.emplace_back(row, col, complexd(amp, 0.0));
        triplets.emplace_back(col, row, complexd(amp, 0.0));
    };

    for (Eigen::Index col = 0; col < basis.dim(); ++col) {
        occ = basis.state(col);
        for (int i = 0; i + 1 < l; ++i)
            add_bond(col, i, i + 1);
        if (periodic && l > 2)
            add_bond(col, l - 1, 0);
    }

    SpCMat m(basis.dim(), basis.dim());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return SparseOperator(std::move(m), true);
}

SparseOperator onsite_operator(const FockBasis& basis) {
    RVec diag(basis.dim());
    for (Eigen::Index i = 0; i < basis.dim(); ++i) {
        double sum = 0.0;
        for (int n : basis.state(i))
            sum += static_cast<double>(n) * (n - 1);
        diag[i] = sum;
    }
    return SparseOperator::diagonal(diag);
}

SparseOperator site_potential_operator(const FockBasis& basis, const RVec& v) {
    if (v.size() != basis.n_sites())
        throw std::invalid_argument("site_potential_operator: potential length must equal n_sites");
    RVec diag(basis.dim());
    for (Eigen::Index i = 0; i < basis.dim(); ++i) {
        double sum = 0.0;
        const auto& occ = basis.state(i);
        for (int s = 0; s < basis.n_sites(); ++s)
            sum += v[s] * occ[s];
        diag[i] = sum;
    }
    return SparseOperator::diagonal(diag);
}

SparseOperator number_operator(const FockBasis& basis, int site) {
    if (site < 0 || site >= basis.n_sites())
        throw std::invalid_argument("number_operator: site out of range");
    RVec diag(basis.dim());
    for (Eigen::Index i = 0; i < basis.dim(); ++i)
        diag[i] = basis.state(i)[site];
    return SparseOperator::diagonal(diag);
}

double expectation_value(const SparseOperator& op, const StateVector& psi) {
    if (!op.is_hermitian())
        throw std::invalid_argument("expectation_value: operator is not Hermitian");
    if (psi.dim() != op.dim())
        throw std::invalid_argument("expectation_value: dimension mismatch");
    return real_expectation(op.apply(psi.amplitudes()), psi);
}

BoundTransform::BoundTransform(double u_min_in, double u_max_in)
    : u_min(u_min_in), u_max(u_max_in) {
    if (!(0.0 < u_min && u_min < u_max))
        throw std::invalid_argument("BoundTransform: need 0 < U_min < U_max");
    const double r = u_min / u_max;
    b = (1.0 + r) / (1.0 - r);
    a = u_max / (1.0 + b);
}

double BoundTransform::operator()(double u) const { return a * (std::tanh(u) + b); }

double BoundTransform::inverse(double physical) const {
    if (!(physical > u_min && physical < u_max))
        throw std::domain_error("BoundTransform: value " + std::to_string(physical) +
                               " outside (U_min, U_max)");
    return std::atanh(physical / a - b);
}

double BoundTransform::derivative(double u) const {
    const double t = std::tanh(u);
    return a * (1.0 - t * t);
}

double bound_transform(double u, double u_min, double u_max) {
    return BoundTransform(u_min, u_max)(u);
}

double bound_transform_inverse(double physical, double u_min, double u_max) {
    return BoundTransform(u_min, u_max).inverse(physical);
}

CMat single_particle_density_matrix(const StateVector& psi, const FockBasis& basis) {
    if (psi.tag() != BasisTag::fock || psi.dim() != basis.dim())
        throw std::invalid_argument("single_particle_density_matrix: Fock-basis state required");
    const int l = basis.n_sites();
    const CVec& c = psi.amplitudes();
    CMat rho = CMat::Zero(l, l);
    std::vector<int> dest;
    for (Eigen::Index n = 0; n < basis.dim(); ++n) {
        if (c[n] == complexd(0.0, 0.0))
            continue;
        const auto& occ = basis.state(n);
        for (int j = 0; j < l; ++j) {
            if (occ[j] == 0)
                continue;
            // Diagonal: adag_j a_j |n> = n_j |n>.
            rho(j, j) += std::conj(c[n]) * c[n] * static_cast<double>(occ[j]);
            for (int i = 0; i < l; ++i) {
                if (i == j)
                    continue;
                dest = occ;
                dest[j] -= 1;
                dest[i] += 1;
                const double amp = std::sqrt(static_cast<double>(occ[j]) * (occ[i] + 1));
                const Eigen::Index m = basis.index_of(dest);
                rho(i, j) += std::conj(c[m]) * c[n] * amp;
            }
        }
    }
    return rho;
}

} // namespace qoc1d::lattice
