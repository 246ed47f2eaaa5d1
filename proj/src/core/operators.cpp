#include "qoc1d/core/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "qoc1d/core/errors.hpp"
#include "qoc1d/core/fft.hpp"

namespace qoc1d {

DiagonalOperator::DiagonalOperator(RVec values) : values_(std::move(values)) {
    if (!values_.allFinite())
        throw std::invalid_argument("DiagonalOperator: values must be finite");
}

CVec DiagonalOperator::apply(const CVec& v) const {
    if (v.size() != values_.size())
        throw std::invalid_argument("DiagonalOperator: dimension mismatch");
    return values_.array() * v.array();
}

BandedKineticOperator::BandedKineticOperator(double kin_factor, const SpatialGrid& grid)
    : kin_factor_(kin_factor), n_(grid.n()), dx_(grid.dx()) {
    // -kappa d^2/dx^2 with the 4th-order central stencil
    // (-1, 16, -30, 16, -1)/(12 dx^2).
    const double s = kin_factor_ / (12.0 * dx_ * dx_);
    c0_ = 30.0 * s;
    c1_ = -16.0 * s;
    c2_ = s;
}

namespace {

template <typename Vec>
Vec banded_apply(const Vec& v, int n, double c0, double c1, double c2) {
    if (v.size() != n)
        throw std::invalid_argument("BandedKineticOperator: dimension mismatch");
    Vec out(n);
    for (int i = 0; i < n; ++i) {
        auto acc = c0 * v[i];
        if (i >= 1) acc += c1 * v[i - 1];
        if (i >= 2) acc += c2 * v[i - 2];
        if (i + 1 < n) acc += c1 * v[i + 1];
        if (i + 2 < n) acc += c2 * v[i + 2];
        out[i] = acc;
    }
    return out;
}

} // namespace

CVec BandedKineticOperator::apply(const CVec& v) const {
    return banded_apply(v, n_, c0_, c1_, c2_);
}

RVec BandedKineticOperator::apply(const RVec& v) const {
    return banded_apply(v, n_, c0_, c1_, c2_);
}

RMat BandedKineticOperator::dense() const {
    RMat m = RMat::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
        m(i, i) = c0_;
        if (i >= 1) m(i, i - 1) = c1_;
        if (i >= 2) m(i, i - 2) = c2_;
        if (i + 1 < n_) m(i, i + 1) = c1_;
        if (i + 2 < n_) m(i, i + 2) = c2_;
    }
    return m;
}

double real_expectation(const CVec& applied, const StateVector& psi) {
    const complexd value = psi.amplitudes().dot(applied) * psi.weight();
    if (std::abs(value.imag()) > 1e-8)
        throw NumericalError("expectation_value: imaginary residue " +
                             std::to_string(value.imag()) + " exceeds 1e-8");
    return value.real();
}

double expectation_value(const DiagonalOperator& op, const StateVector& psi) {
    return real_expectation(op.apply(psi.amplitudes()), psi);
}

double expectation_value(const BandedKineticOperator& op, const StateVector& psi) {
    return real_expectation(op.apply(psi.amplitudes()), psi);
}

CVec apply_kinetic_spectral(const CVec& amps, const SpatialGrid& grid, double kappa) {
    CVec v = amps;
    fft::forward(v);
    v.array() *= (kappa * grid.k().array().square()).cast<complexd>();
    fft::inverse(v);
    return v;
}

StateVector apply_kinetic_spectral(const StateVector& psi, double kappa) {
    if (psi.tag() != BasisTag::spatial_1d)
        throw std::invalid_argument("apply_kinetic_spectral: spatial-1d basis required");
    const auto& grid = static_cast<const SpatialGrid&>(psi.basis());
    return StateVector(apply_kinetic_spectral(psi.amplitudes(), grid, kappa), psi.basis_ptr());
}

} // namespace qoc1d
