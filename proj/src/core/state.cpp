#include "qoc1d/core/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d {

StateVector::StateVector(CVec amplitudes, std::shared_ptr<const Basis> basis)
    : amps_(std::move(amplitudes)), basis_(std::move(basis)) {
    if (!basis_)
        throw std::invalid_argument("StateVector: null basis");
    if (amps_.size() != basis_->dim())
        throw std::invalid_argument("StateVector: amplitude size does not match basis dimension");
}

double StateVector::norm_sq() const { return amps_.squaredNorm() * weight(); }

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0)
        throw std::invalid_argument("StateVector: cannot normalize the zero vector");
    amps_ /= n;
}

complexd overlap(const StateVector& a, const StateVector& b) {
    if (!a.basis().compatible(b.basis()))
        throw std::invalid_argument("overlap: states live on different bases");
    return a.amplitudes().dot(b.amplitudes()) * a.weight();
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

} // namespace qoc1d
