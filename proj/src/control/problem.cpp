#include "qoc1d/control/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::ctrl {

StateTransferProblem::StateTransferProblem(std::shared_ptr<const Dynamics> dynamics,
                                           StateVector psi0, StateVector psi_target,
                                           ControlField u, ProblemOptions options)
    : dyn_(std::move(dynamics)), psi0_(std::move(psi0)), psit_(std::move(psi_target)),
      u_(std::move(u)), opts_(std::move(options)) {
    if (!dyn_)
        throw std::invalid_argument("StateTransferProblem: null dynamics");
    if (!psi0_.basis().compatible(*dyn_->basis()) || !psit_.basis().compatible(*dyn_->basis()))
        throw std::invalid_argument("StateTransferProblem: states incompatible with dynamics");
    if (u_.n_fields() != dyn_->n_fields())
        throw std::invalid_argument("StateTransferProblem: control field count mismatch");
    if (std::abs(psi0_.norm() - 1.0) > 1e-8 || std::abs(psit_.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("StateTransferProblem: states must be unit-norm");
    if (opts_.gamma < 0.0 || opts_.sigma < 0.0)
        throw std::invalid_argument("StateTransferProblem: negative weight");
    if (opts_.sigma > 0.0) {
        if (opts_.u_min.size() != u_.n_fields() || opts_.u_max.size() != u_.n_fields())
            throw std::invalid_argument("StateTransferProblem: bounds must match field count");
    }
}

void StateTransferProblem::update(const ControlField& u) {
    if (!(u.time_grid() == u_.time_grid()) || u.n_fields() != u_.n_fields())
        throw std::invalid_argument("StateTransferProblem: control grid mismatch");
    update(u.values());
}

void StateTransferProblem::update(const RMat& values) {
    if (values.rows() != u_.values().rows() || values.cols() != u_.values().cols())
        throw std::invalid_argument("StateTransferProblem: control shape mismatch");
    if (cache_valid_ && values == u_.values())
        return;
    u_.values() = values;
    cache_valid_ = false;
}

void StateTransferProblem::ensure_forward() {
    if (cache_valid_)
        return;
    const int n_steps = u_.n_steps();
    const double dt = u_.dt();
    const Eigen::Index dim = psi0_.dim();

    trajectory_.resize(dim, n_steps);
    CVec psi = psi0_.amplitudes();
    trajectory_.col(0) = psi;
    for (int i = 0; i + 1 < n_steps; ++i) {
        dyn_->step(psi, u_.get(i), u_.get(i + 1), dt);
        trajectory_.col(i + 1) = psi;
        ++prop_steps_;
    }
    final_overlap_ = psit_.amplitudes().dot(psi) * psit_.weight();
    cache_valid_ = true;
}

double StateTransferProblem::fidelity() {
    ensure_forward();
    return std::norm(final_overlap_);
}

double StateTransferProblem::terminal_fidelity_cost() { return 0.5 * (1.0 - fidelity()); }

double StateTransferProblem::regularization_cost() {
    if (opts_.gamma == 0.0)
        return 0.0;
    const double dt = u_.dt();
    double acc = 0.0;
    const RMat& v = u_.values();
    for (int f = 0; f < u_.n_fields(); ++f)
        for (int i = 0; i + 1 < u_.n_steps(); ++i) {
            const double du = (v(i + 1, f) - v(i, f)) / dt;
            acc += du * du;
        }
    return 0.5 * opts_.gamma * acc * dt;
}

double StateTransferProblem::bound_cost() {
    if (opts_.sigma == 0.0)
        return 0.0;
    const double dt = u_.dt();
    double acc = 0.0;
    const RMat& v = u_.values();
    for (int f = 0; f < u_.n_fields(); ++f)
        for (int i = 0; i < u_.n_steps(); ++i) {
            const double below = opts_.u_min[f] - v(i, f);
            const double above = v(i, f) - opts_.u_max[f];
            if (below > 0.0)
                acc += below * below;
            if (above > 0.0)
                acc += above * above;
        }
    return 0.5 * opts_.sigma * acc * dt;
}

double StateTransferProblem::cost() {
    return terminal_fidelity_cost() + regularization_cost() + bound_cost();
}

std::vector<StateVector> StateTransferProblem::forward_trajectory() {
    ensure_forward();
    std::vector<StateVector> out;
    out.reserve(u_.n_steps());
    for (int i = 0; i < u_.n_steps(); ++i)
        out.emplace_back(trajectory_.col(i), psi0_.basis_ptr());
    return out;
}

std::vector<StateVector> StateTransferProblem::adjoint_trajectory() {
    ensure_forward();
    const int n_steps = u_.n_steps();
    const double dt = u_.dt();

    std::vector<StateVector> out;
    out.reserve(n_steps);

    CVec chi = imag_unit * final_overlap_ * psit_.amplitudes();
    std::vector<CVec> slices(n_steps);
    slices[n_steps - 1] = chi;
    for (int i = n_steps - 2; i >= 0; --i) {
        dyn_->adjoint_step(chi, trajectory_.col(i), trajectory_.col(i + 1),
                           u_.get(i), u_.get(i + 1), dt);
        slices[i] = chi;
        ++prop_steps_;
    }
    for (int i = 0; i < n_steps; ++i)
        out.emplace_back(std::move(slices[i]), psi0_.basis_ptr());
    return out;
}

RVec StateTransferProblem::gradient_l2() {
    ensure_forward();
    const int n_steps = u_.n_steps();
    const int n_fields = u_.n_fields();
    const double dt = u_.dt();
    const double w = psi0_.weight();
    const RMat& v = u_.values();

    RVec grad = RVec::Zero(static_cast<Eigen::Index>(n_steps) * n_fields);
    const auto idx = [n_fields](int step, int field) {
        return static_cast<Eigen::Index>(step) * n_fields + field;
    };

    // Backward adjoint sweep, assembling -Re<chi|dH/du|psi> on the fly.
    CVec chi = imag_unit * final_overlap_ * psit_.amplitudes();
    for (int i = n_steps - 1; i >= 0; --i) {
        if (i != 0 && i != n_steps - 1) {
            const RVec u_i = u_.get(i);
            for (int f = 0; f < n_fields; ++f) {
                const CVec dh_psi = dyn_->apply_dhdu(u_i, trajectory_.col(i), f);
                grad[idx(i, f)] = -(chi.dot(dh_psi) * w).real() * dt;
            }
        }
        if (i > 0) {
            dyn_->adjoint_step(chi, trajectory_.col(i - 1), trajectory_.col(i),
                               u_.get(i - 1), u_.get(i), dt);
            ++prop_steps_;
        }
    }

    // Exact discrete derivatives of the regularization and soft-bound terms.
    for (int f = 0; f < n_fields; ++f) {
        if (opts_.gamma != 0.0)
            for (int i = 1; i + 1 < n_steps; ++i) {
                const double udd = (v(i + 1, f) - 2.0 * v(i, f) + v(i - 1, f)) / (dt * dt);
                grad[idx(i, f)] += -opts_.gamma * udd * dt;
            }
        if (opts_.sigma != 0.0)
            for (int i = 1; i + 1 < n_steps; ++i) {
                const double below = opts_.u_min[f] - v(i, f);
                const double above = v(i, f) - opts_.u_max[f];
                double term = 0.0;
                if (below > 0.0)
                    term += v(i, f) - opts_.u_min[f];
                if (above > 0.0)
                    term += v(i, f) - opts_.u_max[f];
                grad[idx(i, f)] += opts_.sigma * term * dt;
            }
    }
    return grad;
}

Eigen::Index StateTransferProblem::n_parameters() const {
    return static_cast<Eigen::Index>(u_.n_steps()) * u_.n_fields();
}

RVec StateTransferProblem::parameters() const {
    RVec p(n_parameters());
    const RMat& v = u_.values();
    for (int i = 0; i < u_.n_steps(); ++i)
        for (int f = 0; f < u_.n_fields(); ++f)
            p[static_cast<Eigen::Index>(i) * u_.n_fields() + f] = v(i, f);
    return p;
}

void StateTransferProblem::set_parameters(const RVec& p) {
    if (p.size() != n_parameters())
        throw std::invalid_argument("StateTransferProblem: parameter size mismatch");
    RMat v(u_.n_steps(), u_.n_fields());
    for (int i = 0; i < u_.n_steps(); ++i)
        for (int f = 0; f < u_.n_fields(); ++f)
            v(i, f) = p[static_cast<Eigen::Index>(i) * u_.n_fields() + f];
    update(v);
}

RVec StateTransferProblem::metric_transform(const RVec& gradient) {
    if (!opts_.h1_metric)
        return gradient;
    return gradient_h1(gradient, u_.n_steps(), u_.n_fields(), u_.dt());
}

RVec gradient_h1(const RVec& gl2, int n_steps, int n_fields, double dt) {
    if (gl2.size() != static_cast<Eigen::Index>(n_steps) * n_fields)
        throw std::invalid_argument("gradient_h1: size mismatch");
    RVec out = RVec::Zero(gl2.size());
    const double dt2 = dt * dt;
    const int m = n_steps - 2; // interior unknowns
    if (m <= 0)
        return out;

    // Thomas algorithm for the SPD tridiagonal (2, -1) system, per field.
    std::vector<double> c_prime(m), d_prime(m);
    for (int f = 0; f < n_fields; ++f) {
        const auto rhs = [&](int j) { return gl2[(j + 1) * n_fields + f] * dt2; };
        c_prime[0] = -1.0 / 2.0;
        d_prime[0] = rhs(0) / 2.0;
        for (int j = 1; j < m; ++j) {
            const double denom = 2.0 + c_prime[j - 1];
            c_prime[j] = -1.0 / denom;
            d_prime[j] = (rhs(j) + d_prime[j - 1]) / denom;
        }
        out[(m - 1 + 1) * n_fields + f] = d_prime[m - 1];
        for (int j = m - 2; j >= 0; --j)
            out[(j + 1) * n_fields + f] = d_prime[j] - c_prime[j] * out[(j + 2) * n_fields + f];
    }
    return out;
}

} // namespace qoc1d::ctrl
