#pragma once

#include <memory>
#include <vector>

#include "qoc1d/control/control_field.hpp"
#include "qoc1d/core/state.hpp"
#include "qoc1d/core/types.hpp"

namespace qoc1d::ctrl {

/// Propagation backend of a state-transfer problem. Implementations advance
/// a state by one time step with midpoint controls, advance the adjoint
/// backward, and apply dH/du.
class Dynamics {
public:
    virtual ~Dynamics() = default;

    virtual std::shared_ptr<const Basis> basis() const = 0;
    virtual int n_fields() const = 0;

    virtual void step(CVec& psi, const RVec& u_now, const RVec& u_next, double dt) const = 0;
    virtual void adjoint_step(CVec& chi, const CVec& psi_now, const CVec& psi_next,
                              const RVec& u_now, const RVec& u_next, double dt) const = 0;
    virtual CVec apply_dhdu(const RVec& u, const CVec& psi, int field) const = 0;
};

/// What a gradient optimizer needs from a problem. Parameters are the
/// flattened optimization variables (control samples for GRAPE, expansion
/// coefficients for GROUP).
class ObjectiveProblem {
public:
    virtual ~ObjectiveProblem() = default;

    virtual Eigen::Index n_parameters() const = 0;
    virtual RVec parameters() const = 0;
    virtual void set_parameters(const RVec& p) = 0;

    virtual double cost() = 0;
    virtual double fidelity() = 0;
    virtual RVec gradient() = 0;

    /// Map a gradient into the optimizer's metric; identity by default.
    virtual RVec metric_transform(const RVec& gradient) { return gradient; }

    virtual long n_propagation_steps() const { return 0; }
};

struct ProblemOptions {
    double gamma = 0.0;     // regularization weight on du/dt
    double sigma = 0.0;     // soft-bound weight; active when > 0
    RVec u_min, u_max;      // per-field bounds for the soft-bound term
    bool h1_metric = false; // optimizers read the H1 gradient when set
};

/// State-transfer problem: cost, fidelity and adjoint-state gradient for
/// a given backend. The current control is owned by the problem; forward
/// trajectories are cached until the control changes.
class StateTransferProblem : public ObjectiveProblem {
public:
    StateTransferProblem(std::shared_ptr<const Dynamics> dynamics,
                         StateVector psi0, StateVector psi_target,
                         ControlField u, ProblemOptions options = {});

    const ControlField& control() const { return u_; }
    void update(const ControlField& u);
    void update(const RMat& values);

    const StateVector& initial_state() const { return psi0_; }
    const StateVector& target_state() const { return psit_; }
    const Dynamics& dynamics() const { return *dyn_; }
    const ProblemOptions& options() const { return opts_; }

    double cost() override;
    double fidelity() override;

    /// All time slices of the forward propagation; [0] is psi0.
    std::vector<StateVector> forward_trajectory();
    /// All time slices of the adjoint propagation, index-aligned with the
    /// forward trajectory; [last] is chi(T) = i <psi_t|psi(T)> psi_t.
    std::vector<StateVector> adjoint_trajectory();

    /// Discrete L2 gradient, dt-scaled, flattened (step-major, then field),
    /// with the first and last time slices forced to zero.
    RVec gradient_l2();

    double terminal_fidelity_cost(); // J_F
    double regularization_cost();    // J_gamma
    double bound_cost();             // J_b

    // ObjectiveProblem interface.
    Eigen::Index n_parameters() const override;
    RVec parameters() const override;
    void set_parameters(const RVec& p) override;
    RVec gradient() override { return gradient_l2(); }
    RVec metric_transform(const RVec& gradient) override;
    long n_propagation_steps() const override { return prop_steps_; }

private:
    std::shared_ptr<const Dynamics> dyn_;
    StateVector psi0_, psit_;
    ControlField u_;
    ProblemOptions opts_;

    bool cache_valid_ = false;
    CMat trajectory_;      // dim x n_steps
    complexd final_overlap_{};
    long prop_steps_ = 0;

    void ensure_forward();
};

/// Solve -D2 g = gl2 with Dirichlet boundaries, D2 the central second
/// difference with spacing dt; per-field tridiagonal solves.
RVec gradient_h1(const RVec& gl2, int n_steps, int n_fields, double dt);

} // namespace qoc1d::ctrl
