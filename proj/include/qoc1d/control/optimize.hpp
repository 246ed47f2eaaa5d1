#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qoc1d/control/basis.hpp"
#include "qoc1d/control/problem.hpp"

namespace qoc1d::ctrl {

/// Bounded-memory curvature-pair store with the two-loop recursion.
class LbfgsHistory {
public:
    explicit LbfgsHistory(int memory = 10) : memory_(memory) {}

    /// Pairs with s.y <= 1e-12 are skipped.
    void push(const RVec& s, const RVec& y);
    void clear() { pairs_.clear(); }
    std::size_t size() const { return pairs_.size(); }

    /// Two-loop recursion; with empty history returns -gradient.
    RVec direction(const RVec& gradient) const;

private:
    int memory_;
    std::deque<std::pair<RVec, RVec>> pairs_;
};

enum class DirectionKind { steepest, lbfgs };

enum class StopReason {
    stopper,             // stopper predicate fired
    line_search_failure, // no admissible step size
    collector_failure,   // collector threw
};

struct OptimizeResult {
    StopReason reason;
    int iterations = 0;
    double final_cost = 0.0;
    double final_fidelity = 0.0;
    std::string message;
};

class GradientOptimizer;

using Stopper = std::function<bool(GradientOptimizer&)>;
using Collector = std::function<void(GradientOptimizer&)>;
using Restarter = std::function<bool(GradientOptimizer&)>;
/// Returns the accepted step size, or nullopt when no admissible step
/// exists. On success the problem is left evaluated at x + alpha p.
using StepSizeFinder = std::function<std::optional<double>(
    const RVec& direction, ObjectiveProblem&, GradientOptimizer&)>;

struct StopperOptions {
    double fidelity_target = 0.999;
    double min_step_size = 1e-7;
    int max_iterations = 2000;
};

Stopper default_stopper(StopperOptions options = {});
/// Composite of predicates: stop as soon as any fires.
Stopper make_stopper(std::vector<Stopper> predicates);
Collector null_collector();

/// Backtracking line search with quadratic/cubic interpolation enforcing
/// the Armijo condition (c1 = 1e-4). The initial trial is
/// min(max_init_guess, 2 * previous step), capped at max_step.
StepSizeFinder make_interpolating_step_size_finder(double max_step, double max_init_guess,
                                                   double c1 = 1e-4, int max_trials = 30);

struct OptimizerConfig {
    DirectionKind direction = DirectionKind::lbfgs;
    int lbfgs_memory = 10;
    Stopper stopper;           // default_stopper() when empty
    Collector collector;       // optional
    StepSizeFinder step_finder; // interpolating finder (5.0, 1.0) when empty
    Restarter restarter;       // dressed-restart predicate (GROUP problems only)
    /// When a line search fails or accepts a step below this threshold with
    /// curvature pairs in memory, the history is erased and the iteration
    /// retried along steepest descent.
    double history_restart_step = 1e-7;
};

/// Iterates x <- x + alpha p with p from steepest descent or L-BFGS on the
/// problem's metric gradient. Monotone: accepted steps never increase cost.
class GradientOptimizer {
public:
    GradientOptimizer(std::shared_ptr<ObjectiveProblem> problem, OptimizerConfig config);

    OptimizeResult optimize();

    /// Invoke the collector once outside the loop (e.g. for iteration 0).
    void collect_now();

    ObjectiveProblem& problem() { return *problem_; }
    const ObjectiveProblem& problem() const { return *problem_; }

    int iteration() const { return iteration_; }
    int superiteration() const { return superiteration_; }
    double step_size() const { return step_size_; }
    double previous_step_size() const { return step_size_; }
    const RVec& last_gradient() const { return gradient_; }

private:
    std::shared_ptr<ObjectiveProblem> problem_;
    OptimizerConfig cfg_;
    LbfgsHistory history_;

    int iteration_ = 0;
    int superiteration_ = 0;
    double step_size_ = 0.0;
    RVec gradient_, metric_gradient_;
    RVec prev_params_, prev_metric_gradient_;
    bool have_prev_ = false;

    void refresh_gradients();
};

// GRAPE: direct optimization of the time-discretized control.
GradientOptimizer make_grape_steepest_l2(std::shared_ptr<StateTransferProblem> p,
                                         OptimizerConfig cfg = {});
GradientOptimizer make_grape_steepest_h1(std::shared_ptr<StateTransferProblem> p,
                                         OptimizerConfig cfg = {});
GradientOptimizer make_grape_bfgs_l2(std::shared_ptr<StateTransferProblem> p,
                                     OptimizerConfig cfg = {});
GradientOptimizer make_grape_bfgs_h1(std::shared_ptr<StateTransferProblem> p,
                                     OptimizerConfig cfg = {});

// GROUP: optimization over reduced-basis coefficients.
GradientOptimizer make_group_steepest(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg = {});
GradientOptimizer make_group_bfgs(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg = {});

/// Restart predicate for dressed GROUP: new superiteration when the last
/// step size drops below tol (default 1e-6).
Restarter default_dressed_restarter(double tol = 1e-6);

// Dressed GROUP: GROUP with superiteration restarts through the problem's
// basis maker.
GradientOptimizer make_dgroup_steepest(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg = {});
GradientOptimizer make_dgroup_bfgs(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg = {});

} // namespace qoc1d::ctrl
