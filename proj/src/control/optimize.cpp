#include "qoc1d/control/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::ctrl {

void LbfgsHistory::push(const RVec& s, const RVec& y) {
    if (s.dot(y) <= 1e-12)
        return;
    pairs_.emplace_back(s, y);
    while (static_cast<int>(pairs_.size()) > memory_)
        pairs_.pop_front();
}

RVec LbfgsHistory::direction(const RVec& gradient) const {
    if (pairs_.empty())
        return -gradient;

    const std::size_t m = pairs_.size();
    std::vector<double> alpha(m), rho(m);
    RVec q = gradient;
    for (std::size_t i = m; i-- > 0;) {
        const auto& [s, y] = pairs_[i];
        rho[i] = 1.0 / y.dot(s);
        alpha[i] = rho[i] * s.dot(q);
        q -= alpha[i] * y;
    }
    const auto& [s_last, y_last] = pairs_.back();
    q *= s_last.dot(y_last) / y_last.dot(y_last);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& [s, y] = pairs_[i];
        const double beta = rho[i] * y.dot(q);
        q += (alpha[i] - beta) * s;
    }
    return -q;
}

Stopper default_stopper(StopperOptions options) {
    return [options](GradientOptimizer& opt) {
        if (opt.problem().fidelity() > options.fidelity_target)
            return true;
        if (opt.iteration() > 0 && opt.previous_step_size() < options.min_step_size)
            return true;
        if (opt.iteration() >= options.max_iterations)
            return true;
        return false;
    };
}

Stopper make_stopper(std::vector<Stopper> predicates) {
    return [predicates = std::move(predicates)](GradientOptimizer& opt) {
        for (const auto& p : predicates)
            if (p(opt))
                return true;
        return false;
    };
}

Collector null_collector() {
    return [](GradientOptimizer&) {};
}

StepSizeFinder make_interpolating_step_size_finder(double max_step, double max_init_guess,
                                                   double c1, int max_trials) {
    if (!(max_step > 0.0) || !(max_init_guess > 0.0))
        throw std::invalid_argument("step size finder: positive limits required");
    return [=](const RVec& p, ObjectiveProblem& prob,
               GradientOptimizer& opt) -> std::optional<double> {
        const RVec x = prob.parameters();
        const double phi0 = prob.cost();
        const double dphi0 = opt.last_gradient().dot(p);
        if (!(dphi0 < 0.0))
            return std::nullopt;

        double alpha = opt.step_size() > 0.0 ? std::min(max_init_guess, 2.0 * opt.step_size())
                                             : max_init_guess;
        alpha = std::min(alpha, max_step);

        double alpha_prev = 0.0, phi_prev = phi0;
        for (int trial = 0; trial < max_trials; ++trial) {
            prob.set_parameters(x + alpha * p);
            const double phi = prob.cost();
            if (phi <= phi0 + c1 * alpha * dphi0)
                return alpha; // problem left at the accepted point

            double next;
            if (trial == 0) {
                // Quadratic model through phi0, dphi0, phi(alpha).
                next = -dphi0 * alpha * alpha / (2.0 * (phi - phi0 - dphi0 * alpha));
            } else {
                // Cubic model through phi0, dphi0 and the last two trials.
                const double d1 = phi - phi0 - dphi0 * alpha;
                const double d2 = phi_prev - phi0 - dphi0 * alpha_prev;
                const double denom = alpha * alpha * alpha_prev * alpha_prev *
                                     (alpha - alpha_prev);
                const double a = (alpha_prev * alpha_prev * d1 - alpha * alpha * d2) / denom;
                const double b = (-alpha_prev * alpha_prev * alpha_prev * d1 +
                                  alpha * alpha * alpha * d2) / denom;
                if (std::abs(a) < 1e-30) {
                    next = -dphi0 / (2.0 * b);
                } else {
                    const double disc = b * b - 3.0 * a * dphi0;
                    next = disc > 0.0 ? (-b + std::sqrt(disc)) / (3.0 * a) : 0.5 * alpha;
                }
            }
            if (!std::isfinite(next) || next < 0.1 * alpha)
                next = 0.1 * alpha;
            else if (next > 0.5 * alpha)
                next = 0.5 * alpha;
            alpha_prev = alpha;
            phi_prev = phi;
            alpha = next;
        }
        prob.set_parameters(x); // restore
        return std::nullopt;
    };
}

GradientOptimizer::GradientOptimizer(std::shared_ptr<ObjectiveProblem> problem,
                                     OptimizerConfig config)
    : problem_(std::move(problem)), cfg_(std::move(config)),
      history_(cfg_.lbfgs_memory) {
    if (!problem_)
        throw std::invalid_argument("GradientOptimizer: null problem");
    if (!cfg_.stopper)
        cfg_.stopper = default_stopper();
    if (!cfg_.step_finder)
        cfg_.step_finder = make_interpolating_step_size_finder(5.0, 1.0);
}

void GradientOptimizer::collect_now() {
    if (cfg_.collector)
        cfg_.collector(*this);
}

void GradientOptimizer::refresh_gradients() {
    gradient_ = problem_->gradient();
    metric_gradient_ = problem_->metric_transform(gradient_);
    if (have_prev_ && cfg_.direction == DirectionKind::lbfgs) {
        const RVec s = problem_->parameters() - prev_params_;
        const RVec y = metric_gradient_ - prev_metric_gradient_;
        history_.push(s, y);
    }
}

OptimizeResult GradientOptimizer::optimize() {
    OptimizeResult result;

    const auto finish = [&](StopReason reason, std::string message) {
        result.reason = reason;
        result.message = std::move(message);
        result.iterations = iteration_;
        result.final_cost = problem_->cost();
        result.final_fidelity = problem_->fidelity();
        return result;
    };

    if (cfg_.stopper(*this))
        return finish(StopReason::stopper, "stopper satisfied before first iteration");

    while (true) {
        refresh_gradients();

        RVec direction = cfg_.direction == DirectionKind::lbfgs
                             ? history_.direction(metric_gradient_)
                             : RVec(-metric_gradient_);
        if (gradient_.dot(direction) >= 0.0) {
            // Not a descent direction; reset to steepest descent in the metric.
            history_.clear();
            direction = -metric_gradient_;
            if (gradient_.dot(direction) >= 0.0)
                return finish(StopReason::line_search_failure,
                              "no descent direction (gradient vanishes)");
        }

        const RVec x = problem_->parameters();
        auto alpha = cfg_.step_finder(direction, *problem_, *this);

        // A failed or collapsed search along an L-BFGS direction usually
        // means stale curvature information; erase it and retry steepest.
        if ((!alpha || *alpha < cfg_.history_restart_step) &&
            cfg_.direction == DirectionKind::lbfgs && history_.size() > 0) {
            if (alpha)
                problem_->set_parameters(x);
            history_.clear();
            have_prev_ = false;
            direction = -metric_gradient_;
            alpha = cfg_.step_finder(direction, *problem_, *this);
        }
        if (!alpha)
            return finish(StopReason::line_search_failure, "line search found no admissible step");

        step_size_ = *alpha;
        prev_params_ = x;
        prev_metric_gradient_ = metric_gradient_;
        have_prev_ = true;
        problem_->set_parameters(x + step_size_ * direction);
        ++iteration_;

        if (cfg_.collector) {
            try {
                cfg_.collector(*this);
            } catch (const std::exception& e) {
                return finish(StopReason::collector_failure,
                              std::string("collector threw: ") + e.what());
            } catch (...) {
                return finish(StopReason::collector_failure, "collector threw");
            }
        }

        if (cfg_.restarter && cfg_.restarter(*this)) {
            if (auto* gp = dynamic_cast<GroupProblem*>(problem_.get()); gp && gp->can_redraw()) {
                gp->absorb_and_redraw();
                history_.clear();
                have_prev_ = false;
                ++superiteration_;
            }
        }

        if (cfg_.stopper(*this))
            return finish(StopReason::stopper, "stopper satisfied");
    }
}

namespace {

OptimizerConfig with_direction(OptimizerConfig cfg, DirectionKind kind) {
    cfg.direction = kind;
    return cfg;
}

} // namespace

GradientOptimizer make_grape_steepest_l2(std::shared_ptr<StateTransferProblem> p,
                                         OptimizerConfig cfg) {
    return GradientOptimizer(std::move(p), with_direction(std::move(cfg), DirectionKind::steepest));
}

GradientOptimizer make_grape_bfgs_l2(std::shared_ptr<StateTransferProblem> p,
                                     OptimizerConfig cfg) {
    return GradientOptimizer(std::move(p), with_direction(std::move(cfg), DirectionKind::lbfgs));
}

namespace {

std::shared_ptr<StateTransferProblem> with_h1(std::shared_ptr<StateTransferProblem> p) {
    if (!p)
        throw std::invalid_argument("make_grape: null problem");
    if (!p->options().h1_metric)
        throw std::invalid_argument("make_grape_*_h1: problem options must set h1_metric");
    return p;
}

} // namespace

GradientOptimizer make_grape_steepest_h1(std::shared_ptr<StateTransferProblem> p,
                                         OptimizerConfig cfg) {
    return GradientOptimizer(with_h1(std::move(p)),
                             with_direction(std::move(cfg), DirectionKind::steepest));
}

GradientOptimizer make_grape_bfgs_h1(std::shared_ptr<StateTransferProblem> p,
                                     OptimizerConfig cfg) {
    return GradientOptimizer(with_h1(std::move(p)),
                             with_direction(std::move(cfg), DirectionKind::lbfgs));
}

GradientOptimizer make_group_steepest(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg) {
    return GradientOptimizer(std::move(p), with_direction(std::move(cfg), DirectionKind::steepest));
}

GradientOptimizer make_group_bfgs(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg) {
    return GradientOptimizer(std::move(p), with_direction(std::move(cfg), DirectionKind::lbfgs));
}

Restarter default_dressed_restarter(double tol) {
    return [tol](GradientOptimizer& opt) { return opt.step_size() < tol; };
}

namespace {

std::shared_ptr<GroupProblem> require_maker(std::shared_ptr<GroupProblem> p) {
    if (!p || !p->can_redraw())
        throw std::invalid_argument("make_dgroup: problem needs a basis maker");
    return p;
}

} // namespace

GradientOptimizer make_dgroup_steepest(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg) {
    if (!cfg.restarter)
        cfg.restarter = default_dressed_restarter();
    return GradientOptimizer(require_maker(std::move(p)),
                             with_direction(std::move(cfg), DirectionKind::steepest));
}

GradientOptimizer make_dgroup_bfgs(std::shared_ptr<GroupProblem> p, OptimizerConfig cfg) {
    if (!cfg.restarter)
        cfg.restarter = default_dressed_restarter();
    return GradientOptimizer(require_maker(std::move(p)),
                             with_direction(std::move(cfg), DirectionKind::lbfgs));
}

} // namespace qoc1d::ctrl
