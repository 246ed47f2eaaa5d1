#pragma once

#include <functional>
#include <memory>

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/operators.hpp"
#include "qoc1d/core/types.hpp"

namespace qoc1d::gpe {

/// Map from a control value to potential values on the grid. Evaluation
/// must be pure: the same control always yields the same values.
class PotentialFunction {
public:
    using Fn = std::function<RVec(double)>;

    PotentialFunction() = default;
    PotentialFunction(Fn fn, double initial_control)
        : fn_(std::move(fn)), initial_control_(initial_control) {}

    RVec operator()(double u) const { return fn_(u); }
    double initial_control() const { return initial_control_; }
    explicit operator bool() const { return static_cast<bool>(fn_); }

private:
    Fn fn_;
    double initial_control_ = 0.0;
};

/// V(x,u) = p2 (x-u)^2 + p4 (x-u)^4 + p6 (x-u)^6.
RVec anharmonic_potential_values(const SpatialGrid& grid, double u,
                                 double p2, double p4, double p6);
DiagonalOperator anharmonic_potential(const SpatialGrid& grid, double u,
                                      double p2, double p4, double p6);

/// dV/du = -(2 p2 (x-u) + 4 p4 (x-u)^3 + 6 p6 (x-u)^5).
RVec anharmonic_potential_derivative_values(const SpatialGrid& grid, double u,
                                            double p2, double p4, double p6);
DiagonalOperator anharmonic_potential_derivative(const SpatialGrid& grid, double u,
                                                 double p2, double p4, double p6);

PotentialFunction make_anharmonic_potential(std::shared_ptr<const SpatialGrid> grid,
                                            double p2, double p4, double p6,
                                            double initial_control);
PotentialFunction make_anharmonic_potential_derivative(std::shared_ptr<const SpatialGrid> grid,
                                                       double p2, double p4, double p6,
                                                       double initial_control);

/// V(x,u) = -depth * exp(-(x-u)^2 / (2 width^2)), a movable optical tweezer.
PotentialFunction make_gaussian_tweezer(std::shared_ptr<const SpatialGrid> grid,
                                        double depth, double width, double initial_control);
PotentialFunction make_gaussian_tweezer_derivative(std::shared_ptr<const SpatialGrid> grid,
                                                   double depth, double width,
                                                   double initial_control);

} // namespace qoc1d::gpe
