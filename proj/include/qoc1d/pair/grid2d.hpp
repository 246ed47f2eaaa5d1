#pragma once

#include <memory>

#include "qoc1d/core/grid.hpp"

namespace qoc1d::pair {

/// Tensor product of one spatial axis with itself; states are row-major
/// flattened n x n arrays indexed as i1*n + i2.
class TensorGrid2D final : public Basis {
public:
    explicit TensorGrid2D(std::shared_ptr<const SpatialGrid> axis);

    const SpatialGrid& axis() const { return *axis_; }
    std::shared_ptr<const SpatialGrid> axis_ptr() const { return axis_; }
    int n_per_axis() const { return axis_->n(); }
    double dx() const { return axis_->dx(); }

    BasisTag tag() const override { return BasisTag::spatial_2d; }
    Eigen::Index dim() const override {
        return static_cast<Eigen::Index>(axis_->n()) * axis_->n();
    }
    double quadrature_weight() const override { return axis_->dx() * axis_->dx(); }
    bool compatible(const Basis& other) const override;

private:
    std::shared_ptr<const SpatialGrid> axis_;
};

std::shared_ptr<const TensorGrid2D> make_tensor_grid(std::shared_ptr<const SpatialGrid> axis);

} // namespace qoc1d::pair
