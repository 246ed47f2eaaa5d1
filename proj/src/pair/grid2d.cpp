#include "qoc1d/pair/grid2d.hpp"

#include <stdexcept>

namespace qoc1d::pair {

TensorGrid2D::TensorGrid2D(std::shared_ptr<const SpatialGrid> axis) : axis_(std::move(axis)) {
    if (!axis_)
        throw std::invalid_argument("TensorGrid2D: null axis");
}

bool TensorGrid2D::compatible(const Basis& other) const {
    if (other.tag() != BasisTag::spatial_2d)
        return false;
    const auto& g = static_cast<const TensorGrid2D&>(other);
    return axis_->compatible(*g.axis_);
}

std::shared_ptr<const TensorGrid2D> make_tensor_grid(std::shared_ptr<const SpatialGrid> axis) {
    return std::make_shared<const TensorGrid2D>(std::move(axis));
}

} // namespace qoc1d::pair
