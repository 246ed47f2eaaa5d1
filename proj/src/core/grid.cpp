#include "qoc1d/core/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d {

SpatialGrid::SpatialGrid(double x_min, double x_max, int n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!(x_max > x_min))
        throw std::invalid_argument("SpatialGrid: x_max must exceed x_min");
    if (n < 8)
        throw std::invalid_argument("SpatialGrid: need at least 8 points");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw std::invalid_argument("SpatialGrid: bounds must be finite");

    dx_ = (x_max - x_min) / static_cast<double>(n - 1);
    x_.resize(n);
    for (int i = 0; i < n; ++i)
        x_[i] = x_min + i * dx_;

    // FFT-ordered wavenumbers, spacing 2*pi/(n*dx).
    k_.resize(n);
    const double dk = 2.0 * pi / (n * dx_);
    for (int j = 0; j < n; ++j)
        k_[j] = dk * (j <= n / 2 ? j : j - n);
}

bool SpatialGrid::compatible(const Basis& other) const {
    if (other.tag() != BasisTag::spatial_1d)
        return false;
    const auto& g = static_cast<const SpatialGrid&>(other);
    return g.n_ == n_ && g.x_min_ == x_min_ && g.x_max_ == x_max_;
}

std::shared_ptr<const SpatialGrid> make_spatial_grid(double x_min, double x_max, int n) {
    return std::make_shared<const SpatialGrid>(x_min, x_max, n);
}

TimeGrid::TimeGrid(int n_steps, double dt) : dt_(dt), n_steps_(n_steps) {
    if (n_steps < 2)
        throw std::invalid_argument("TimeGrid: need at least 2 steps");
    if (!(dt > 0.0))
        throw std::invalid_argument("TimeGrid: dt must be positive");
    duration_ = dt * (n_steps - 1);
}

TimeGrid TimeGrid::from_duration(double duration, double dt) {
    if (!(dt > 0.0) || !(duration > 0.0))
        throw std::invalid_argument("TimeGrid: duration and dt must be positive");
    const int n_steps = static_cast<int>(std::floor(duration / dt)) + 1;
    TimeGrid tg(n_steps, dt);
    tg.duration_ = duration;
    return tg;
}

} // namespace qoc1d
