#include "qoc1d/gpe/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::gpe {

RVec anharmonic_potential_values(const SpatialGrid& grid, double u,
                                 double p2, double p4, double p6) {
    if (!std::isfinite(u) || !std::isfinite(p2) || !std::isfinite(p4) || !std::isfinite(p6))
        throw std::invalid_argument("anharmonic_potential: parameters must be finite");
    const auto xu = grid.x().array() - u;
    const auto xu2 = xu * xu;
    return (p2 * xu2 + p4 * xu2 * xu2 + p6 * xu2 * xu2 * xu2).matrix();
}

DiagonalOperator anharmonic_potential(const SpatialGrid& grid, double u,
                                      double p2, double p4, double p6) {
    return DiagonalOperator(anharmonic_potential_values(grid, u, p2, p4, p6));
}

RVec anharmonic_potential_derivative_values(const SpatialGrid& grid, double u,
                                            double p2, double p4, double p6) {
    if (!std::isfinite(u) || !std::isfinite(p2) || !std::isfinite(p4) || !std::isfinite(p6))
        throw std::invalid_argument("anharmonic_potential_derivative: parameters must be finite");
    const auto xu = grid.x().array() - u;
    const auto xu2 = xu * xu;
    return (-(2.0 * p2 * xu + 4.0 * p4 * xu2 * xu + 6.0 * p6 * xu2 * xu2 * xu)).matrix();
}

DiagonalOperator anharmonic_potential_derivative(const SpatialGrid& grid, double u,
                                                 double p2, double p4, double p6) {
    return DiagonalOperator(anharmonic_potential_derivative_values(grid, u, p2, p4, p6));
}

PotentialFunction make_anharmonic_potential(std::shared_ptr<const SpatialGrid> grid,
                                            double p2, double p4, double p6,
                                            double initial_control) {
    return PotentialFunction(
        [grid, p2, p4, p6](double u) {
            return anharmonic_potential_values(*grid, u, p2, p4, p6);
        },
        initial_control);
}

PotentialFunction make_anharmonic_potential_derivative(std::shared_ptr<const SpatialGrid> grid,
                                                       double p2, double p4, double p6,
                                                       double initial_control) {
    return PotentialFunction(
        [grid, p2, p4, p6](double u) {
            return anharmonic_potential_derivative_values(*grid, u, p2, p4, p6);
        },
        initial_control);
}

PotentialFunction make_gaussian_tweezer(std::shared_ptr<const SpatialGrid> grid,
                                        double depth, double width, double initial_control) {
    if (!(width > 0.0))
        throw std::invalid_argument("make_gaussian_tweezer: width must be positive");
    return PotentialFunction(
        [grid, depth, width](double u) -> RVec {
            const auto xu = grid->x().array() - u;
            return (-depth * (-xu.square() / (2.0 * width * width)).exp()).matrix();
        },
        initial_control);
}

PotentialFunction make_gaussian_tweezer_derivative(std::shared_ptr<const SpatialGrid> grid,
                                                   double depth, double width,
                                                   double initial_control) {
    if (!(width > 0.0))
        throw std::invalid_argument("make_gaussian_tweezer_derivative: width must be positive");
    return PotentialFunction(
        [grid, depth, width](double u) -> RVec {
            const auto xu = grid->x().array() - u;
            const double w2 = width * width;
            return (-depth * (xu / w2) * (-xu.square() / (2.0 * w2)).exp()).matrix();
        },
        initial_control);
}

} // namespace qoc1d::gpe
