#pragma once

#include <memory>

#include "qoc1d/core/types.hpp"

namespace qoc1d {

enum class BasisTag { spatial_1d, spatial_2d, fock, few_mode };

/// Common interface of the discretization a StateVector lives on. Concrete
/// bases are immutable after construction and shared via shared_ptr.
class Basis {
public:
    virtual ~Basis() = default;

    virtual BasisTag tag() const = 0;
    virtual Eigen::Index dim() const = 0;
    /// Quadrature weight of the rectangle rule on this basis (dx, dx^2 or 1).
    virtual double quadrature_weight() const = 0;
    virtual bool compatible(const Basis& other) const = 0;
};

/// Uniform grid on the closed interval [x_min, x_max] with n points,
/// dx = (x_max - x_min)/(n-1). The spectral wavenumbers use FFT ordering
/// with spacing 2*pi/(n*dx); the FFT treats the signal as n-periodic.
class SpatialGrid final : public Basis {
public:
    SpatialGrid(double x_min, double x_max, int n);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int n() const { return n_; }
    double dx() const { return dx_; }
    const RVec& x() const { return x_; }
    const RVec& k() const { return k_; }

    BasisTag tag() const override { return BasisTag::spatial_1d; }
    Eigen::Index dim() const override { return n_; }
    double quadrature_weight() const override { return dx_; }
    bool compatible(const Basis& other) const override;

private:
    double x_min_, x_max_, dx_;
    int n_;
    RVec x_, k_;
};

std::shared_ptr<const SpatialGrid> make_spatial_grid(double x_min, double x_max, int n);

/// Uniform time discretization t_i = i*dt, i = 0..n_steps-1.
class TimeGrid {
public:
    TimeGrid(int n_steps, double dt);

    /// Number of steps follows the floor(duration/dt) + 1 convention.
    static TimeGrid from_duration(double duration, double dt);

    int n_steps() const { return n_steps_; }
    double dt() const { return dt_; }
    double duration() const { return duration_; }
    double t(int i) const { return i * dt_; }

    bool operator==(const TimeGrid& other) const {
        return n_steps_ == other.n_steps_ && dt_ == other.dt_;
    }

private:
    double dt_;
    int n_steps_;
    double duration_;
};

/// Trivial basis for dense few-mode models.
class FewModeBasis final : public Basis {
public:
    explicit FewModeBasis(Eigen::Index dim) : dim_(dim) {}

    BasisTag tag() const override { return BasisTag::few_mode; }
    Eigen::Index dim() const override { return dim_; }
    double quadrature_weight() const override { return 1.0; }
    bool compatible(const Basis& other) const override {
        return other.tag() == BasisTag::few_mode && other.dim() == dim_;
    }

private:
    Eigen::Index dim_;
};

} // namespace qoc1d
