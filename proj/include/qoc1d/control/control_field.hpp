#pragma once

#include <functional>

#include "qoc1d/core/grid.hpp"
#include "qoc1d/core/types.hpp"

namespace qoc1d::ctrl {

/// One or more real time series on a TimeGrid; values is n_steps x n_fields.
class ControlField {
public:
    ControlField(TimeGrid time_grid, int n_fields);
    ControlField(TimeGrid time_grid, RMat values);

    const TimeGrid& time_grid() const { return time_; }
    int n_steps() const { return time_.n_steps(); }
    int n_fields() const { return static_cast<int>(values_.cols()); }
    double dt() const { return time_.dt(); }

    const RMat& values() const { return values_; }
    RMat& values() { return values_; }

    RVec get(int step) const { return values_.row(step).transpose(); }
    RVec front() const { return get(0); }
    RVec back() const { return get(n_steps() - 1); }

    double& at(int step, int field = 0) { return values_(step, field); }
    double at(int step, int field = 0) const { return values_(step, field); }

    ControlField map(const std::function<double(double)>& fn) const;

    ControlField& operator*=(double s);
    ControlField& operator+=(const ControlField& other);

private:
    TimeGrid time_;
    RMat values_;
};

/// Single field with values t_i = i*dt (a time axis usable as a building
/// block for control guesses).
ControlField make_time_control(int n_steps, double dt);

ControlField operator*(double s, const ControlField& f);
ControlField operator*(const ControlField& f, double s);
ControlField operator+(ControlField a, const ControlField& b);
ControlField operator-(ControlField a, const ControlField& b);

ControlField sin(const ControlField& f);
ControlField exp(const ControlField& f);

} // namespace qoc1d::ctrl
