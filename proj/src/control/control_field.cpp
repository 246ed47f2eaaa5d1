#include "qoc1d/control/control_field.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::ctrl {

ControlField::ControlField(TimeGrid time_grid, int n_fields)
    : time_(time_grid), values_(RMat::Zero(time_grid.n_steps(), n_fields)) {
    if (n_fields < 1)
        throw std::invalid_argument("ControlField: need at least one field");
}

ControlField::ControlField(TimeGrid time_grid, RMat values)
    : time_(time_grid), values_(std::move(values)) {
    if (values_.rows() != time_.n_steps() || values_.cols() < 1)
        throw std::invalid_argument("ControlField: values shape does not match time grid");
    if (!values_.allFinite())
        throw std::invalid_argument("ControlField: values must be finite");
}

ControlField ControlField::map(const std::function<double(double)>& fn) const {
    RMat out = values_.unaryExpr([&fn](double v) { return fn(v); });
    return ControlField(time_, std::move(out));
}

ControlField& ControlField::operator*=(double s) {
    values_ *= s;
    return *this;
}

ControlField& ControlField::operator+=(const ControlField& other) {
    if (!(time_ == other.time_) || values_.cols() != other.values_.cols())
        throw std::invalid_argument("ControlField: incompatible fields");
    values_ += other.values_;
    return *this;
}

ControlField make_time_control(int n_steps, double dt) {
    TimeGrid tg(n_steps, dt);
    RMat values(n_steps, 1);
    for (int i = 0; i < n_steps; ++i)
        values(i, 0) = tg.t(i);
    return ControlField(tg, std::move(values));
}

ControlField operator*(double s, const ControlField& f) {
    ControlField out = f;
    out *= s;
    return out;
}

ControlField operator*(const ControlField& f, double s) { return s * f; }

ControlField operator+(ControlField a, const ControlField& b) {
    a += b;
    return a;
}

ControlField operator-(ControlField a, const ControlField& b) {
    a += (-1.0) * b;
    return a;
}

ControlField sin(const ControlField& f) {
    return f.map([](double v) { return std::sin(v); });
}

ControlField exp(const ControlField& f) {
    return f.map([](double v) { return std::exp(v); });
}

} // namespace qoc1d::ctrl
