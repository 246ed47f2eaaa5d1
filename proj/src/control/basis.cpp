#include "qoc1d/control/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc1d::ctrl {

namespace {

double solve_steepness(double duration, double plateau, double plateau_at) {
    // Normalized value at t = plateau_at*T as a function of the ramp
    // steepness a, with the ramp centered at plateau_at*T/2. Increasing
    // from the linear-ramp limit towards 1 as a grows; bisect.
    const double center = 0.5 * plateau_at * duration;
    const auto s_of = [duration, center, plateau_at](double a) {
        const auto r = [a, center](double t) {
            return 1.0 / (1.0 + std::exp(-a * (t - center)));
        };
        return (r(plateau_at * duration) - r(0.0)) / (r(0.5 * duration) - r(0.0));
    };
    double lo = 1e-9 / duration, hi = 1.0 / duration;
    while (s_of(hi) < plateau)
        hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (s_of(mid) < plateau ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

SigmoidShape::SigmoidShape(double duration, double plateau_param, double plateau_at)
    : duration_(duration), plateau_(plateau_param), plateau_at_(plateau_at) {
    if (!(duration > 0.0))
        throw std::invalid_argument("SigmoidShape: duration must be positive");
    if (!(plateau_param > 0.0 && plateau_param < 1.0))
        throw std::invalid_argument("SigmoidShape: plateau_param must lie in (0,1)");
    if (!(plateau_at > 0.0 && plateau_at < 0.5))
        throw std::invalid_argument("SigmoidShape: plateau_at must lie in (0, 0.5)");
    // The logistic construction cannot go below its linear-ramp limit.
    const double limit = plateau_at / (1.0 - plateau_at);
    if (plateau_param <= limit + 1e-9)
        throw std::invalid_argument("SigmoidShape: plateau_param too small for this envelope");
    steepness_ = solve_steepness(duration, plateau_param, plateau_at);
}

double SigmoidShape::raw(double t) const {
    return 1.0 / (1.0 + std::exp(-steepness_ * (t - 0.5 * plateau_at_ * duration_)));
}

double SigmoidShape::operator()(double t) const {
    const double m = std::min(raw(t), raw(duration_ - t));
    const double base = raw(0.0);
    const double peak = raw(0.5 * duration_);
    return (m - base) / (peak - base);
}

RVec SigmoidShape::sample(const TimeGrid& tg) const {
    // Mirror the first half so the sampled envelope is exactly symmetric,
    // and pin exact zeros at both ends.
    const int n = tg.n_steps();
    RVec s(n);
    for (int i = 0; i <= (n - 1) / 2; ++i) {
        s[i] = (*this)(tg.t(i));
        s[n - 1 - i] = s[i];
    }
    s[0] = 0.0;
    s[n - 1] = 0.0;
    return s;
}

RVec make_sigmoid_shape(const TimeGrid& tg, double plateau_param, double plateau_at) {
    return SigmoidShape(tg.duration(), plateau_param, plateau_at).sample(tg);
}

namespace {

double uniform_symmetric(std::mt19937_64& rng, double half_width) {
    // Explicit bit mapping keeps draws identical across standard libraries.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0,1)
    return (2.0 * unit - 1.0) * half_width;
}

} // namespace

SineBasisSample make_sine_basis(int m_count, const TimeGrid& tg, double max_rand,
                                std::mt19937_64& rng) {
    if (m_count < 1)
        throw std::invalid_argument("make_sine_basis: need at least one function");
    if (max_rand < 0.0 || max_rand > 0.5)
        throw std::invalid_argument("make_sine_basis: max_rand must lie in [0, 0.5]");
    SineBasisSample out;
    out.thetas.resize(m_count);
    out.columns.resize(tg.n_steps(), m_count);
    const double duration = tg.duration();
    for (int m = 0; m < m_count; ++m) {
        out.thetas[m] = uniform_symmetric(rng, max_rand);
        const double freq = (m + 1 + out.thetas[m]) * pi / duration;
        for (int i = 0; i < tg.n_steps(); ++i)
            out.columns(i, m) = std::sin(freq * tg.t(i));
    }
    return out;
}

SineBasisSample make_sine_basis(int m_count, const TimeGrid& tg, double max_rand,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return make_sine_basis(m_count, tg, max_rand, rng);
}

GroupBasis::GroupBasis(TimeGrid tg, RMat shaped_columns, RVec thetas)
    : time_(tg), columns_(std::move(shaped_columns)), thetas_(std::move(thetas)) {
    if (columns_.rows() != time_.n_steps() || columns_.cols() < 1)
        throw std::invalid_argument("GroupBasis: column shape mismatch");
    if (thetas_.size() != columns_.cols())
        throw std::invalid_argument("GroupBasis: theta record mismatch");
    for (int m = 0; m < columns_.cols(); ++m)
        if (columns_(0, m) != 0.0 || columns_(columns_.rows() - 1, m) != 0.0)
            throw std::invalid_argument("GroupBasis: columns must vanish at t=0 and t=T");
}

GroupBasis make_shaped_sine_basis(int m_count, const TimeGrid& tg, const RVec& shape_values,
                                  double max_rand, std::mt19937_64& rng) {
    if (shape_values.size() != tg.n_steps())
        throw std::invalid_argument("make_shaped_sine_basis: shape sample size mismatch");
    SineBasisSample raw = make_sine_basis(m_count, tg, max_rand, rng);
    RMat shaped = shape_values.asDiagonal() * raw.columns;
    return GroupBasis(tg, std::move(shaped), std::move(raw.thetas));
}

BasisMaker make_sine_basis_maker(int m_count, const TimeGrid& tg, const RVec& shape_values,
                                 double max_rand, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    RVec shape = shape_values;
    return [m_count, tg, shape, max_rand, rng]() {
        return make_shaped_sine_basis(m_count, tg, shape, max_rand, *rng);
    };
}

GroupProblem::GroupProblem(std::shared_ptr<StateTransferProblem> base, GroupBasis basis,
                           BasisMaker maker)
    : base_(std::move(base)), basis_(std::move(basis)),
      u0_(base_ ? base_->control() : ControlField(TimeGrid(2, 1.0), 1)),
      maker_(std::move(maker)) {
    if (!base_)
        throw std::invalid_argument("GroupProblem: null base problem");
    if (!(basis_.time_grid() == base_->control().time_grid()))
        throw std::invalid_argument("GroupProblem: basis time grid mismatch");
    coeffs_ = RMat::Zero(basis_.size(), base_->control().n_fields());
}

Eigen::Index GroupProblem::n_parameters() const {
    return static_cast<Eigen::Index>(coeffs_.rows()) * coeffs_.cols();
}

RVec GroupProblem::parameters() const {
    RVec p(n_parameters());
    for (int m = 0; m < coeffs_.rows(); ++m)
        for (int f = 0; f < coeffs_.cols(); ++f)
            p[m * coeffs_.cols() + f] = coeffs_(m, f);
    return p;
}

void GroupProblem::push_control() {
    RMat values = u0_.values() + basis_.columns() * coeffs_;
    base_->update(values);
}

void GroupProblem::set_parameters(const RVec& p) {
    if (p.size() != n_parameters())
        throw std::invalid_argument("GroupProblem: parameter size mismatch");
    for (int m = 0; m < coeffs_.rows(); ++m)
        for (int f = 0; f < coeffs_.cols(); ++f)
            coeffs_(m, f) = p[m * coeffs_.cols() + f];
    push_control();
}

void GroupProblem::set_coefficients(const RMat& c) {
    if (c.rows() != coeffs_.rows() || c.cols() != coeffs_.cols())
        throw std::invalid_argument("GroupProblem: coefficient shape mismatch");
    coeffs_ = c;
    push_control();
}

RVec GroupProblem::gradient() {
    // Quadrature projection of the dt-scaled L2 gradient onto the shaped
    // basis columns; this is also the exact chain-rule coefficient gradient.
    const RVec gl2 = base_->gradient_l2();
    const int n_steps = base_->control().n_steps();
    const int n_fields = base_->control().n_fields();
    RVec out(n_parameters());
    for (int f = 0; f < n_fields; ++f) {
        RVec gf(n_steps);
        for (int i = 0; i < n_steps; ++i)
            gf[i] = gl2[static_cast<Eigen::Index>(i) * n_fields + f];
        const RVec proj = basis_.columns().transpose() * gf;
        for (int m = 0; m < basis_.size(); ++m)
            out[static_cast<Eigen::Index>(m) * n_fields + f] = proj[m];
    }
    return out;
}

void GroupProblem::absorb_and_redraw() {
    if (!maker_)
        throw std::logic_error("GroupProblem: no basis maker for redraw");
    u0_ = base_->control();
    coeffs_.setZero();
    basis_ = maker_();
    push_control(); // control is preserved exactly: u = u0 + 0
}

} // namespace qoc1d::ctrl
