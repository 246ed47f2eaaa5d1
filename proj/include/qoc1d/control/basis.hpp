#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>

#include "qoc1d/control/problem.hpp"

namespace qoc1d::ctrl {

/// Symmetric envelope with S(0)=S(T)=0, S(T/2)=1, monotone on [0,T/2],
/// reaching plateau_param at t = plateau_at*T (default 0.1*T). Built from a
/// logistic ramp r(t) = 1/(1+exp(-a(t-plateau_at*T/2))) symmetrized via
/// min(r(t), r(T-t)), baseline-subtracted and peak-normalized.
class SigmoidShape {
public:
    SigmoidShape(double duration, double plateau_param, double plateau_at = 0.1);

    double operator()(double t) const;
    RVec sample(const TimeGrid& tg) const;

    double duration() const { return duration_; }
    double plateau_param() const { return plateau_; }
    double plateau_at() const { return plateau_at_; }

private:
    double duration_, plateau_, plateau_at_, steepness_;

    double raw(double t) const;
};

RVec make_sigmoid_shape(const TimeGrid& tg, double plateau_param,
                        double plateau_at = 0.1);

/// Randomized sine family f_m(t) = sin((m + theta_m) pi t / T), m = 1..M,
/// theta_m uniform in [-max_rand, max_rand].
struct SineBasisSample {
    RMat columns; // n_steps x M
    RVec thetas;  // length M
};

SineBasisSample make_sine_basis(int m_count, const TimeGrid& tg, double max_rand,
                                std::mt19937_64& rng);
SineBasisSample make_sine_basis(int m_count, const TimeGrid& tg, double max_rand,
                                std::uint64_t seed);

/// Shaped reduced basis: columns are S(t) * f_m(t); every column vanishes
/// at t = 0 and t = T.
class GroupBasis {
public:
    GroupBasis(TimeGrid tg, RMat shaped_columns, RVec thetas);

    const TimeGrid& time_grid() const { return time_; }
    int size() const { return static_cast<int>(columns_.cols()); }
    const RMat& columns() const { return columns_; }
    const RVec& thetas() const { return thetas_; }

private:
    TimeGrid time_;
    RMat columns_;
    RVec thetas_;
};

GroupBasis make_shaped_sine_basis(int m_count, const TimeGrid& tg, const RVec& shape_values,
                                  double max_rand, std::mt19937_64& rng);

using BasisMaker = std::function<GroupBasis()>;

/// Sequential draws from one seeded engine, one fresh basis per call.
BasisMaker make_sine_basis_maker(int m_count, const TimeGrid& tg, const RVec& shape_values,
                                 double max_rand, std::uint64_t seed);

/// Reduced-parametrization view of a state-transfer problem:
/// u(t; c) = u0(t) + S(t) sum_m c_m f_m(t), optimized over c per field.
class GroupProblem : public ObjectiveProblem {
public:
    GroupProblem(std::shared_ptr<StateTransferProblem> base, GroupBasis basis,
                 BasisMaker maker = nullptr);

    Eigen::Index n_parameters() const override;
    RVec parameters() const override;
    void set_parameters(const RVec& p) override;
    double cost() override { return base_->cost(); }
    double fidelity() override { return base_->fidelity(); }
    RVec gradient() override;
    long n_propagation_steps() const override { return base_->n_propagation_steps(); }

    const RMat& coefficients() const { return coeffs_; }
    void set_coefficients(const RMat& c);
    const ControlField& reference_control() const { return u0_; }
    const GroupBasis& basis() const { return basis_; }
    StateTransferProblem& base() { return *base_; }

    bool can_redraw() const { return static_cast<bool>(maker_); }

    /// Superiteration restart: absorb the current control into the
    /// reference, zero the coefficients, draw a fresh basis.
    void absorb_and_redraw();

private:
    std::shared_ptr<StateTransferProblem> base_;
    GroupBasis basis_;
    ControlField u0_;
    RMat coeffs_; // M x n_fields
    BasisMaker maker_;

    void push_control();
};

} // namespace qoc1d::ctrl
