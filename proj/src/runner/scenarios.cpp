#include "qoc1d/runner/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <Eigen/Eigenvalues>

#include "qoc1d/control/backends.hpp"
#include "qoc1d/core/errors.hpp"
#include "qoc1d/core/operators.hpp"
#include "qoc1d/gpe/stationary.hpp"
#include "qoc1d/lattice/lanczos.hpp"
#include "qoc1d/pair/hamiltonian.hpp"

namespace qoc1d::runner {

namespace {

using ctrl::ControlField;

TimeGrid time_grid_of(const json& p) {
    return TimeGrid::from_duration(p.at("duration").get<double>(), p.at("dt").get<double>());
}

ControlField ramp_control(const TimeGrid& tg, double first, double last) {
    RMat values(tg.n_steps(), 1);
    for (int i = 0; i < tg.n_steps(); ++i)
        values(i, 0) = first + (last - first) * tg.t(i) / tg.duration();
    return ControlField(tg, std::move(values));
}

ScenarioBundle build_gpe_like(const json& p, bool single_particle) {
    const auto grid = make_spatial_grid(p.at("grid").at("x_min").get<double>(),
                                        p.at("grid").at("x_max").get<double>(),
                                        p.at("grid").at("n").get<int>());
    const double kappa = p.at("kin_factor").get<double>();
    const TimeGrid tg = time_grid_of(p);

    gpe::PotentialFunction potential, dpotential;
    ControlField u(tg, 1);
    if (!single_particle) {
        const double p2 = p.at("p2").get<double>();
        const double p4 = p.at("p4").get<double>();
        const double p6 = p.at("p6").get<double>();
        potential = gpe::make_anharmonic_potential(grid, p2, p4, p6, 0.0);
        dpotential = gpe::make_anharmonic_potential_derivative(grid, p2, p4, p6, 0.0);
        const double amplitude = p.at("initial_amplitude").get<double>();
        u = amplitude * ctrl::sin((pi / tg.duration()) * ctrl::make_time_control(tg.n_steps(), tg.dt()));
    } else {
        const double depth = p.at("depth").get<double>();
        const double width = p.at("width").get<double>();
        const double u0 = p.at("u_initial").get<double>();
        potential = gpe::make_gaussian_tweezer(grid, depth, width, u0);
        dpotential = gpe::make_gaussian_tweezer_derivative(grid, depth, width, u0);
        u = ramp_control(tg, u0, p.at("u_final").get<double>());
    }

    const double beta = single_particle ? 0.0 : p.at("g1d").get<double>();
    gpe::GpeHamiltonian h(grid, kappa, potential, beta);
    if (p.at("analytic_dhdu").get<bool>())
        h.set_analytic_derivative(dpotential);

    const double tol = p.at("ground_state_tol").get<double>();
    const double u_first = u.front()[0];
    const double u_last = u.back()[0];
    StateVector psi0 = gpe::ground_state(h, u_first, tol);
    StateVector psit = single_particle ? gpe::ground_state(h, u_last, tol)
                                       : gpe::first_excited_state(h, u_last, tol);

    ctrl::ProblemOptions opts;
    opts.gamma = p.at("gamma").get<double>();
    opts.sigma = p.at("sigma").get<double>();
    if (opts.sigma > 0.0) {
        opts.u_min = RVec::Constant(1, p.at("u_min").get<double>());
        opts.u_max = RVec::Constant(1, p.at("u_max").get<double>());
    }

    ScenarioBundle bundle;
    auto dyn = std::make_shared<ctrl::GpeDynamics>(h);
    bundle.dynamics = dyn;
    bundle.problem = std::make_shared<ctrl::StateTransferProblem>(dyn, psi0, psit, u, opts);
    bundle.potential_of_u = [h](double uu) { return h.potential_values(uu); };
    bundle.axis = grid->x();
    bundle.time_per_step = tg.dt();

    DiagonalOperator x_op(grid->x());
    bundle.append_observables = [x_op](DataContainer& dc, const StateVector& psi,
                                       const std::string& suffix, bool) {
        dc.append("x_expect" + suffix, expectation_value(x_op, psi));
    };
    return bundle;
}

ScenarioBundle build_bosehubbard(const json& p) {
    const int l = p.at("n_sites").get<int>();
    const int n = p.at("n_particles").get<int>();
    const auto basis = lattice::make_fock_basis(l, n);
    const TimeGrid tg = time_grid_of(p);

    const lattice::BoundTransform transform(p.at("interaction_min").get<double>(),
                                            p.at("interaction_max").get<double>());

    RVec site_positions(l);
    for (int i = 0; i < l; ++i)
        site_positions[i] = l == 1 ? 0.0 : -1.0 + 2.0 * i / (l - 1);
    const RVec site_potential =
        p.at("site_potential_coefficient").get<double>() * site_positions.cwiseProduct(site_positions);

    lattice::LatticeHamiltonian h = lattice::make_bose_hubbard(
        basis, p.at("j_hopping").get<double>(), site_potential, transform,
        p.at("periodic").get<bool>());

    ControlField u = exponential_ramp(transform.u_min, p.at("interaction_target").get<double>(),
                                      transform.u_max, tg);

    const double tol = p.at("ground_state_tol").get<double>();
    // The state is prepared at interaction_initial (default 4), while the
    // ramp itself starts at U_min + 0.5; these are deliberately distinct.
    const double u_prepare = transform.inverse(p.at("interaction_initial").get<double>());
    const auto eig0 = lattice::ground_state_sparse(h.assemble(u_prepare), tol);
    const auto eigT = lattice::ground_state_sparse(h.assemble(u.back()[0]), tol);
    StateVector psi0(eig0.state, basis);
    StateVector psit(eigT.state, basis);

    ctrl::ProblemOptions opts;
    opts.gamma = p.at("gamma").get<double>();
    opts.sigma = p.at("sigma").get<double>();
    if (opts.sigma > 0.0) {
        opts.u_min = RVec::Constant(1, -1.0);
        opts.u_max = RVec::Constant(1, 1.0);
    }

    ScenarioBundle bundle;
    auto dyn = std::make_shared<ctrl::LatticeDynamics>(h, p.at("krylov_order").get<int>());
    bundle.dynamics = dyn;
    bundle.problem = std::make_shared<ctrl::StateTransferProblem>(dyn, psi0, psit, u, opts);
    bundle.axis = site_positions;
    bundle.time_per_step = tg.dt();

    std::vector<lattice::SparseOperator> number_ops;
    for (int s = 0; s < l; ++s)
        number_ops.push_back(lattice::number_operator(*basis, s));
    auto basis_ref = basis;
    bundle.append_observables = [number_ops, basis_ref, l](DataContainer& dc,
                                                           const StateVector& psi,
                                                           const std::string& suffix,
                                                           bool snapshot) {
        RVec occupation(l);
        for (int s = 0; s < l; ++s)
            occupation[s] = expectation_value(number_ops[s], psi);
        dc.append("n_expect" + suffix, occupation);
        if (snapshot) {
            const CMat rho = lattice::single_particle_density_matrix(psi, *basis_ref);
            CVec flat(rho.size());
            for (int i = 0; i < rho.rows(); ++i)
                for (int j = 0; j < rho.cols(); ++j)
                    flat[i * rho.cols() + j] = rho(i, j);
            dc.append("rho1" + suffix, flat);
        }
    };
    return bundle;
}

ScenarioBundle build_twoparticle(const json& p) {
    const auto axis = make_spatial_grid(p.at("grid").at("x_min").get<double>(),
                                        p.at("grid").at("x_max").get<double>(),
                                        p.at("grid").at("n").get<int>());
    const auto grid = pair::make_tensor_grid(axis);
    const TimeGrid tg = time_grid_of(p);

    const double p2 = p.at("p2").get<double>();
    const double u0 = p.at("u_initial").get<double>();
    gpe::PotentialFunction trap = gpe::make_anharmonic_potential(axis, p2, 0.0, 0.0, u0);
    gpe::PotentialFunction dtrap = gpe::make_anharmonic_potential_derivative(axis, p2, 0.0, 0.0, u0);

    pair::TwoParticleHamiltonian h(grid, p.at("kin_factor").get<double>(), trap,
                                   p.at("g1d").get<double>());
    if (p.at("analytic_dhdu").get<bool>())
        h.set_analytic_derivative(dtrap);

    ControlField u = ramp_control(tg, u0, p.at("u_final").get<double>());

    const double tol = p.at("ground_state_tol").get<double>();
    StateVector psi0 = pair::ground_state_2d(h, u.front()[0], tol);
    StateVector psit = pair::ground_state_2d(h, u.back()[0], tol);

    ctrl::ProblemOptions opts;
    opts.gamma = p.at("gamma").get<double>();
    opts.sigma = p.at("sigma").get<double>();
    if (opts.sigma > 0.0) {
        opts.u_min = RVec::Constant(1, -1.0);
        opts.u_max = RVec::Constant(1, 1.0);
    }

    ScenarioBundle bundle;
    auto dyn = std::make_shared<ctrl::PairDynamics>(h);
    bundle.dynamics = dyn;
    bundle.problem = std::make_shared<ctrl::StateTransferProblem>(dyn, psi0, psit, u, opts);
    bundle.potential_of_u = [trap](double uu) { return trap(uu); };
    bundle.axis = axis->x();
    bundle.time_per_step = tg.dt();

    const int na = axis->n();
    const RVec x = axis->x();
    const double w = grid->quadrature_weight();
    bundle.append_observables = [na, x, w](DataContainer& dc, const StateVector& psi,
                                           const std::string& suffix, bool) {
        // <x_1>; equals <x_2> for exchange-symmetric states.
        double acc = 0.0;
        const CVec& a = psi.amplitudes();
        for (int i = 0; i < na; ++i) {
            double row = 0.0;
            for (int j = 0; j < na; ++j)
                row += std::norm(a[static_cast<Eigen::Index>(i) * na + j]);
            acc += x[i] * row;
        }
        dc.append("x_expect" + suffix, acc * w);
    };
    return bundle;
}

ScenarioBundle build_twolevel(const json& p) {
    const TimeGrid tg = time_grid_of(p);
    lattice::FewModeHamiltonian h = lattice::landau_zener_hamiltonian(p.at("delta").get<double>());

    ControlField u = ramp_control(tg, p.at("u_initial").get<double>(),
                                  p.at("u_final").get<double>());

    auto dyn = std::make_shared<ctrl::FewModeDynamics>(h);
    const auto eigen_ground = [&h, &dyn](double uu) {
        Eigen::SelfAdjointEigenSolver<CMat> solver(h.assemble(RVec::Constant(1, uu)));
        return StateVector(solver.eigenvectors().col(0), dyn->basis());
    };
    StateVector psi0 = eigen_ground(u.front()[0]);
    StateVector psit = eigen_ground(u.back()[0]);

    ctrl::ProblemOptions opts;
    opts.gamma = p.at("gamma").get<double>();
    opts.sigma = p.at("sigma").get<double>();
    if (opts.sigma > 0.0) {
        opts.u_min = RVec::Constant(1, -1.0);
        opts.u_max = RVec::Constant(1, 1.0);
    }

    ScenarioBundle bundle;
    bundle.dynamics = dyn;
    bundle.problem = std::make_shared<ctrl::StateTransferProblem>(dyn, psi0, psit, u, opts);
    bundle.axis = RVec::Zero(0);
    bundle.time_per_step = tg.dt();
    bundle.append_observables = [](DataContainer& dc, const StateVector& psi,
                                   const std::string& suffix, bool) {
        const CVec& a = psi.amplitudes();
        dc.append("sz_expect" + suffix, std::norm(a[0]) - std::norm(a[1]));
    };
    return bundle;
}

} // namespace

ctrl::ControlField exponential_ramp(double interaction_min, double interaction_target,
                                    double interaction_max, const TimeGrid& tg) {
    const lattice::BoundTransform transform(interaction_min, interaction_max);
    if (!(interaction_target > interaction_min && interaction_target < interaction_max))
        throw std::domain_error("exponential_ramp: target outside (U_min, U_max)");
    const double rate = std::log((interaction_target - interaction_min) / 0.5);
    RMat values(tg.n_steps(), 1);
    for (int i = 0; i < tg.n_steps(); ++i) {
        const double physical =
            interaction_min + 0.5 * std::exp(rate * tg.t(i) / tg.duration());
        values(i, 0) = transform.inverse(physical); // throws domain_error outside bounds
    }
    return ctrl::ControlField(tg, std::move(values));
}

ScenarioBundle build_scenario(const json& params) {
    const std::string id = params.at("scenario").get<std::string>();
    if (id == "gpe-shakeup")
        return build_gpe_like(params, false);
    if (id == "oneparticle-tweezer")
        return build_gpe_like(params, true);
    if (id == "bosehubbard-mott")
        return build_bosehubbard(params);
    if (id == "twoparticle-gate")
        return build_twoparticle(params);
    if (id == "twolevel-landau-zener")
        return build_twolevel(params);
    throw ConfigError("unknown scenario \"" + id + "\"", "scenario");
}

namespace {

struct SimRecord {
    double terminal_fidelity = 0.0;
};

// Forward simulation across the control plus a constant-control hold phase,
// appending decimated snapshots and full-resolution scalar series.
SimRecord simulate_into(DataContainer& dc, const ScenarioBundle& bundle,
                        const ControlField& u, const std::string& suffix,
                        int stride, int hold_steps) {
    auto& problem = *bundle.problem;
    const auto& dyn = problem.dynamics();
    const int n_steps = u.n_steps();
    const double dt = u.dt();
    const StateVector& target = problem.target_state();

    StateVector psi = problem.initial_state();
    SimRecord record;

    const auto record_step = [&](int step_index, double u_value) {
        const bool snapshot = stride > 0 && step_index % stride == 0;
        if (snapshot) {
            dc.append("psis" + suffix, psi.amplitudes());
            if (bundle.potential_of_u)
                dc.append("potential" + suffix, bundle.potential_of_u(u_value));
        }
        dc.append("overlap" + suffix, overlap(psi, target));
        dc.append("fidelity" + suffix, fidelity(psi, target));
        bundle.append_observables(dc, psi, suffix, snapshot);
    };

    for (int i = 0; i < n_steps; ++i) {
        record_step(i, u.at(i, 0));
        if (i + 1 < n_steps) {
            CVec& amps = psi.amplitudes();
            dyn.step(amps, u.get(i), u.get(i + 1), dt);
        }
    }
    record.terminal_fidelity = fidelity(psi, target);

    const RVec u_hold = u.back();
    for (int i = 0; i < hold_steps; ++i) {
        CVec& amps = psi.amplitudes();
        dyn.step(amps, u_hold, u_hold, dt);
        record_step(n_steps + i, u_hold[0]);
    }
    return record;
}

void resolve_algorithm_fields(const std::string& algorithm, bool& group, bool& dressed,
                              bool& bfgs, bool& h1) {
    group = dressed = bfgs = h1 = false;
    if (algorithm == "grape-steepest-l2") {
    } else if (algorithm == "grape-steepest-h1") {
        h1 = true;
    } else if (algorithm == "grape-bfgs-l2") {
        bfgs = true;
    } else if (algorithm == "grape-bfgs-h1") {
        bfgs = h1 = true;
    } else if (algorithm == "group-steepest") {
        group = true;
    } else if (algorithm == "group-bfgs") {
        group = bfgs = true;
    } else if (algorithm == "dgroup-steepest") {
        group = dressed = true;
    } else if (algorithm == "dgroup-bfgs") {
        group = dressed = bfgs = true;
    } else {
        throw ConfigError("unknown algorithm \"" + algorithm + "\"", "optimize.algorithm");
    }
}

} // namespace

RunOutcome run_scenario(const json& params, const std::string& out_dir, std::ostream& log) {
    const std::string id = params.at("scenario").get<std::string>();
    const std::string mode = params.at("mode").get<std::string>();
    if (mode != "simulate" && mode != "optimize")
        throw ConfigError("mode must be \"simulate\" or \"optimize\"", "mode");
    if (mode == "optimize") {
        // Reject bad algorithm names before any expensive work.
        bool g, d, b, h;
        resolve_algorithm_fields(params.at("optimize").at("algorithm").get<std::string>(),
                                 g, d, b, h);
    }

    ScenarioBundle bundle = build_scenario(params);
    auto problem = bundle.problem;
    const ControlField initial_control = problem->control();
    const TimeGrid tg = initial_control.time_grid();

    const int stride = params.at("output").at("snapshot_stride").get<int>();
    if (stride < 0)
        throw ConfigError("snapshot_stride must be >= 0", "output.snapshot_stride");
    int hold_steps = params.at("output").at("hold_steps").get<int>();
    if (hold_steps < 0)
        hold_steps = tg.n_steps() / 2;

    DataContainer dc;
    dc.set("format_version", 1);
    dc.set("scenario", id);
    dc.set("seed", params.at("seed").get<std::int64_t>());
    dc.set("dt", tg.dt());
    dc.set("duration", tg.duration());
    dc.set("n_steps", tg.n_steps());
    dc.set("hold_steps", hold_steps);
    dc.set("snapshot_stride", stride);
    if (bundle.axis.size() > 0)
        dc.set("x", bundle.axis);
    dc.set("psi_target", problem->target_state().amplitudes());
    dc.set("u_initial", RVec(initial_control.values().col(0)));

    log << "[" << id << "] simulating initial control (" << tg.n_steps() << " steps + "
        << hold_steps << " hold)\n";
    const SimRecord initial_sim = simulate_into(dc, bundle, initial_control, "", stride, hold_steps);
    dc.set("fidelity_initial", initial_sim.terminal_fidelity);

    RunOutcome outcome;
    outcome.scenario = id;
    outcome.initial_fidelity = initial_sim.terminal_fidelity;
    outcome.final_fidelity = initial_sim.terminal_fidelity;

    if (mode == "optimize") {
        const auto& op = params.at("optimize");
        const std::string algorithm = op.at("algorithm").get<std::string>();
        bool group = false, dressed = false, bfgs = false, h1 = false;
        resolve_algorithm_fields(algorithm, group, dressed, bfgs, h1);

        if (h1) {
            // Rebuild the problem with the H1 metric enabled.
            ctrl::ProblemOptions opts = problem->options();
            opts.h1_metric = true;
            problem = std::make_shared<ctrl::StateTransferProblem>(
                bundle.dynamics, problem->initial_state(), problem->target_state(),
                problem->control(), opts);
            bundle.problem = problem;
        }

        ctrl::StopperOptions stop;
        stop.fidelity_target = op.at("stop").at("fidelity").get<double>();
        stop.min_step_size = op.at("stop").at("min_step_size").get<double>();
        stop.max_iterations = op.at("stop").at("max_iterations").get<int>();

        ctrl::OptimizerConfig cfg;
        cfg.lbfgs_memory = op.at("lbfgs_memory").get<int>();
        cfg.direction = bfgs ? ctrl::DirectionKind::lbfgs : ctrl::DirectionKind::steepest;
        cfg.stopper = ctrl::default_stopper(stop);
        cfg.step_finder = ctrl::make_interpolating_step_size_finder(
            op.at("max_step_size").get<double>(), op.at("max_init_guess").get<double>());

        const int n_steps = tg.n_steps();
        cfg.collector = [&dc, &log, n_steps](ctrl::GradientOptimizer& opt) {
            const double f = opt.problem().fidelity();
            dc.append("fidelity_history", f);
            dc.append("cost_history", opt.problem().cost());
            dc.append("step_size_history", opt.step_size());
            log << "ITER " << opt.iteration() << " | fidelity : " << f
                << "\t stepsize : " << opt.step_size() << "\t fpp : "
                << std::llround(static_cast<double>(opt.problem().n_propagation_steps()) /
                                n_steps)
                << "\n";
        };

        std::optional<ctrl::GradientOptimizer> optimizer;
        std::shared_ptr<ctrl::GroupProblem> group_problem;

        if (!group) {
            optimizer.emplace(problem, cfg);
        } else {
            const int m = op.at("basis_size").get<int>();
            const double plateau = op.at("shape_plateau").get<double>();
            const double plateau_at = op.at("shape_plateau_at").get<double>();
            const double max_rand = dressed ? op.at("dgroup_max_rand").get<double>()
                                            : op.at("group_max_rand").get<double>();
            const std::uint64_t seed = params.at("seed").get<std::uint64_t>();
            const RVec shape = ctrl::make_sigmoid_shape(tg, plateau, plateau_at);
            ctrl::BasisMaker maker = ctrl::make_sine_basis_maker(m, tg, shape, max_rand, seed);

            RMat coeffs = RMat::Zero(m, 1);
            if (id == "gpe-shakeup") {
                // Reference control 0, first coefficient carries the sine guess.
                problem->update(RMat::Zero(tg.n_steps(), 1));
                coeffs(0, 0) = params.at("initial_amplitude").get<double>();
            }
            group_problem = std::make_shared<ctrl::GroupProblem>(problem, maker(), maker);
            group_problem->set_coefficients(coeffs);

            if (dressed)
                cfg.restarter = ctrl::default_dressed_restarter(
                    op.at("restart_step_tol").get<double>());
            optimizer.emplace(group_problem, cfg);
        }

        log << "[" << id << "] optimizing with " << algorithm << "\n";
        optimizer->collect_now(); // iteration 0
        const ctrl::OptimizeResult result = optimizer->optimize();

        const ControlField& final_control = problem->control();
        dc.set("u_final", RVec(final_control.values().col(0)));
        dc.set("iterations", result.iterations);
        dc.set("stop_reason", result.message);
        dc.set("superiterations", optimizer->superiteration());

        log << "[" << id << "] simulating optimized control\n";
        const SimRecord final_sim =
            simulate_into(dc, bundle, final_control, "_final", stride, hold_steps);
        dc.set("fidelity_optimized", final_sim.terminal_fidelity);

        outcome.final_fidelity = final_sim.terminal_fidelity;
        outcome.iterations = result.iterations;
        outcome.stop_reason = result.message;

        if (result.reason == ctrl::StopReason::line_search_failure)
            throw ConvergenceError("optimization stopped: " + result.message,
                                   result.final_cost);
        if (result.reason == ctrl::StopReason::collector_failure)
            throw std::runtime_error("collector failure: " + result.message);
    }

    std::filesystem::create_directories(out_dir);
    const auto result_path = std::filesystem::path(out_dir) / (id + ".json");
    const auto config_path = std::filesystem::path(out_dir) / (id + ".config.json");
    dc.save(result_path.string());

    json config_doc{{"scenario", id},
                    {"overrides", [&params] {
                         json j = params;
                         j.erase("scenario");
                         return j;
                     }()}};
    std::ofstream config_file(config_path);
    if (!config_file)
        throw IoError("cannot write \"" + config_path.string() + "\"");
    config_file << config_doc.dump(2) << "\n";

    outcome.result_path = result_path.string();
    outcome.config_path = config_path.string();

    log << "[" << id << "] initial fidelity " << outcome.initial_fidelity
        << ", final fidelity " << outcome.final_fidelity << "\n";
    log << "[" << id << "] wrote " << outcome.result_path << "\n";
    return outcome;
}

} // namespace qoc1d::runner
