#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "qoc1d/core/errors.hpp"

#include "qoc1d/control/backends.hpp"
#include "qoc1d/control/basis.hpp"
#include "qoc1d/control/optimize.hpp"
#include "qoc1d/gpe/split_step.hpp"
#include "qoc1d/gpe/stationary.hpp"
#include "qoc1d/lattice/lanczos.hpp"
#include "qoc1d/pair/hamiltonian.hpp"
#include "qoc1d/runner/config.hpp"
#include "qoc1d/runner/scenarios.hpp"

namespace py = pybind11;
using namespace qoc1d;

namespace {

std::shared_ptr<SpatialGrid> py_make_grid(double x_min, double x_max, int n) {
    return std::const_pointer_cast<SpatialGrid>(make_spatial_grid(x_min, x_max, n));
}

std::shared_ptr<lattice::FockBasis> py_make_fock(int n_sites, int n_particles) {
    return std::const_pointer_cast<lattice::FockBasis>(
        lattice::make_fock_basis(n_sites, n_particles));
}

std::shared_ptr<pair::TensorGrid2D> py_make_tensor(std::shared_ptr<SpatialGrid> axis) {
    return std::make_shared<pair::TensorGrid2D>(axis);
}

ctrl::ControlField control_from_values(const RVec& values, double dt) {
    RMat m(values.size(), 1);
    m.col(0) = values;
    return ctrl::ControlField(TimeGrid(static_cast<int>(values.size()), dt), std::move(m));
}

struct PyOptimizeResult {
    int iterations = 0;
    int superiterations = 0;
    double final_cost = 0.0;
    double final_fidelity = 0.0;
    std::string reason;
    std::vector<double> fidelity_history;
    std::vector<double> cost_history;
};

PyOptimizeResult run_optimizer(std::shared_ptr<ctrl::ObjectiveProblem> problem,
                               bool bfgs, bool dressed, double fidelity_target,
                               double min_step_size, int max_iterations,
                               double max_step_size, double max_init_guess,
                               double restart_step_tol) {
    ctrl::OptimizerConfig cfg;
    cfg.direction = bfgs ? ctrl::DirectionKind::lbfgs : ctrl::DirectionKind::steepest;
    cfg.stopper = ctrl::default_stopper({fidelity_target, min_step_size, max_iterations});
    cfg.step_finder = ctrl::make_interpolating_step_size_finder(max_step_size, max_init_guess);
    if (dressed)
        cfg.restarter = ctrl::default_dressed_restarter(restart_step_tol);

    PyOptimizeResult out;
    cfg.collector = [&out](ctrl::GradientOptimizer& opt) {
        out.fidelity_history.push_back(opt.problem().fidelity());
        out.cost_history.push_back(opt.problem().cost());
    };

    ctrl::GradientOptimizer optimizer(std::move(problem), cfg);
    optimizer.collect_now();
    const auto result = optimizer.optimize();
    out.iterations = result.iterations;
    out.superiterations = optimizer.superiteration();
    out.final_cost = result.final_cost;
    out.final_fidelity = result.final_fidelity;
    out.reason = result.message;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulation and gradient-based optimal control of one-dimensional "
              "ultracold-atom systems";

    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<ConfigError>(m, "ConfigurationError");
    py::register_exception<CapacityError>(m, "CapacityError");
    py::register_exception<NumericalError>(m, "NumericalError");

    // --- core -------------------------------------------------------------
    py::class_<Basis, std::shared_ptr<Basis>>(m, "Basis")
        .def_property_readonly("dim", &Basis::dim)
        .def_property_readonly("quadrature_weight", &Basis::quadrature_weight);

    py::class_<SpatialGrid, Basis, std::shared_ptr<SpatialGrid>>(m, "SpatialGrid")
        .def_property_readonly("n", &SpatialGrid::n)
        .def_property_readonly("dx", &SpatialGrid::dx)
        .def_property_readonly("x", &SpatialGrid::x)
        .def_property_readonly("k", &SpatialGrid::k);
    m.def("make_spatial_grid", &py_make_grid, py::arg("x_min"), py::arg("x_max"),
          py::arg("n"));

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<int, double>(), py::arg("n_steps"), py::arg("dt"))
        .def_static("from_duration", &TimeGrid::from_duration, py::arg("duration"),
                    py::arg("dt"))
        .def_property_readonly("n_steps", &TimeGrid::n_steps)
        .def_property_readonly("dt", &TimeGrid::dt)
        .def_property_readonly("duration", &TimeGrid::duration);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init([](const CVec& amplitudes, std::shared_ptr<SpatialGrid> grid) {
                 return StateVector(amplitudes, grid);
             }),
             py::arg("amplitudes"), py::arg("grid"))
        .def(py::init([](const CVec& amplitudes, std::shared_ptr<lattice::FockBasis> basis) {
                 return StateVector(amplitudes, basis);
             }),
             py::arg("amplitudes"), py::arg("basis"))
        .def(py::init([](const CVec& amplitudes, std::shared_ptr<pair::TensorGrid2D> grid) {
                 return StateVector(amplitudes, grid);
             }),
             py::arg("amplitudes"), py::arg("grid"))
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes(); })
        .def_property_readonly("dim", &StateVector::dim)
        .def("norm", &StateVector::norm)
        .def("normalized", [](const StateVector& s) {
            StateVector out = s;
            out.normalize();
            return out;
        });

    m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def(
        "few_mode_state",
        [](const CVec& amplitudes) {
            return StateVector(amplitudes,
                               std::make_shared<const FewModeBasis>(amplitudes.size()));
        },
        py::arg("amplitudes"), "State on the trivial few-mode basis");

    // --- gpe ----------------------------------------------------------------
    py::class_<gpe::PotentialFunction>(m, "PotentialFunction")
        .def("__call__", &gpe::PotentialFunction::operator(), py::arg("u"))
        .def_property_readonly("initial_control", &gpe::PotentialFunction::initial_control);

    m.def("make_anharmonic_potential", &gpe::make_anharmonic_potential, py::arg("grid"),
          py::arg("p2"), py::arg("p4"), py::arg("p6"), py::arg("initial_control") = 0.0);
    m.def("make_anharmonic_potential_derivative", &gpe::make_anharmonic_potential_derivative,
          py::arg("grid"), py::arg("p2"), py::arg("p4"), py::arg("p6"),
          py::arg("initial_control") = 0.0);
    m.def("make_gaussian_tweezer", &gpe::make_gaussian_tweezer, py::arg("grid"),
          py::arg("depth"), py::arg("width"), py::arg("initial_control") = 0.0);
    m.def("make_gaussian_tweezer_derivative", &gpe::make_gaussian_tweezer_derivative,
          py::arg("grid"), py::arg("depth"), py::arg("width"),
          py::arg("initial_control") = 0.0);
    m.def(
        "make_potential",
        [](std::function<RVec(double)> fn, double initial_control) {
            return gpe::PotentialFunction(std::move(fn), initial_control);
        },
        py::arg("fn"), py::arg("initial_control") = 0.0);

    py::class_<gpe::GpeHamiltonian>(m, "GpeHamiltonian")
        .def(py::init([](std::shared_ptr<SpatialGrid> grid, double kin_factor,
                         const gpe::PotentialFunction& potential, double beta) {
                 return gpe::GpeHamiltonian(grid, kin_factor, potential, beta);
             }),
             py::arg("grid"), py::arg("kin_factor"), py::arg("potential"),
             py::arg("beta") = 0.0)
        .def("set_analytic_derivative", &gpe::GpeHamiltonian::set_analytic_derivative)
        .def("potential_values", &gpe::GpeHamiltonian::potential_values, py::arg("u"))
        .def_property_readonly("beta", &gpe::GpeHamiltonian::beta)
        .def_property_readonly("kin_factor", &gpe::GpeHamiltonian::kin_factor);

    m.def("ground_state", &gpe::ground_state, py::arg("hamiltonian"), py::arg("u"),
          py::arg("tol") = 1e-10);
    m.def("first_excited_state", &gpe::first_excited_state, py::arg("hamiltonian"),
          py::arg("u"), py::arg("tol") = 1e-10);
    m.def("stationary_state", &gpe::stationary_state, py::arg("hamiltonian"), py::arg("u"),
          py::arg("index"), py::arg("tol") = 1e-10);
    m.def("split_step", &gpe::split_step, py::arg("state"), py::arg("hamiltonian"),
          py::arg("u_now"), py::arg("u_next"), py::arg("dt"));

    // --- lattice ------------------------------------------------------------
    py::class_<lattice::FockBasis, Basis, std::shared_ptr<lattice::FockBasis>>(m, "FockBasis")
        .def_property_readonly("n_sites", &lattice::FockBasis::n_sites)
        .def_property_readonly("n_particles", &lattice::FockBasis::n_particles)
        .def("state", &lattice::FockBasis::state, py::arg("index"))
        .def("index_of", &lattice::FockBasis::index_of, py::arg("occupation"));
    m.def("make_fock_basis", &py_make_fock, py::arg("n_sites"), py::arg("n_particles"));
    m.def("fock_dimension", &lattice::fock_dimension, py::arg("n_sites"),
          py::arg("n_particles"));

    py::class_<lattice::SparseOperator>(m, "SparseOperator")
        .def_property_readonly("dim", &lattice::SparseOperator::dim)
        .def_property_readonly("is_hermitian", &lattice::SparseOperator::is_hermitian)
        .def("apply", &lattice::SparseOperator::apply, py::arg("vector"))
        .def("to_dense",
             [](const lattice::SparseOperator& op) { return CMat(op.matrix()); });

    m.def("hopping_operator", &lattice::hopping_operator, py::arg("basis"),
          py::arg("periodic") = false);
    m.def("onsite_operator", &lattice::onsite_operator, py::arg("basis"));
    m.def("site_potential_operator", &lattice::site_potential_operator, py::arg("basis"),
          py::arg("potential"));
    m.def("number_operator", &lattice::number_operator, py::arg("basis"), py::arg("site"));
    m.def("single_particle_density_matrix", &lattice::single_particle_density_matrix,
          py::arg("state"), py::arg("basis"));

    py::class_<lattice::BoundTransform>(m, "BoundTransform")
        .def(py::init<double, double>(), py::arg("u_min"), py::arg("u_max"))
        .def("__call__", &lattice::BoundTransform::operator(), py::arg("u"))
        .def("inverse", &lattice::BoundTransform::inverse, py::arg("physical"))
        .def("derivative", &lattice::BoundTransform::derivative, py::arg("u"));

    py::class_<lattice::LatticeHamiltonian>(m, "LatticeHamiltonian")
        .def("apply", &lattice::LatticeHamiltonian::apply, py::arg("u"), py::arg("vector"))
        .def("assemble", &lattice::LatticeHamiltonian::assemble, py::arg("u"))
        .def_property_readonly("dim", &lattice::LatticeHamiltonian::dim);
    m.def(
        "make_bose_hubbard",
        [](std::shared_ptr<lattice::FockBasis> basis, double j_hopping,
           const RVec& site_potential, const lattice::BoundTransform& transform,
           bool periodic) {
            return lattice::make_bose_hubbard(basis, j_hopping, site_potential, transform,
                                              periodic);
        },
        py::arg("basis"), py::arg("j_hopping"), py::arg("site_potential"),
        py::arg("transform"), py::arg("periodic") = false);

    m.def(
        "ground_state_sparse",
        [](const lattice::SparseOperator& op, double tol) {
            const auto r = lattice::ground_state_sparse(op, tol);
            return py::make_tuple(r.energy, r.state, r.residual);
        },
        py::arg("operator"), py::arg("tol") = 1e-10,
        "Lowest eigenpair as (energy, amplitudes, residual)");
    m.def("lanczos_step",
          py::overload_cast<const lattice::SparseOperator&, const StateVector&, double, int>(
              &lattice::lanczos_step),
          py::arg("operator"), py::arg("state"), py::arg("dt"), py::arg("krylov_order") = 4);

    py::class_<lattice::FewModeHamiltonian>(m, "FewModeHamiltonian")
        .def(py::init<CMat, std::vector<CMat>>(), py::arg("h0"), py::arg("control_operators"))
        .def("assemble", &lattice::FewModeHamiltonian::assemble, py::arg("u"))
        .def_property_readonly("dim", &lattice::FewModeHamiltonian::dim);
    m.def("landau_zener_hamiltonian", &lattice::landau_zener_hamiltonian, py::arg("delta"));

    // --- pair ---------------------------------------------------------------
    py::class_<pair::TensorGrid2D, Basis, std::shared_ptr<pair::TensorGrid2D>>(
        m, "TensorGrid2D")
        .def_property_readonly("n_per_axis", &pair::TensorGrid2D::n_per_axis)
        .def_property_readonly("dx", &pair::TensorGrid2D::dx);
    m.def("make_tensor_grid", &py_make_tensor, py::arg("axis"));

    m.def(
        "contact_interaction_values",
        [](std::shared_ptr<pair::TensorGrid2D> grid, double g) {
            return pair::contact_interaction_values(*grid, g);
        },
        py::arg("grid"), py::arg("g"));

    py::class_<pair::TwoParticleHamiltonian>(m, "TwoParticleHamiltonian")
        .def(py::init([](std::shared_ptr<pair::TensorGrid2D> grid, double kin_factor,
                         const gpe::PotentialFunction& trap, double g) {
                 return pair::TwoParticleHamiltonian(grid, kin_factor, trap, g);
             }),
             py::arg("grid"), py::arg("kin_factor"), py::arg("trap"), py::arg("g"))
        .def("set_analytic_derivative", &pair::TwoParticleHamiltonian::set_analytic_derivative)
        .def("potential_values", &pair::TwoParticleHamiltonian::potential_values,
             py::arg("u"));
    m.def("ground_state_2d", &pair::ground_state_2d, py::arg("hamiltonian"), py::arg("u"),
          py::arg("tol") = 1e-8);
    m.def("split_step_2d", &pair::split_step_2d, py::arg("state"), py::arg("hamiltonian"),
          py::arg("u_now"), py::arg("u_next"), py::arg("dt"));

    // --- control ------------------------------------------------------------
    py::class_<ctrl::ControlField>(m, "ControlField")
        .def(py::init(&control_from_values), py::arg("values"), py::arg("dt"))
        .def_property_readonly("n_steps", &ctrl::ControlField::n_steps)
        .def_property_readonly("dt", &ctrl::ControlField::dt)
        .def_property_readonly("values",
                               [](const ctrl::ControlField& f) { return f.values(); });
    m.def("make_time_control", &ctrl::make_time_control, py::arg("n_steps"), py::arg("dt"));

    py::class_<ctrl::Dynamics, std::shared_ptr<ctrl::Dynamics>>(m, "Dynamics");
    m.def(
        "gpe_dynamics",
        [](const gpe::GpeHamiltonian& h) -> std::shared_ptr<ctrl::Dynamics> {
            return std::make_shared<ctrl::GpeDynamics>(h);
        },
        py::arg("hamiltonian"));
    m.def(
        "lattice_dynamics",
        [](const lattice::LatticeHamiltonian& h, int krylov_order)
            -> std::shared_ptr<ctrl::Dynamics> {
            return std::make_shared<ctrl::LatticeDynamics>(h, krylov_order);
        },
        py::arg("hamiltonian"), py::arg("krylov_order") = 4);
    m.def(
        "pair_dynamics",
        [](const pair::TwoParticleHamiltonian& h) -> std::shared_ptr<ctrl::Dynamics> {
            return std::make_shared<ctrl::PairDynamics>(h);
        },
        py::arg("hamiltonian"));
    m.def(
        "few_mode_dynamics",
        [](const lattice::FewModeHamiltonian& h) -> std::shared_ptr<ctrl::Dynamics> {
            return std::make_shared<ctrl::FewModeDynamics>(h);
        },
        py::arg("hamiltonian"));

    py::class_<ctrl::StateTransferProblem, std::shared_ptr<ctrl::StateTransferProblem>>(
        m, "StateTransferProblem")
        .def(py::init([](std::shared_ptr<ctrl::Dynamics> dynamics, const StateVector& psi0,
                         const StateVector& psi_target, const ctrl::ControlField& u,
                         double gamma, double sigma, py::object u_min, py::object u_max,
                         bool h1_metric) {
                 ctrl::ProblemOptions opts;
                 opts.gamma = gamma;
                 opts.sigma = sigma;
                 opts.h1_metric = h1_metric;
                 if (!u_min.is_none())
                     opts.u_min = RVec::Constant(1, u_min.cast<double>());
                 if (!u_max.is_none())
                     opts.u_max = RVec::Constant(1, u_max.cast<double>());
                 return std::make_shared<ctrl::StateTransferProblem>(
                     std::move(dynamics), psi0, psi_target, u, opts);
             }),
             py::arg("dynamics"), py::arg("psi0"), py::arg("psi_target"), py::arg("control"),
             py::arg("gamma") = 0.0, py::arg("sigma") = 0.0, py::arg("u_min") = py::none(),
             py::arg("u_max") = py::none(), py::arg("h1_metric") = false)
        .def("cost", &ctrl::StateTransferProblem::cost)
        .def("fidelity", &ctrl::StateTransferProblem::fidelity)
        .def("gradient", &ctrl::StateTransferProblem::gradient_l2)
        .def("control_values",
             [](const ctrl::StateTransferProblem& p) { return p.control().values(); })
        .def("update",
             [](ctrl::StateTransferProblem& p, const RMat& values) { p.update(values); })
        .def_property_readonly("n_propagation_steps",
                               &ctrl::StateTransferProblem::n_propagation_steps);

    py::class_<ctrl::GroupProblem, std::shared_ptr<ctrl::GroupProblem>>(m, "GroupProblem")
        .def("cost", &ctrl::GroupProblem::cost)
        .def("fidelity", &ctrl::GroupProblem::fidelity)
        .def("gradient", &ctrl::GroupProblem::gradient)
        .def_property_readonly("coefficients",
                               [](const ctrl::GroupProblem& p) { return p.coefficients(); })
        .def("set_coefficients", &ctrl::GroupProblem::set_coefficients, py::arg("c"));

    m.def(
        "make_group_problem",
        [](std::shared_ptr<ctrl::StateTransferProblem> base, int basis_size, double max_rand,
           std::uint64_t seed, double plateau, double plateau_at) {
            const TimeGrid tg = base->control().time_grid();
            const RVec shape = ctrl::make_sigmoid_shape(tg, plateau, plateau_at);
            auto maker = ctrl::make_sine_basis_maker(basis_size, tg, shape, max_rand, seed);
            return std::make_shared<ctrl::GroupProblem>(base, maker(), maker);
        },
        py::arg("problem"), py::arg("basis_size") = 60, py::arg("max_rand") = 0.0,
        py::arg("seed") = 1234, py::arg("plateau") = 0.999, py::arg("plateau_at") = 0.1);

    m.def("sigmoid_shape_samples",
          [](int n_steps, double dt, double plateau, double plateau_at) {
              return ctrl::make_sigmoid_shape(TimeGrid(n_steps, dt), plateau, plateau_at);
          },
          py::arg("n_steps"), py::arg("dt"), py::arg("plateau") = 0.999,
          py::arg("plateau_at") = 0.1);

    py::class_<PyOptimizeResult>(m, "OptimizeResult")
        .def_readonly("iterations", &PyOptimizeResult::iterations)
        .def_readonly("superiterations", &PyOptimizeResult::superiterations)
        .def_readonly("final_cost", &PyOptimizeResult::final_cost)
        .def_readonly("final_fidelity", &PyOptimizeResult::final_fidelity)
        .def_readonly("reason", &PyOptimizeResult::reason)
        .def_readonly("fidelity_history", &PyOptimizeResult::fidelity_history)
        .def_readonly("cost_history", &PyOptimizeResult::cost_history);

    m.def(
        "optimize",
        [](std::shared_ptr<ctrl::StateTransferProblem> p, bool bfgs, double fidelity_target,
           double min_step_size, int max_iterations, double max_step_size,
           double max_init_guess) {
            return run_optimizer(std::move(p), bfgs, false, fidelity_target, min_step_size,
                                 max_iterations, max_step_size, max_init_guess, 1e-6);
        },
        py::arg("problem"), py::arg("bfgs") = true, py::arg("fidelity_target") = 0.999,
        py::arg("min_step_size") = 1e-7, py::arg("max_iterations") = 2000,
        py::arg("max_step_size") = 5.0, py::arg("max_init_guess") = 1.0,
        "GRAPE optimization of the time-discretized control");
    m.def(
        "optimize_group",
        [](std::shared_ptr<ctrl::GroupProblem> p, bool bfgs, bool dressed,
           double fidelity_target, double min_step_size, int max_iterations,
           double max_step_size, double max_init_guess, double restart_step_tol) {
            return run_optimizer(std::move(p), bfgs, dressed, fidelity_target, min_step_size,
                                 max_iterations, max_step_size, max_init_guess,
                                 restart_step_tol);
        },
        py::arg("problem"), py::arg("bfgs") = true, py::arg("dressed") = false,
        py::arg("fidelity_target") = 0.999, py::arg("min_step_size") = 1e-7,
        py::arg("max_iterations") = 2000, py::arg("max_step_size") = 5.0,
        py::arg("max_init_guess") = 1.0, py::arg("restart_step_tol") = 1e-6,
        "GROUP / dressed-GROUP optimization over reduced-basis coefficients");

    // --- scenarios ----------------------------------------------------------
    m.def("list_scenarios", &runner::scenario_ids);
    m.def(
        "scenario_defaults_json",
        [](const std::string& id) { return runner::scenario_defaults(id).dump(); },
        py::arg("scenario"));
    m.def(
        "run_scenario_json",
        [](const std::string& config_json, const std::string& out_dir) {
            const auto params =
                runner::effective_config(runner::json::parse(config_json));
            std::ostringstream log;
            const auto outcome = runner::run_scenario(params, out_dir, log);
            runner::json summary{{"scenario", outcome.scenario},
                                 {"initial_fidelity", outcome.initial_fidelity},
                                 {"final_fidelity", outcome.final_fidelity},
                                 {"iterations", outcome.iterations},
                                 {"stop_reason", outcome.stop_reason},
                                 {"result_path", outcome.result_path},
                                 {"config_path", outcome.config_path},
                                 {"log", log.str()}};
            return summary.dump();
        },
        py::arg("config_json"), py::arg("out_dir") = "results");

    m.attr("__version__") = "0.1.0";
}
