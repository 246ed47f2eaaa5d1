#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "qoc1d/control/basis.hpp"
#include "qoc1d/control/control_field.hpp"
#include "qoc1d/control/optimize.hpp"
#include "qoc1d/runner/config.hpp"
#include "qoc1d/runner/data_container.hpp"

namespace qoc1d::runner {

/// U(t) = U_min + 0.5 exp(ln((U_target - U_min)/0.5) t/T), mapped into
/// u-space through the inverse bound transform.
ctrl::ControlField exponential_ramp(double interaction_min, double interaction_target,
                                    double interaction_max, const TimeGrid& tg);

struct RunOutcome {
    std::string scenario;
    double initial_fidelity = 0.0; // terminal fidelity of the initial control
    double final_fidelity = 0.0;   // after optimization (== initial in simulate mode)
    int iterations = 0;
    std::string stop_reason;       // empty in simulate mode
    std::string result_path;
    std::string config_path;
};

/// The problem and observables of a scenario, as consumed by run_scenario
/// and reusable from tests.
struct ScenarioBundle {
    std::shared_ptr<ctrl::StateTransferProblem> problem;
    std::shared_ptr<const ctrl::Dynamics> dynamics;
    std::function<RVec(double)> potential_of_u; // 1D section; may be empty
    /// Per-step scalar series ("<name><suffix>"); heavy snapshot series only
    /// when snapshot is set.
    std::function<void(DataContainer&, const StateVector&, const std::string& suffix,
                       bool snapshot)>
        append_observables;
    RVec axis;           // spatial grid or site positions
    double time_per_step = 0.0;
};

ScenarioBundle build_scenario(const json& params);

/// Execute a merged scenario config: forward simulation of the initial
/// control, optionally an optimization plus a final simulation, and write
/// "<id>.json" / "<id>.config.json" under out_dir.
RunOutcome run_scenario(const json& params, const std::string& out_dir, std::ostream& log);

} // namespace qoc1d::runner
