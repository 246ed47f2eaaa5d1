#include "qoc1d/runner/config.hpp"

#include <algorithm>

#include "qoc1d/core/errors.hpp"

namespace qoc1d::runner {

namespace {

json optimize_defaults(const std::string& algorithm) {
    return json{
        {"algorithm", algorithm},
        {"basis_size", 60},
        {"group_max_rand", 0.0},
        {"dgroup_max_rand", 0.1},
        {"shape_plateau", 0.999},
        {"shape_plateau_at", 0.15},
        {"max_step_size", 5.0},
        {"max_init_guess", 1.0},
        {"restart_step_tol", 1e-6},
        {"lbfgs_memory", 10},
        {"stop", json{{"fidelity", 0.999},
                      {"min_step_size", 1e-7},
                      {"max_iterations", 2000}}},
    };
}

json output_defaults() {
    return json{{"snapshot_stride", 5}, {"hold_steps", -1}};
}

} // namespace

std::vector<std::string> scenario_ids() {
    return {"gpe-shakeup", "bosehubbard-mott", "twoparticle-gate",
            "oneparticle-tweezer", "twolevel-landau-zener"};
}

bool is_scenario(const std::string& id) {
    const auto ids = scenario_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

json scenario_defaults(const std::string& id) {
    if (id == "gpe-shakeup") {
        return json{
            {"scenario", id},
            {"seed", 1234},
            {"mode", "optimize"},
            {"grid", json{{"x_min", -2.0}, {"x_max", 2.0}, {"n", 256}}},
            {"kin_factor", 0.36537},
            {"g1d", 1.8299},
            {"p2", 65.8392},
            {"p4", 97.6349},
            {"p6", -15.3850},
            {"dt", 0.002},
            {"duration", 1.25},
            {"initial_amplitude", 0.55},
            {"ground_state_tol", 1e-10},
            {"gamma", 1e-5},
            {"sigma", 2e3},
            {"u_min", -1.0},
            {"u_max", 1.0},
            {"analytic_dhdu", true},
            {"optimize", optimize_defaults("grape-bfgs-l2")},
            {"output", output_defaults()},
        };
    }
    if (id == "bosehubbard-mott") {
        return json{
            {"scenario", id},
            {"seed", 1234},
            {"mode", "optimize"},
            {"n_sites", 5},
            {"n_particles", 5},
            {"j_hopping", 1.0},
            {"interaction_min", 2.0},
            {"interaction_max", 40.0},
            {"interaction_initial", 4.0},
            {"interaction_target", 30.0},
            {"site_potential_coefficient", 0.1},
            {"periodic", false},
            {"dt", 0.002},
            {"duration", 2.2},
            {"krylov_order", 4},
            {"gamma", 0.0},
            {"sigma", 0.0},
            {"ground_state_tol", 1e-12},
            {"optimize", optimize_defaults("grape-bfgs-l2")},
            {"output", output_defaults()},
        };
    }
    if (id == "twoparticle-gate") {
        return json{
            {"scenario", id},
            {"seed", 1234},
            {"mode", "optimize"},
            {"grid", json{{"x_min", -2.0}, {"x_max", 2.0}, {"n", 32}}},
            {"kin_factor", 0.36537},
            {"g1d", 1.0},
            {"p2", 30.0},
            {"u_initial", 0.0},
            {"u_final", 0.5},
            {"dt", 0.005},
            {"duration", 0.5},
            {"ground_state_tol", 1e-9},
            {"gamma", 1e-6},
            {"sigma", 0.0},
            {"analytic_dhdu", true},
            {"optimize", optimize_defaults("grape-bfgs-l2")},
            {"output", output_defaults()},
        };
    }
    if (id == "oneparticle-tweezer") {
        return json{
            {"scenario", id},
            {"seed", 1234},
            {"mode", "optimize"},
            {"grid", json{{"x_min", -1.5}, {"x_max", 1.5}, {"n", 128}}},
            {"kin_factor", 0.5},
            {"depth", 60.0},
            {"width", 0.25},
            {"u_initial", -0.6},
            {"u_final", 0.6},
            {"dt", 0.002},
            {"duration", 0.35},
            {"ground_state_tol", 1e-10},
            {"gamma", 1e-6},
            {"sigma", 0.0},
            {"analytic_dhdu", true},
            {"optimize", optimize_defaults("grape-bfgs-l2")},
            {"output", output_defaults()},
        };
    }
    if (id == "twolevel-landau-zener") {
        return json{
            {"scenario", id},
            {"seed", 1234},
            {"mode", "optimize"},
            {"delta", 1.0},
            {"u_initial", -5.0},
            {"u_final", 5.0},
            {"dt", 0.002},
            {"duration", 2.0},
            {"gamma", 0.0},
            {"sigma", 0.0},
            {"optimize", optimize_defaults("grape-bfgs-l2")},
            {"output", output_defaults()},
        };
    }
    throw ConfigError("unknown scenario \"" + id + "\"", "scenario");
}

namespace {

bool same_category(const json& a, const json& b) {
    if (a.is_number() && b.is_number()) {
        // An integer default only accepts integral overrides.
        if (a.is_number_integer() && !b.is_number_integer())
            return false;
        return true;
    }
    if (a.is_boolean() && b.is_boolean())
        return true;
    if (a.is_string() && b.is_string())
        return true;
    if (a.is_object() && b.is_object())
        return true;
    return false;
}

} // namespace

json merge_config(const json& defaults, const json& overrides, const std::string& path_prefix) {
    if (!overrides.is_object())
        throw ConfigError("overrides must be an object",
                          path_prefix.empty() ? "overrides" : path_prefix);
    json merged = defaults;
    for (const auto& [key, value] : overrides.items()) {
        const std::string path = path_prefix.empty() ? key : path_prefix + "." + key;
        if (!defaults.contains(key))
            throw ConfigError("unknown configuration key", path);
        const json& base = defaults.at(key);
        if (base.is_object()) {
            merged[key] = merge_config(base, value, path);
            continue;
        }
        if (!same_category(base, value))
            throw ConfigError("value has the wrong type", path);
        merged[key] = value;
    }
    return merged;
}

json effective_config(const json& document) {
    if (!document.is_object())
        throw ConfigError("config document must be an object", "");
    for (const auto& [key, value] : document.items()) {
        (void)value;
        if (key != "scenario" && key != "seed" && key != "overrides")
            throw ConfigError("unknown top-level key", key);
    }
    if (!document.contains("scenario") || !document.at("scenario").is_string())
        throw ConfigError("missing or non-string \"scenario\"", "scenario");
    const std::string id = document.at("scenario").get<std::string>();
    if (!is_scenario(id))
        throw ConfigError("unknown scenario \"" + id + "\"", "scenario");

    json overrides = document.value("overrides", json::object());
    if (document.contains("seed")) {
        if (!document.at("seed").is_number_integer())
            throw ConfigError("seed must be an integer", "seed");
        overrides["seed"] = document.at("seed");
    }
    return merge_config(scenario_defaults(id), overrides);
}

void apply_key_value(json& overrides, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("expected key=value", assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw; // plain string
    }

    json* node = &overrides;
    std::size_t begin = 0;
    while (true) {
        const auto dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot == std::string::npos
                                                       ? std::string::npos
                                                       : dot - begin);
        if (key.empty())
            throw ConfigError("empty key segment", path);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        if (!node->contains(key) || !(*node)[key].is_object())
            (*node)[key] = json::object();
        node = &(*node)[key];
        begin = dot + 1;
    }
}

} // namespace qoc1d::runner
