#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "qoc1d/core/errors.hpp"
#include "qoc1d/runner/config.hpp"
#include "qoc1d/runner/scenarios.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_convergence_failure = 3;
constexpr int exit_io_error = 4;

void apply_thread_cap() {
    // QOC_THREADS caps internal thread pools (0 or unset = auto).
    const char* env = std::getenv("QOC_THREADS");
    if (!env || !*env)
        return;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 0)
        throw qoc1d::ConfigError("QOC_THREADS must be a non-negative integer", "QOC_THREADS");
    if (value > 0)
        Eigen::setNbThreads(static_cast<int>(value));
}

qoc1d::runner::json load_json_file(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw qoc1d::IoError("cannot open \"" + path + "\"");
    try {
        return qoc1d::runner::json::parse(file);
    } catch (const qoc1d::runner::json::parse_error& e) {
        throw qoc1d::ConfigError(std::string("invalid JSON: ") + e.what(), path);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qoc1d - quantum optimal control of one-dimensional ultracold-atom systems"};
    app.require_subcommand(1);

    std::string config_path, scenario_id, out_dir = "results";
    std::vector<std::string> set_args;
    std::int64_t seed = -1;
    bool have_seed = false;

    auto* run = app.add_subcommand("run", "Run a scenario from a config file or by id");
    run->add_option("config", config_path, "Path to a JSON config file");
    run->add_option("--scenario", scenario_id, "Scenario id (instead of a config file)");
    run->add_option("--set", set_args, "Override a config key, e.g. --set optimize.algorithm=group-bfgs");
    run->add_option("--out", out_dir, "Output directory for result files");
    run->add_option("--seed", seed, "Random seed override")->check(CLI::NonNegativeNumber);

    auto* list = app.add_subcommand("list-scenarios", "List available scenario ids");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate a config file without running");
    validate->add_option("config", validate_path, "Path to a JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }
    have_seed = run->count("--seed") > 0;

    try {
        apply_thread_cap();

        if (list->parsed()) {
            for (const auto& id : qoc1d::runner::scenario_ids())
                std::cout << id << "\n";
            return exit_ok;
        }

        if (validate->parsed()) {
            const auto doc = load_json_file(validate_path);
            qoc1d::runner::effective_config(doc);
            std::cout << "config ok\n";
            return exit_ok;
        }

        // run
        qoc1d::runner::json document;
        if (!config_path.empty() && !scenario_id.empty())
            throw qoc1d::ConfigError("give either a config file or --scenario, not both", "run");
        if (config_path.empty() && scenario_id.empty())
            throw qoc1d::ConfigError("need a config file or --scenario", "run");
        if (!config_path.empty()) {
            document = load_json_file(config_path);
        } else {
            document = {{"scenario", scenario_id}, {"overrides", qoc1d::runner::json::object()}};
        }
        if (!document.is_object())
            throw qoc1d::ConfigError("config document must be an object", config_path);
        if (!document.contains("overrides"))
            document["overrides"] = qoc1d::runner::json::object();
        for (const auto& assign : set_args)
            qoc1d::runner::apply_key_value(document["overrides"], assign);
        if (have_seed)
            document["seed"] = seed;

        const auto params = qoc1d::runner::effective_config(document);
        const auto outcome = qoc1d::runner::run_scenario(params, out_dir, std::cout);
        std::cout << "final fidelity: " << outcome.final_fidelity << "\n";
        return exit_ok;
    } catch (const qoc1d::ConfigError& e) {
        std::cerr << "config-error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const qoc1d::ConvergenceError& e) {
        std::cerr << "convergence-failure: " << e.what() << "\n";
        return exit_convergence_failure;
    } catch (const qoc1d::IoError& e) {
        std::cerr << "io-error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_convergence_failure;
    }
}
