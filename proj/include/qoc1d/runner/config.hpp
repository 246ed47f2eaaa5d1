#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qoc1d::runner {

using json = nlohmann::json;

std::vector<std::string> scenario_ids();
bool is_scenario(const std::string& id);

/// Full default parameter tree of a scenario; the schema for overrides.
json scenario_defaults(const std::string& id);

/// Deep-merge overrides into defaults. Unknown keys, structural mismatches
/// and type mismatches raise ConfigError with the dotted key path.
json merge_config(const json& defaults, const json& overrides,
                  const std::string& path_prefix = "");

/// Parse and validate a top-level config document
/// {"scenario": id, "seed": n?, "overrides": {...}?}; returns the merged
/// effective parameter tree (including "scenario").
json effective_config(const json& document);

/// Apply a dotted-path assignment ("a.b.c=value") onto an overrides tree;
/// values parse as JSON scalars with fallback to string.
void apply_key_value(json& overrides, const std::string& assignment);

} // namespace qoc1d::runner
