#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "humat/engine.hpp"

namespace humat {

/// A `dotted.key.path=value` command-line override. Sequence elements are
/// addressed by index, e.g. `motives.1.group=social`.
struct Override {
  std::string path;
  std::string value;
};

/// Splits `key=value`. Throws InvalidConfig on malformed input.
Override parse_override(std::string_view text);

/// Parses a scenario document (YAML, or JSON which YAML accepts), applies
/// overrides in order, and validates the result. Throws InvalidConfig with a
/// field path.
ScenarioConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});
ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::vector<Override>& overrides = {});

/// Canonical JSON form of a config; load_config accepts it back.
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Hex SHA-256 of the canonical JSON form. Insensitive to comments,
/// whitespace and key order in the source document.
std::string config_digest(const ScenarioConfig& config);

}  // namespace humat
