#pragma once

#include <string>
#include <utility>
#include <vector>

#include "headingsim/data.hpp"
#include "json.hpp"

namespace hsim::cli {

// World description from a JSON file. Every key is optional and overrides
// the built-in world; unknown keys are rejected so typos cannot silently
// fall back to defaults. Throws ConfigError on any problem.
WorldConfig world_from_json_file(const std::string& path);
WorldConfig world_from_json(const nlohmann::json& j);

// Run manifest: command, resolved parameters, and content hashes of every
// input and output file. Deliberately carries no timestamps or host state,
// so a rerun of the same command produces the same manifest.
void write_manifest(
    const std::string& path, const std::string& command,
    const nlohmann::json& parameters,
    const std::vector<std::string>& input_paths,
    const std::vector<std::string>& output_paths,
    const std::vector<std::pair<std::string, std::string>>& formats);

// Default manifest location for a primary output file.
std::string manifest_path_for(const std::string& out_path,
                              const std::string& override_path);

}  // namespace hsim::cli
