#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace avgcase::tool {

inline constexpr const char* kToolVersion = "1.0.0";

// FNV-1a 64 over the canonical (sorted-key) dump of the parsed config.
std::string config_hash_hex(const nlohmann::json& config);

// Flat run-manifest written next to the CSV outputs.  Keys:
// subcommand, config_path, config_hash, seed, jobs, precision,
// tool_version, eigen_version, compiler, wall_time_s, outputs
// (semicolon-joined file names relative to the output directory).
std::string write_manifest(const std::string& out_dir,
                           const std::string& subcommand,
                           const std::string& config_path,
                           const nlohmann::json& config, std::uint64_t seed,
                           unsigned jobs, int precision, double wall_time_s,
                           const std::vector<std::string>& outputs);

}  // namespace avgcase::tool
