#include "manifest.hpp"

#include <Eigen/Core>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace avgcase::tool {

std::string config_hash_hex(const nlohmann::json& config) {
    const std::string canon = config.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string write_manifest(const std::string& out_dir,
                           const std::string& subcommand,
                           const std::string& config_path,
                           const nlohmann::json& config, std::uint64_t seed,
                           unsigned jobs, int precision, double wall_time_s,
                           const std::vector<std::string>& outputs) {
    std::string joined;
    for (const std::string& f : outputs) {
        if (!joined.empty()) joined += ';';
        joined += f;
    }
    char eigen_version[32];
    std::snprintf(eigen_version, sizeof eigen_version, "%d.%d.%d",
                  EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION,
                  EIGEN_MINOR_VERSION);

    nlohmann::json manifest{
        {"subcommand", subcommand},
        {"config_path", config_path},
        {"config_hash", config_hash_hex(config)},
        {"seed", seed},
        {"jobs", jobs},
        {"precision", precision},
        {"tool_version", kToolVersion},
        {"eigen_version", eigen_version},
        {"compiler", __VERSION__},
        {"wall_time_s", wall_time_s},
        {"outputs", joined},
    };
    const std::string path = out_dir + "/" + subcommand + "_manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << manifest.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
    return path;
}

}  // namespace avgcase::tool
