#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tool_config.hpp"

namespace avgcase::tool {

struct RunContext {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    int precision = 12;
};

// Each runner writes its CSV files into ctx.out_dir and returns their
// names (relative to the directory) for the manifest.
std::vector<std::string> run_spectrum(const ToolConfig& cfg,
                                      const RunContext& ctx);
std::vector<std::string> run_concentration(const ToolConfig& cfg,
                                           const RunContext& ctx);
std::vector<std::string> run_lsq_error(const ToolConfig& cfg,
                                       const RunContext& ctx);
std::vector<std::string> run_complexity(const ToolConfig& cfg,
                                        const RunContext& ctx);
std::vector<std::string> run_transfer(const ToolConfig& cfg,
                                      const RunContext& ctx);
std::vector<std::string> run_tractability(const ToolConfig& cfg,
                                          const RunContext& ctx);
std::vector<std::string> run_exp_decay(const ToolConfig& cfg,
                                       const RunContext& ctx);

// Dispatches on the subcommand name, times the run, and writes the
// manifest.  Returns the files written (CSVs plus manifest).
std::vector<std::string> run_subcommand(const std::string& name,
                                        const ToolConfig& cfg,
                                        const RunContext& ctx,
                                        const std::string& config_path);

}  // namespace avgcase::tool
