#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "avgcase/errors.hpp"
#include "runs.hpp"
#include "tool_config.hpp"

namespace {

constexpr const char* kSubcommands[][2] = {
    {"spectrum", "Eigenvalue, tail, and benchmark-error tables"},
    {"concentration", "Design admissibility failure rates vs. the tail bound"},
    {"lsq-error", "Least-squares recovery error vs. the conditional bound"},
    {"complexity", "Information complexity n*(eps, d) tables"},
    {"transfer", "Standard-vs-general information complexity audit"},
    {"tractability", "Tractability classification report"},
    {"exp-decay", "Exponential-decay error bound study"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Average-case sampling recovery laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    unsigned jobs = 1;

    for (const auto& [name, description] : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "experiment configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (created)");
        sub->add_option("--seed", seed_override,
                        "override the seed in the config")
            ->each([&](const std::string&) { has_seed_override = true; });
        sub->add_option("--jobs", jobs, "worker threads")
            ->check(CLI::Range(1u, 256u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every usage problem exits 1
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();

    try {
        const avgcase::tool::ToolConfig cfg =
            avgcase::tool::load_config(config_path);
        avgcase::tool::RunContext ctx;
        ctx.out_dir = out_dir;
        ctx.seed = has_seed_override ? seed_override : cfg.mc.seed;
        ctx.jobs = jobs;
        ctx.precision = cfg.outputs.precision;
        std::filesystem::create_directories(ctx.out_dir);
        avgcase::tool::run_subcommand(subcommand, cfg, ctx, config_path);
        return 0;
    } catch (const avgcase::ConfigInvalidError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const avgcase::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
