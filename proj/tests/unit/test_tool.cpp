#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "avgcase/errors.hpp"
#include "csv.hpp"
#include "manifest.hpp"
#include "runs.hpp"
#include "tool_config.hpp"

using namespace avgcase;
using namespace avgcase::tool;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("avgcase_tool_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string write_file(const fs::path& dir, const std::string& name,
                       const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const std::string& text) {
    const auto pos = text.find('\r');
    return pos == std::string::npos ? text : text.substr(0, pos);
}

// Field must appear in the ConfigInvalidError message.
#define CHECK_CONFIG_ERROR(expr, field)                          \
    do {                                                         \
        try {                                                    \
            (void)(expr);                                        \
            FAIL("expected ConfigInvalidError for " field);      \
        } catch (const ConfigInvalidError& e) {                  \
            CHECK(std::string(e.what()).find(field) !=           \
                  std::string::npos);                            \
        }                                                        \
    } while (0)

const char* kMinimalConfig = R"({
  "model": {"family": "geometric", "q": 0.5, "A": 1.0, "dims": [1]},
  "mc": {"seed": 7}
})";

}  // namespace

TEST_CASE("config loader accepts a minimal document") {
    TempDir tmp;
    const std::string path = write_file(tmp.path, "min.json", kMinimalConfig);
    const ToolConfig cfg = load_config(path);
    CHECK(cfg.model.family == "geometric");
    CHECK(cfg.model.dims == std::vector<int>{1});
    CHECK(cfg.criterion == Criterion::absolute);
    CHECK(cfg.mc.seed == 7);
    CHECK(cfg.mc.trials_x == 100);
    CHECK(cfg.grids.k_max == 25);
    CHECK(cfg.outputs.precision == 12);
    CHECK_FALSE(cfg.hypothesis.has_value());
}

TEST_CASE("config loader names the offending field") {
    TempDir tmp;
    const auto with = [&](const std::string& body) {
        return load_config(write_file(tmp.path, "cfg.json", body));
    };
    CHECK_CONFIG_ERROR(with("not json at all"), "not valid JSON");
    CHECK_CONFIG_ERROR(with("[]"), "(root)");
    CHECK_CONFIG_ERROR(with(R"({"mc": {"seed": 1}})"), "model");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "cubic", "dims": [1]}, "mc": {"seed": 1}})"),
        "model.family");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "q": 1.5, "dims": [1]}, "mc": {"seed": 1}})"),
        "model.q");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": []}, "mc": {"seed": 1}})"),
        "model.dims");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1, 1]}, "mc": {"seed": 1}})"),
        "model.dims[1]");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {}})"),
        "mc.seed");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": -4}})"),
        "mc.seed");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "grids": {"eps": [0.5, 2.0]}})"),
        "grids.eps[1]");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "grids": {"eps": [0.5, 0.5]}})"),
        "grids.eps[1]");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "grids": {"transfer_delta": 0.5}})"),
        "grids.transfer_delta");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "typo_section": {}})"),
        "typo_section");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "tensor", "weights": [0.5, 0.7], "dims": [1]},
                 "mc": {"seed": 1}})"),
        "model.weights[1]");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "grids": {"st_pairs": [[1.0]]}})"),
        "grids.st_pairs[0]");
    CHECK_CONFIG_ERROR(
        with(R"({"model": {"family": "geometric", "dims": [1]}, "mc": {"seed": 1},
                 "hypothesis": {"A": 0.5}})"),
        "hypothesis.A");
}

TEST_CASE("config model specs map onto decay families") {
    ModelSpec alg;
    alg.family = "algebraic";
    alg.alpha = 3.0;
    alg.C = 2.0;
    CHECK(make_family(alg).label() == "algebraic(alpha=3,C=2)");

    ModelSpec ten;
    ten.family = "tensor";
    ten.weights = {1.0, 0.25};
    CHECK(make_family(ten).label() == "tensor-list(k=2,w1=1)");

    ModelSpec rule;
    rule.family = "tensor";
    rule.c = 1.0;
    rule.r = 0.5;
    CHECK(make_family(rule).label() == "tensor-rule(c=1,r=0.5)");
}

TEST_CASE("csv writer escapes and checks field counts") {
    TempDir tmp;
    const std::string path = (tmp.path / "t.csv").string();
    {
        CsvWriter csv(path, {"a", "b"});
        csv.row({"plain", "with,comma"});
        csv.row({"quote\"inside", "line\nbreak"});
        CHECK(csv.rows() == 2);
        CHECK_THROWS_AS(csv.row({"only-one"}), std::logic_error);
    }
    CHECK(slurp(path) ==
          "a,b\r\n"
          "plain,\"with,comma\"\r\n"
          "\"quote\"\"inside\",\"line\nbreak\"\r\n");
}

TEST_CASE("csv number formatting honours the precision setting") {
    CHECK(fmt_double(0.25, 12) == "0.25");
    CHECK(fmt_double(1.0 / 3.0, 12) == "0.333333333333");
    CHECK(fmt_double(1.0 / 3.0, 17) == "0.33333333333333331");
    CHECK(fmt_double(1e-30, 12) == "1e-30");
    CHECK(fmt_uint(18446744073709551615ULL) == "18446744073709551615");
    CHECK(fmt_bool(true) == "1");
    CHECK(fmt_bool(false) == "0");
}

TEST_CASE("config hash is stable and input sensitive") {
    const nlohmann::json a = nlohmann::json::parse(R"({"x": 1, "y": [2, 3]})");
    const nlohmann::json b = nlohmann::json::parse(R"({"y": [2, 3], "x": 1})");
    const nlohmann::json c = nlohmann::json::parse(R"({"x": 1, "y": [2, 4]})");
    CHECK(config_hash_hex(a) == config_hash_hex(b));  // key order canonical
    CHECK(config_hash_hex(a) != config_hash_hex(c));
    CHECK(config_hash_hex(a).substr(0, 8) == "fnv1a64:");
    CHECK(config_hash_hex(a).size() == 8 + 16);
}

TEST_CASE("runner headers are pinned") {
    TempDir tmp;
    RunContext ctx;
    ctx.out_dir = tmp.path.string();
    ctx.seed = 11;

    ToolConfig cfg;
    cfg.model.family = "geometric";
    cfg.model.q = 0.5;
    cfg.model.A = 1.0;
    cfg.model.dims = {1};
    cfg.raw = nlohmann::json::object();
    cfg.grids.k_max = 3;
    cfg.grids.eps = {0.5, 0.3, 0.2, 0.1};
    cfg.grids.n = {48};
    cfg.grids.m = {1};
    cfg.grids.omega = {0.5};
    cfg.mc.trials_x = 2;
    cfg.mc.trials_f = 2;
    cfg.hypothesis = HypothesisSpec{1.75, 0.5, 10};

    run_spectrum(cfg, ctx);
    CHECK(first_line(slurp((tmp.path / "spectrum.csv").string())) ==
          "model,d,k,lambda,sqrt_lambda,tail_sum,avg_error,trace");

    run_concentration(cfg, ctx);
    CHECK(first_line(slurp((tmp.path / "concentration.csv").string())) ==
          "model,d,n,m,trials,failures,rate,ci_low,ci_high,bound_raw,bound,"
          "pass");

    run_lsq_error(cfg, ctx);  // n = 48 is below the schedule: infeasible row
    CHECK(first_line(slurp((tmp.path / "lsq_error.csv").string())) ==
          "model,d,n,m,delta,feasible,trials_x,successes,trials_f,rejections,"
          "mean_sq,std_error,bound_sq,kl_terms,truncation_bias,pass");

    run_complexity(cfg, ctx);
    CHECK(first_line(slurp((tmp.path / "complexity.csv").string())) ==
          "model,criterion,eps,d,gamma,n_star");

    run_transfer(cfg, ctx);  // no feasible n: rows report found=0
    CHECK(first_line(slurp((tmp.path / "transfer.csv").string())) ==
          "model,criterion,eps,d,n_all,n_all_quarter,n_all_shifted,bound_log,"
          "bound_power,bound_delta,n_std_empirical,err_ci_upper,found,pass,"
          "witness");

    run_exp_decay(cfg, ctx);
    CHECK(first_line(slurp((tmp.path / "exp_decay.csv").string())) ==
          "model,d,n,m,feasible,A,q,q2,hypothesis_holds,hypothesis_witness,"
          "mean_sq,std_error,rms_error,bound,pass");
}

TEST_CASE("tractability runner needs a classification-sized grid") {
    TempDir tmp;
    RunContext ctx;
    ctx.out_dir = tmp.path.string();

    ToolConfig cfg;
    cfg.model.family = "geometric";
    cfg.model.dims = {1, 2, 3};
    cfg.raw = nlohmann::json::object();
    cfg.grids.eps = {0.5, 0.3, 0.2, 0.1};
    CHECK_NOTHROW(run_tractability(cfg, ctx));
    CHECK(first_line(slurp((tmp.path / "tractability.csv").string())) ==
          "model,criterion,s,t,scaling,notion,verdict,c_fit,p_fit,q_fit,"
          "t_fit,residual,inner_max,outer_max,witness");

    cfg.model.dims = {1, 2};
    CHECK_THROWS_AS(run_tractability(cfg, ctx), GridTooSmallError);
}

TEST_CASE("runners demand the grids they consume") {
    TempDir tmp;
    RunContext ctx;
    ctx.out_dir = tmp.path.string();
    ToolConfig cfg;
    cfg.model.family = "geometric";
    cfg.model.dims = {1};
    cfg.raw = nlohmann::json::object();
    CHECK_CONFIG_ERROR(run_concentration(cfg, ctx), "grids.n");
    CHECK_CONFIG_ERROR(run_lsq_error(cfg, ctx), "grids.n");
    CHECK_CONFIG_ERROR(run_complexity(cfg, ctx), "grids.eps");
    CHECK_CONFIG_ERROR(run_transfer(cfg, ctx), "grids.eps");
    CHECK_CONFIG_ERROR(run_exp_decay(cfg, ctx), "hypothesis");
    cfg.grids.eps = {0.5};
    CHECK_CONFIG_ERROR(run_transfer(cfg, ctx), "grids.n");
    cfg.grids.n = {100};
    CHECK_CONFIG_ERROR(run_transfer(cfg, ctx), "grids.omega");
}

TEST_CASE("spectrum rows reproduce the eigenvalues") {
    TempDir tmp;
    RunContext ctx;
    ctx.out_dir = tmp.path.string();
    ToolConfig cfg;
    cfg.model.family = "geometric";
    cfg.model.dims = {1};
    cfg.raw = nlohmann::json::object();
    cfg.grids.k_max = 2;
    run_spectrum(cfg, ctx);
    const std::string body = slurp((tmp.path / "spectrum.csv").string());
    CHECK(body.find("\r\n\"geometric(q=0.5,A=1)|d=1\",1,1,0.25,0.5,") !=
          std::string::npos);
}

TEST_CASE("manifest records the run parameters") {
    TempDir tmp;
    const nlohmann::json config{{"k", 1}};
    const std::string path = write_manifest(
        tmp.path.string(), "spectrum", "cfg.json", config, 42, 3, 12, 1.5,
        {"a.csv", "b.csv"});
    const nlohmann::json m = nlohmann::json::parse(slurp(path));
    CHECK(m.at("subcommand") == "spectrum");
    CHECK(m.at("seed") == 42);
    CHECK(m.at("jobs") == 3);
    CHECK(m.at("outputs") == "a.csv;b.csv");
    CHECK(m.at("config_hash") == config_hash_hex(config));
    CHECK(m.at("wall_time_s") == 1.5);
    CHECK(m.contains("tool_version"));
    CHECK(m.contains("eigen_version"));
    CHECK(m.contains("compiler"));
}
