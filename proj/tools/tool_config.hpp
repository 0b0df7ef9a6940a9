#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "avgcase/complexity.hpp"
#include "avgcase/model.hpp"

namespace avgcase::tool {

struct ModelSpec {
    std::string family;            // "algebraic" | "geometric" | "tensor"
    double alpha = 2.0;            // lambda_k = C k^-alpha
    double C = 1.0;
    double q = 0.5;                // sqrt(lambda_k) = A q^k
    double A = 1.0;
    double c = 1.0;                // per-coordinate weights c r^(j-1)
    double r = 0.5;
    std::vector<double> weights;   // explicit per-coordinate weights
    std::vector<int> dims;
};

struct GridSpec {
    std::vector<double> eps;
    std::vector<std::size_t> n;
    std::vector<std::size_t> m;             // mixture orders to study
    std::optional<std::size_t> m_override;  // fixed order instead of the schedule
    std::optional<double> delta;            // schedule budget; fixed 2^-sqrt(2) when absent
    double transfer_delta = kDeltaBoundMax;
    std::vector<double> omega;
    std::vector<std::pair<double, double>> st_pairs;
    std::size_t k_max = 25;  // spectrum table depth
};

struct McSpec {
    std::size_t trials_x = 100;
    std::size_t trials_f = 100;
    double kl_rel_tail = 1e-6;
    std::size_t kl_max_terms = 4096;
    std::size_t max_redraws = 1000;
    std::uint64_t seed = 0;  // mandatory: runs take no implicit entropy
    double ci_z = 1.96;      // CI half-width multiplier on the squared error
};

struct HypothesisSpec {
    double A = 1.0;
    double q = 0.5;
    std::size_t k_max = 200;
};

struct OutputSpec {
    int precision = 12;
};

struct ToolConfig {
    ModelSpec model;
    Criterion criterion = Criterion::absolute;
    GridSpec grids;
    McSpec mc;
    std::optional<HypothesisSpec> hypothesis;
    OutputSpec outputs;
    nlohmann::json raw;  // parsed document, for hashing
};

// Parses and validates; throws ConfigInvalidError naming the offending
// field, e.g. "grids.eps[2]: must lie in (0,1)".
ToolConfig load_config(const std::string& path);

DecayFamily make_family(const ModelSpec& spec);
ProblemModel make_model(const ModelSpec& spec, int d);
ModelFamily make_model_family(const ModelSpec& spec);

}  // namespace avgcase::tool
