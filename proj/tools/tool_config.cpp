#include "tool_config.hpp"

#include <fstream>
#include <set>

#include "avgcase/errors.hpp"

namespace avgcase::tool {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigInvalidError(field + ": " + what);
}

const json& member(const json& obj, const std::string& path,
                   const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + key, "required");
    return *it;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(path + key, "unknown key");
    }
}

double as_double(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "must be a number");
    return v.get<double>();
}

double ranged(const json& obj, const std::string& path, const std::string& key,
              double lo, double hi, double fallback, bool lo_open, bool hi_open) {
    const auto it = obj.find(key);
    const double x =
        it == obj.end() ? fallback : as_double(*it, path + key);
    const bool below = lo_open ? x <= lo : x < lo;
    const bool above = hi_open ? x >= hi : x > hi;
    if (below || above) {
        const char lb = lo_open ? '(' : '[';
        const char rb = hi_open ? ')' : ']';
        fail(path + key, "must lie in " + (lb + std::to_string(lo)) + "," +
                             std::to_string(hi) + rb);
    }
    return x;
}

std::uint64_t as_uint(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) fail(field, "must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::size_t counted(const json& obj, const std::string& path,
                    const std::string& key, std::size_t lo, std::size_t hi,
                    std::size_t fallback) {
    const auto it = obj.find(key);
    const std::uint64_t x =
        it == obj.end() ? fallback : as_uint(*it, path + key);
    if (x < lo || x > hi)
        fail(path + key, "must lie in [" + std::to_string(lo) + "," +
                             std::to_string(hi) + "]");
    return static_cast<std::size_t>(x);
}

ModelSpec parse_model(const json& j) {
    if (!j.is_object()) fail("model", "must be an object");
    reject_unknown_keys(j, "model.",
                        {"family", "alpha", "C", "q", "A", "c", "r", "weights",
                         "dims"});
    ModelSpec spec;
    const json& fam = member(j, "model.", "family");
    if (!fam.is_string()) fail("model.family", "must be a string");
    spec.family = fam.get<std::string>();
    if (spec.family == "algebraic") {
        spec.alpha = ranged(j, "model.", "alpha", 1.0, 64.0, 2.0, true, false);
        spec.C = ranged(j, "model.", "C", 0.0, 1e12, 1.0, false, false);
    } else if (spec.family == "geometric") {
        spec.q = ranged(j, "model.", "q", 0.0, 1.0, 0.5, true, true);
        spec.A = ranged(j, "model.", "A", 0.0, 1e300, 1.0, false, false);
    } else if (spec.family == "tensor") {
        if (j.contains("weights")) {
            const json& w = j.at("weights");
            if (!w.is_array() || w.empty())
                fail("model.weights", "must be a nonempty array");
            double prev = 1e300;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const std::string field =
                    "model.weights[" + std::to_string(i) + "]";
                const double x = as_double(w[i], field);
                if (x <= 0.0) fail(field, "must be positive");
                if (x > prev) fail(field, "weights must be nonincreasing");
                prev = x;
                spec.weights.push_back(x);
            }
        } else {
            spec.c = ranged(j, "model.", "c", 0.0, 1e12, 1.0, true, false);
            spec.r = ranged(j, "model.", "r", 0.0, 1.0, 0.5, true, true);
        }
    } else {
        fail("model.family", "must be algebraic, geometric, or tensor");
    }
    const json& dims = member(j, "model.", "dims");
    if (!dims.is_array() || dims.empty())
        fail("model.dims", "must be a nonempty array");
    std::set<int> seen;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::string field = "model.dims[" + std::to_string(i) + "]";
        const std::uint64_t d = as_uint(dims[i], field);
        if (d < 1 || d > 64) fail(field, "must lie in [1,64]");
        if (!seen.insert(static_cast<int>(d)).second)
            fail(field, "duplicate dimension");
        spec.dims.push_back(static_cast<int>(d));
    }
    return spec;
}

GridSpec parse_grids(const json& j) {
    if (!j.is_object()) fail("grids", "must be an object");
    reject_unknown_keys(j, "grids.",
                        {"eps", "n", "m", "m_override", "delta",
                         "transfer_delta", "omega", "st_pairs", "k_max"});
    GridSpec g;
    if (j.contains("eps")) {
        const json& eps = j.at("eps");
        if (!eps.is_array()) fail("grids.eps", "must be an array");
        std::set<double> seen;
        for (std::size_t i = 0; i < eps.size(); ++i) {
            const std::string field = "grids.eps[" + std::to_string(i) + "]";
            const double e = as_double(eps[i], field);
            if (e <= 0.0 || e >= 1.0) fail(field, "must lie in (0,1)");
            if (!seen.insert(e).second) fail(field, "duplicate accuracy");
            g.eps.push_back(e);
        }
    }
    for (const char* key : {"n", "m"}) {
        if (!j.contains(key)) continue;
        const json& arr = j.at(key);
        const std::string base = std::string("grids.") + key;
        if (!arr.is_array()) fail(base, "must be an array");
        auto& dst = key[0] == 'n' ? g.n : g.m;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string field = base + "[" + std::to_string(i) + "]";
            const std::uint64_t v = as_uint(arr[i], field);
            if (v < 1) fail(field, "must be at least 1");
            dst.push_back(static_cast<std::size_t>(v));
        }
    }
    if (j.contains("m_override"))
        g.m_override = counted(j, "grids.", "m_override", 1, 1000000, 1);
    if (j.contains("delta"))
        g.delta = ranged(j, "grids.", "delta", 0.0, 1.0, 0.5, true, true);
    g.transfer_delta = ranged(j, "grids.", "transfer_delta", 0.0,
                              kDeltaBoundMax, kDeltaBoundMax, true, false);
    if (j.contains("omega")) {
        const json& om = j.at("omega");
        if (!om.is_array()) fail("grids.omega", "must be an array");
        for (std::size_t i = 0; i < om.size(); ++i) {
            const std::string field = "grids.omega[" + std::to_string(i) + "]";
            const double w = as_double(om[i], field);
            if (w <= 0.0) fail(field, "must be positive");
            g.omega.push_back(w);
        }
    }
    if (j.contains("st_pairs")) {
        const json& st = j.at("st_pairs");
        if (!st.is_array()) fail("grids.st_pairs", "must be an array");
        for (std::size_t i = 0; i < st.size(); ++i) {
            const std::string field = "grids.st_pairs[" + std::to_string(i) + "]";
            const json& pair = st[i];
            if (!pair.is_array() || pair.size() != 2)
                fail(field, "must be a [s,t] pair");
            const double s = as_double(pair[0], field + "[0]");
            const double t = as_double(pair[1], field + "[1]");
            if (s <= 0.0) fail(field + "[0]", "must be positive");
            if (t <= 0.0) fail(field + "[1]", "must be positive");
            g.st_pairs.emplace_back(s, t);
        }
    }
    g.k_max = counted(j, "grids.", "k_max", 1, 100000, 25);
    return g;
}

McSpec parse_mc(const json& j) {
    if (!j.is_object()) fail("mc", "must be an object");
    reject_unknown_keys(j, "mc.",
                        {"trials_x", "trials_f", "kl_rel_tail", "kl_max_terms",
                         "max_redraws", "seed", "ci_z"});
    McSpec mc;
    mc.trials_x = counted(j, "mc.", "trials_x", 1, 10000000, 100);
    mc.trials_f = counted(j, "mc.", "trials_f", 1, 10000000, 100);
    mc.kl_rel_tail = ranged(j, "mc.", "kl_rel_tail", 0.0, 1.0, 1e-6, true, true);
    mc.kl_max_terms = counted(j, "mc.", "kl_max_terms", 1, 1000000, 4096);
    mc.max_redraws = counted(j, "mc.", "max_redraws", 0, 1000000, 1000);
    mc.seed = as_uint(member(j, "mc.", "seed"), "mc.seed");
    mc.ci_z = ranged(j, "mc.", "ci_z", 0.0, 100.0, 1.96, false, false);
    return mc;
}

HypothesisSpec parse_hypothesis(const json& j) {
    if (!j.is_object()) fail("hypothesis", "must be an object");
    reject_unknown_keys(j, "hypothesis.", {"A", "q", "k_max"});
    HypothesisSpec h;
    h.A = ranged(j, "hypothesis.", "A", 1.0, 1e300, 1.0, false, false);
    h.q = ranged(j, "hypothesis.", "q", 0.0, 1.0, 0.5, true, true);
    h.k_max = counted(j, "hypothesis.", "k_max", 1, 10000000, 200);
    return h;
}

OutputSpec parse_outputs(const json& j) {
    if (!j.is_object()) fail("outputs", "must be an object");
    reject_unknown_keys(j, "outputs.", {"precision"});
    OutputSpec out;
    out.precision = static_cast<int>(counted(j, "outputs.", "precision", 6, 17, 12));
    return out;
}

}  // namespace

ToolConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalidError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigInvalidError(std::string("config is not valid JSON: ") +
                                 e.what());
    }
    if (!doc.is_object()) fail("(root)", "must be a JSON object");
    reject_unknown_keys(doc, "",
                        {"model", "criterion", "grids", "mc", "hypothesis",
                         "outputs"});

    ToolConfig cfg;
    cfg.raw = doc;
    cfg.model = parse_model(member(doc, "", "model"));
    if (doc.contains("criterion")) {
        const json& crit = doc.at("criterion");
        if (!crit.is_string()) fail("criterion", "must be a string");
        const std::string name = crit.get<std::string>();
        if (name == "ABS")
            cfg.criterion = Criterion::absolute;
        else if (name == "NOR")
            cfg.criterion = Criterion::normalized;
        else
            fail("criterion", "must be ABS or NOR");
    }
    cfg.grids = doc.contains("grids") ? parse_grids(doc.at("grids")) : GridSpec{};
    cfg.mc = parse_mc(member(doc, "", "mc"));
    if (doc.contains("hypothesis"))
        cfg.hypothesis = parse_hypothesis(doc.at("hypothesis"));
    if (doc.contains("outputs")) cfg.outputs = parse_outputs(doc.at("outputs"));
    return cfg;
}

DecayFamily make_family(const ModelSpec& spec) {
    if (spec.family == "algebraic")
        return DecayFamily::algebraic(spec.alpha, spec.C);
    if (spec.family == "geometric")
        return DecayFamily::geometric(spec.q, spec.A);
    if (!spec.weights.empty()) return DecayFamily::tensor_list(spec.weights);
    return DecayFamily::tensor_rule(spec.c, spec.r);
}

ProblemModel make_model(const ModelSpec& spec, int d) {
    return ProblemModel(make_family(spec), d);
}

ModelFamily make_model_family(const ModelSpec& spec) {
    return [spec](int d) { return make_model(spec, d); };
}

}  // namespace avgcase::tool
