// Acceptance runner: a fixed battery of quantitative checks, one line
// of output per criterion, exit 0 only if every selected criterion
// passes.  Tolerances, budgets, and seeds are pinned here on purpose;
// the numbers are part of the contract, not knobs.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "avgcase/complexity.hpp"
#include "avgcase/errors.hpp"
#include "avgcase/lsq.hpp"
#include "avgcase/model.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/sampling.hpp"
#include "runs.hpp"
#include "tool_config.hpp"

namespace {

using namespace avgcase;
namespace fs = std::filesystem;

struct Args {
    std::string tool;
    std::string demo;
    std::string work;
    unsigned jobs = 1;
    int only = 0;  // 0: run everything
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::string fmt(const char* pattern, ...) {
    va_list args;
    va_start(args, pattern);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------- CSV

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::map<std::string, std::size_t> header_index(
    const std::vector<std::vector<std::string>>& rows) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < rows.at(0).size(); ++i)
        index[rows[0][i]] = i;
    return index;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

// ------------------------------------------- criterion 1 & 2 fixture

struct DesignRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    int d = 0;
    double deviation = 0.0;
    double lambda_min = 0.0;
};

struct ReproductionRun {
    std::vector<DesignRecord> designs;
    double max_rel_err = 0.0;
    std::size_t fits = 0;
    double elapsed = 0.0;
    bool done = false;
};

ReproductionRun g_repro;

constexpr std::uint64_t kSeedC1 = 811220260;

void run_reproduction_study() {
    if (g_repro.done) return;
    const auto start = std::chrono::steady_clock::now();
    const std::size_t orders[] = {1, 2, 4, 8};
    const std::size_t budgets[] = {480, 960, 2400, 5400};
    std::uint64_t combo = 0;
    for (std::size_t oi = 0; oi < 4; ++oi) {
        const std::size_t m = orders[oi];
        const std::size_t n = budgets[oi];
        for (int d : {1, 2}) {
            const ProblemModel model(DecayFamily::geometric(0.5), d);
            for (int rep = 0; rep < 20; ++rep) {
                const std::uint64_t master = derive_seed(kSeedC1, combo++);
                RngStream xrng(master, 0);
                const SampleSet X = draw_samples(model, m, n, xrng);
                const DesignMatrix design = build_design(model, X, m);
                const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
                    design.gram);
                g_repro.designs.push_back({n, m, d, design.deviation,
                                           eig.eigenvalues().minCoeff()});

                const LsqSolver solver(design);
                const Eigen::MatrixXd basis =
                    design.scaled.array().colwise() *
                    design.weights.array().sqrt();
                RngStream frng(master, 1);
                Eigen::VectorXd coeffs(static_cast<Eigen::Index>(m));
                for (int t = 0; t < 100; ++t) {
                    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
                        coeffs[k] = frng.normal();
                    const Eigen::VectorXd values = basis * coeffs;
                    const LsqFit fit = solver.solve(
                        {values.data(), static_cast<std::size_t>(values.size())});
                    const double rel =
                        (fit.coeffs - coeffs).norm() / coeffs.norm();
                    g_repro.max_rel_err = std::max(g_repro.max_rel_err, rel);
                    ++g_repro.fits;
                }
            }
        }
    }
    g_repro.elapsed = seconds_since(start);
    g_repro.done = true;
}

Outcome criterion1(const Args&) {
    run_reproduction_study();
    const bool within = g_repro.max_rel_err <= 1e-8;
    const bool on_time = g_repro.elapsed < 60.0;
    return {within && on_time,
            fmt("max rel coeff err %.3g over %zu fits in %.1fs%s",
                g_repro.max_rel_err, g_repro.fits, g_repro.elapsed,
                on_time ? "" : " (budget 60s exceeded)")};
}

Outcome criterion2(const Args&) {
    run_reproduction_study();
    std::size_t admissible = 0;
    double min_lambda = 1.0;
    bool ok = true;
    for (const DesignRecord& r : g_repro.designs) {
        if (r.deviation > kAdmissibleDeviation) continue;
        ++admissible;
        min_lambda = std::min(min_lambda, r.lambda_min);
        // smallest gram eigenvalue >= 1/2, i.e. ||(Lt L)^-1|| <= 2/n
        ok = ok && r.lambda_min >= 0.5 - 1e-10;
        const double inv_norm =
            1.0 / (static_cast<double>(r.n) * r.lambda_min);
        ok = ok && inv_norm <= (2.0 / static_cast<double>(r.n)) * (1.0 + 1e-10);
    }
    ok = ok && admissible > 0;
    return {ok, fmt("%zu/%zu designs admissible, min gram eigenvalue %.6f",
                    admissible, g_repro.designs.size(), min_lambda)};
}

// ------------------------------------------------------- criterion 3

Outcome criterion3(const Args& args) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemModel model(DecayFamily::geometric(0.5), 1);
    constexpr std::uint64_t kSeed = 33185502;
    constexpr std::size_t kTrials = 10000;
    bool ok = true;
    std::size_t judged = 0;
    double worst_margin = -1.0;  // max ci_low - bound over judged cells
    std::uint64_t cell = 0;
    for (std::size_t n : {480, 960, 2400, 4800}) {
        for (std::size_t m : {1, 2, 4}) {
            const FailureRate fr = empirical_failure_rate(
                model, n, m, kTrials, derive_seed(kSeed, cell++), args.jobs);
            const double bound = concentration_bound_clipped(n, m);
            if (bound >= 0.9) continue;
            ++judged;
            worst_margin = std::max(worst_margin, fr.ci_low - bound);
            ok = ok && fr.ci_low <= bound;
        }
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 600.0;
    return {ok && on_time,
            fmt("%zu informative cells, worst ci_low-bound margin %.3g, "
                "%.1fs%s",
                judged, worst_margin, elapsed,
                on_time ? "" : " (budget 600s exceeded)")};
}

// ------------------------------------------------------- criterion 4

Outcome criterion4(const Args& args) {
    const auto start = std::chrono::steady_clock::now();
    struct Cell {
        std::size_t n;
        double delta;
        std::size_t m_expect;
        double amp_sq_expect;  // (1 + 4m/n) / (1 - delta)
    };
    const Cell cells[] = {
        {600, 0.37521422724648932, 1, 1.61121893385975479},
        {1000, 0.5, 1, 2.008},
        {5000, 0.25, 7, 1.3408},
    };
    constexpr std::uint64_t kSeed = 474192021;

    bool ok = true;
    std::string first_fail;
    double worst_gap = -1e300;  // max (adjusted - 4 SE) - bound_sq
    std::uint64_t flat = 0;
    for (int alg : {0, 1}) {
        for (int d : {1, 2}) {
            const ProblemModel model(alg ? DecayFamily::algebraic(2.0)
                                         : DecayFamily::geometric(0.5),
                                     d);
            MonteCarloPolicy policy;
            policy.trials_x = 50;
            policy.trials_f = 800;  // 50 * 800 = 4e4 pairs per cell
            policy.kl_rel_tail = alg ? 3e-3 : 1e-6;
            policy.kl_max_terms = alg ? 512 : 4096;
            for (const Cell& cell : cells) {
                const ScheduleResult sched = schedule_m(cell.n, cell.delta);
                if (sched.m != cell.m_expect) {
                    ok = false;
                    first_fail = fmt("schedule(%zu, %g) gave m=%zu, want %zu",
                                     cell.n, cell.delta, sched.m,
                                     cell.m_expect);
                    continue;
                }
                const double amp_sq =
                    sched.amplification * sched.amplification;
                if (std::abs(amp_sq - cell.amp_sq_expect) >
                    1e-12 * cell.amp_sq_expect) {
                    ok = false;
                    first_fail = fmt("amplification^2 %.15g, want %.15g",
                                     amp_sq, cell.amp_sq_expect);
                    continue;
                }
                const StdErrorEstimate est = avg_error_std_empirical(
                    model, cell.n, sched.m, cell.delta, policy,
                    derive_seed(kSeed, flat++), args.jobs);
                // the estimate understates the non-truncated error by at
                // most amp_sq * truncation_bias
                const double adjusted =
                    est.mean_sq + amp_sq * est.truncation_bias;
                const double gap =
                    adjusted - 4.0 * est.std_error - est.bound_sq;
                worst_gap = std::max(worst_gap, gap);
                if (gap > 0.0 && first_fail.empty()) {
                    ok = false;
                    first_fail =
                        fmt("%s n=%zu: adjusted %.6g - 4SE > bound %.6g",
                            model.label().c_str(), cell.n, adjusted,
                            est.bound_sq);
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 1800.0;
    std::string detail =
        fmt("12 cells, worst (mean+bias-4SE)-bound gap %.3g, %.1fs", worst_gap,
            elapsed);
    if (!first_fail.empty()) detail += "; " + first_fail;
    if (!on_time) detail += " (budget 1800s exceeded)";
    return {ok && on_time, detail};
}

// ------------------------------------------------------- criterion 5

std::size_t scan_complexity(const ProblemModel& model, double eps,
                            Criterion crit) {
    const double cri =
        crit == Criterion::absolute ? 1.0 : std::sqrt(model.trace());
    const double target = (eps * cri) * (eps * cri);
    for (std::size_t n = 0; n < 2000000; ++n)
        if (model.tail_sum(n) <= target) return n;
    throw Error("scan found no n below 2e6");
}

Outcome criterion5(const Args&) {
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(58112233, 0);
    std::size_t checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int pick = static_cast<int>(rng.below(3));
        const int d = 1 + static_cast<int>(rng.below(3));
        DecayFamily fam = DecayFamily::algebraic(2.0);
        double eps_min = 0.05;
        switch (pick) {
            case 0:
                fam = DecayFamily::algebraic(2.0 + 2.0 * rng.uniform(),
                                             0.5 + 1.5 * rng.uniform());
                break;
            case 1:
                fam = DecayFamily::geometric(0.2 + 0.7 * rng.uniform(),
                                             0.5 + 1.5 * rng.uniform());
                break;
            default: {
                const double r = 0.3 + 0.4 * rng.uniform();
                fam = DecayFamily::tensor_rule(1.0 - r, r);
                eps_min = 0.1;
                break;
            }
        }
        const ProblemModel model(fam, pick == 2 ? d : 1);
        const double eps = eps_min + (0.95 - eps_min) * rng.uniform();
        const Criterion crit =
            rng.below(2) == 0 ? Criterion::absolute : Criterion::normalized;
        if (info_complexity(model, eps, crit) !=
            scan_complexity(model, eps, crit))
            return {false, fmt("mismatch on case %d (%s eps=%g)", trial,
                               model.label().c_str(), eps)};
        ++checked;
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 60.0;
    return {on_time, fmt("%zu random cases match the linear scan, %.1fs%s",
                         checked, elapsed,
                         on_time ? "" : " (budget 60s exceeded)")};
}

// ------------------------------------------------------- criterion 6

Outcome criterion6(const Args& args) {
    const auto start = std::chrono::steady_clock::now();
    const tool::ToolConfig cfg =
        tool::load_config(args.demo + "/transfer.json");
    tool::RunContext ctx;
    ctx.out_dir = args.work + "/c6";
    ctx.seed = cfg.mc.seed;
    ctx.jobs = args.jobs;
    ctx.precision = cfg.outputs.precision;
    fs::create_directories(ctx.out_dir);
    tool::run_transfer(cfg, ctx);

    const auto rows = read_csv(ctx.out_dir + "/transfer.csv");
    const auto col = header_index(rows);
    bool ok = rows.size() > 1;
    std::string fail;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        long long n_all = 0, n_std = 0, found = 0, pass = 0;
        double bound_log = 0.0;
        ok = ok && parse_int(r[col.at("n_all")], n_all) &&
             parse_int(r[col.at("n_std_empirical")], n_std) &&
             parse_int(r[col.at("found")], found) &&
             parse_int(r[col.at("pass")], pass) &&
             parse_double(r[col.at("bound_log")], bound_log);
        if (!ok) {
            fail = "unparseable row " + std::to_string(i);
            break;
        }
        if (!(found && pass && n_all <= n_std &&
              static_cast<double>(n_std) <= bound_log)) {
            ok = false;
            fail = fmt("cell eps=%s: found=%lld pass=%lld n_all=%lld "
                       "n_std=%lld bound_log=%g",
                       r[col.at("eps")].c_str(), found, pass, n_all, n_std,
                       bound_log);
            break;
        }
    }

    // power-form bound dominates the log-form bound on a dense grid
    for (double omega : {0.05, 0.1, 0.5}) {
        for (std::size_t n = 0; n <= 1000 && ok; ++n) {
            if (transfer_power_bound(n, omega) <
                transfer_log_bound(n) * (1.0 - 1e-12)) {
                ok = false;
                fail = fmt("power bound below log bound at n=%zu omega=%g", n,
                           omega);
            }
        }
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 1200.0;
    std::string detail = fmt("%zu audit cells pass, power>=log on 3x1001 "
                             "grid, %.1fs",
                             rows.size() - 1, elapsed);
    if (!fail.empty()) detail += "; " + fail;
    if (!on_time) detail += " (budget 1200s exceeded)";
    return {ok && on_time, detail};
}

// ------------------------------------------------------- criterion 7

Outcome criterion7(const Args& args) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemModel model(DecayFamily::geometric(0.5), 1);
    constexpr double kA = 1.75;
    constexpr double kQ = 0.5;
    const HypothesisCheck hc = check_exp_hypothesis(model, kA, kQ, 200);
    if (!hc.holds)
        return {false, fmt("hypothesis fails at k=%zu", hc.witness)};

    MonteCarloPolicy policy;
    policy.trials_x = 40;
    policy.trials_f = 250;
    constexpr std::uint64_t kSeed = 75051991;
    const double gamma = model.trace();
    bool ok = true;
    double worst_ratio = 0.0;  // max (adjusted - 4 SE) / bound^2
    std::uint64_t cell = 0;
    for (std::size_t n : {600, 1200, 2400}) {
        const ScheduleResult sched = schedule_m_fixed(n);
        const StdErrorEstimate est = avg_error_std_empirical(
            model, n, sched.m, sched.delta, policy, derive_seed(kSeed, cell++),
            args.jobs);
        const double bound = exp_decay_bound(n, kA, kQ, gamma);
        const double amp_sq = sched.amplification * sched.amplification;
        const double adjusted =
            est.mean_sq + amp_sq * est.truncation_bias -
            4.0 * est.std_error;
        worst_ratio = std::max(worst_ratio, adjusted / (bound * bound));
        ok = ok && adjusted <= bound * bound;
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 900.0;
    return {ok && on_time,
            fmt("hypothesis holds to k=200, worst (mean-4SE)/bound^2 %.3g, "
                "%.1fs%s",
                worst_ratio, elapsed,
                on_time ? "" : " (budget 900s exceeded)")};
}

// ------------------------------------------------------- criterion 8

Outcome criterion8(const Args& args) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> eps{0.1,   0.03,   0.01,  0.003,
                                  0.001, 0.0003, 0.0001};
    const std::vector<int> dims{1, 2, 3};
    bool ok = true;
    std::string detail;
    for (double alpha : {1.5, 2.0, 3.0}) {
        const ComplexityProfile profile =
            build_profile(DecayFamily::algebraic(alpha), eps, dims,
                          Criterion::absolute, args.jobs);
        const NotionVerdict v =
            classify_tractability(profile, Scaling::alg, Notion::spt);
        const double target = 2.0 / (alpha - 1.0);
        const bool good = v.verdict == Verdict::consistent &&
                          std::abs(v.p_fit - target) <= 0.1 * target;
        ok = ok && good;
        if (!detail.empty()) detail += ", ";
        detail += fmt("alpha=%g: p=%.4g (target %g)%s", alpha, v.p_fit, target,
                      good ? "" : " MISS");
    }
    const double elapsed = seconds_since(start);
    const bool on_time = elapsed < 120.0;
    if (!on_time) detail += " (budget 120s exceeded)";
    return {ok && on_time, detail + fmt(", %.1fs", elapsed)};
}

// ------------------------------------------------------- criterion 9

int run_tool(const Args& args, const std::string& subcommand,
             const std::string& config, const std::string& out_dir) {
    const std::string cmd = "\"" + args.tool + "\" " + subcommand +
                            " --config \"" + args.demo + "/" + config +
                            "\" --out \"" + out_dir + "\" --jobs " +
                            std::to_string(args.jobs) + " > /dev/null";
    return std::system(cmd.c_str());
}

bool numerically_identical(const std::string& a, const std::string& b,
                           std::string& why) {
    const auto ra = read_csv(a);
    const auto rb = read_csv(b);
    if (ra.size() != rb.size()) {
        why = fmt("row count %zu vs %zu", ra.size(), rb.size());
        return false;
    }
    if (ra.at(0) != rb.at(0)) {
        why = "headers differ";
        return false;
    }
    for (std::size_t i = 1; i < ra.size(); ++i) {
        if (ra[i].size() != rb[i].size()) {
            why = fmt("row %zu: field count differs", i);
            return false;
        }
        for (std::size_t j = 0; j < ra[i].size(); ++j) {
            const std::string& fa = ra[i][j];
            const std::string& fb = rb[i][j];
            long long ia = 0, ib = 0;
            if (parse_int(fa, ia) && parse_int(fb, ib)) {
                if (ia != ib) {
                    why = fmt("row %zu field %zu: %lld vs %lld", i, j, ia, ib);
                    return false;
                }
                continue;
            }
            double da = 0.0, db = 0.0;
            if (parse_double(fa, da) && parse_double(fb, db)) {
                const double scale =
                    std::max({std::abs(da), std::abs(db), 1e-300});
                if (std::abs(da - db) > 1e-9 * scale) {
                    why = fmt("row %zu field %zu: %s vs %s", i, j, fa.c_str(),
                              fb.c_str());
                    return false;
                }
                continue;
            }
            if (fa != fb) {
                why = fmt("row %zu field %zu: %s vs %s", i, j, fa.c_str(),
                          fb.c_str());
                return false;
            }
        }
    }
    return true;
}

Outcome criterion9(const Args& args) {
    if (args.tool.empty()) return {false, "--tool not given"};
    const struct {
        const char* subcommand;
        const char* config;
        const char* csv;
    } runs[] = {
        {"spectrum", "spectrum.json", "spectrum.csv"},
        {"lsq-error", "lsq_error.json", "lsq_error.csv"},
    };
    for (const auto& r : runs) {
        const std::string dir_a = args.work + "/det_a_" + r.subcommand;
        const std::string dir_b = args.work + "/det_b_" + r.subcommand;
        if (run_tool(args, r.subcommand, r.config, dir_a) != 0 ||
            run_tool(args, r.subcommand, r.config, dir_b) != 0)
            return {false, fmt("%s run failed", r.subcommand)};
        std::string why;
        if (!numerically_identical(dir_a + "/" + r.csv, dir_b + "/" + r.csv,
                                   why))
            return {false, fmt("%s: %s", r.subcommand, why.c_str())};
    }
    return {true, "spectrum and lsq-error reruns numerically identical"};
}

}  // namespace

int main(int argc, char** argv) {
    Args args;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        const auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", a.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--tool")
            args.tool = next();
        else if (a == "--demo")
            args.demo = next();
        else if (a == "--work")
            args.work = next();
        else if (a == "--jobs")
            args.jobs = static_cast<unsigned>(std::stoul(next()));
        else if (a == "--only")
            args.only = std::stoi(next());
        else {
            std::fprintf(stderr, "unknown argument %s\n", a.c_str());
            return 2;
        }
    }
    if (args.demo.empty() || args.work.empty()) {
        std::fprintf(stderr,
                     "usage: acceptance --tool <avgcase> --demo <dir> "
                     "--work <dir> [--jobs N] [--only K]\n");
        return 2;
    }
    fs::create_directories(args.work);

    struct Entry {
        int id;
        const char* name;
        Outcome (*run)(const Args&);
    };
    const Entry entries[] = {
        {1, "in-span functions are reproduced exactly", criterion1},
        {2, "admissible designs are uniformly well conditioned", criterion2},
        {3, "design failure rates stay below the tail bound", criterion3},
        {4, "recovery error stays below the conditional bound", criterion4},
        {5, "complexity search matches a brute-force scan", criterion5},
        {6, "standard information obeys the transfer bounds", criterion6},
        {7, "exponential-decay error bound holds empirically", criterion7},
        {8, "fitted tractability exponent recovers 2/(alpha-1)", criterion8},
        {9, "identical runs produce identical tables", criterion9},
    };

    int failures = 0;
    int ran = 0;
    for (const Entry& e : entries) {
        if (args.only != 0 && args.only != e.id) continue;
        ++ran;
        Outcome outcome;
        try {
            outcome = e.run(args);
        } catch (const std::exception& ex) {
            outcome = {false, std::string("exception: ") + ex.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("criterion %d (%s): %s  %s\n", e.id, e.name,
                    outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion selected\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
