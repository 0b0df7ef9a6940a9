#include "runs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "avgcase/complexity.hpp"
#include "avgcase/errors.hpp"
#include "avgcase/lsq.hpp"
#include "avgcase/model.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/sampling.hpp"
#include "csv.hpp"
#include "manifest.hpp"

namespace avgcase::tool {

namespace {

// Bound checks subtract this many standard errors before comparing, so
// a pass certifies the inequality up to 4-sigma Monte Carlo noise.
constexpr double kBoundSlackZ = 4.0;
// Concentration cells whose theoretical bound is this large carry no
// information; they are reported but not judged.
constexpr double kInformativeBound = 0.9;

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigInvalidError(field + ": " + what);
}

template <typename Fn>
auto with_cell(const std::string& where, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " [at " + where + "]");
    }
}

ScheduleResult schedule_for(const ToolConfig& cfg, std::size_t n) {
    if (cfg.grids.delta) return schedule_m(n, *cfg.grids.delta);
    return schedule_m_fixed(n);
}

double amp_sq(std::size_t n, std::size_t m, double delta) {
    return (1.0 + 4.0 * static_cast<double>(m) / static_cast<double>(n)) /
           (1.0 - delta);
}

MonteCarloPolicy mc_policy(const ToolConfig& cfg) {
    MonteCarloPolicy policy;
    policy.trials_x = cfg.mc.trials_x;
    policy.trials_f = cfg.mc.trials_f;
    policy.kl_rel_tail = cfg.mc.kl_rel_tail;
    policy.kl_max_terms = cfg.mc.kl_max_terms;
    policy.max_redraws = cfg.mc.max_redraws;
    return policy;
}

std::string out_path(const RunContext& ctx, const std::string& name) {
    return ctx.out_dir + "/" + name;
}

}  // namespace

std::vector<std::string> run_spectrum(const ToolConfig& cfg,
                                      const RunContext& ctx) {
    const int prec = ctx.precision;
    CsvWriter csv(out_path(ctx, "spectrum.csv"),
                  {"model", "d", "k", "lambda", "sqrt_lambda", "tail_sum",
                   "avg_error", "trace"});
    for (int d : cfg.model.dims) {
        const ProblemModel model = make_model(cfg.model, d);
        const double trace = model.trace();
        const std::vector<double> lambda =
            model.eigenvalue_prefix(cfg.grids.k_max);
        for (std::size_t k = 1; k <= lambda.size(); ++k) {
            const double tail = model.tail_sum(k);
            csv.row({model.label(), fmt_uint(static_cast<std::uint64_t>(d)),
                     fmt_uint(k), fmt_double(lambda[k - 1], prec),
                     fmt_double(std::sqrt(lambda[k - 1]), prec),
                     fmt_double(tail, prec),
                     fmt_double(std::sqrt(tail), prec),
                     fmt_double(trace, prec)});
        }
    }
    std::printf("spectrum: %zu rows\n", csv.rows());
    return {"spectrum.csv"};
}

std::vector<std::string> run_concentration(const ToolConfig& cfg,
                                           const RunContext& ctx) {
    require(!cfg.grids.n.empty(), "grids.n", "required for concentration");
    require(!cfg.grids.m.empty(), "grids.m", "required for concentration");
    const int prec = ctx.precision;
    CsvWriter csv(out_path(ctx, "concentration.csv"),
                  {"model", "d", "n", "m", "trials", "failures", "rate",
                   "ci_low", "ci_high", "bound_raw", "bound", "pass"});
    std::size_t cell = 0;
    std::size_t judged = 0;
    std::size_t passed = 0;
    for (int d : cfg.model.dims) {
        const ProblemModel model = make_model(cfg.model, d);
        for (std::size_t n : cfg.grids.n) {
            for (std::size_t m : cfg.grids.m) {
                const std::uint64_t cell_seed = derive_seed(ctx.seed, cell++);
                char where[96];
                std::snprintf(where, sizeof where, "d=%d n=%zu m=%zu", d, n, m);
                const FailureRate fr = with_cell(where, [&] {
                    return empirical_failure_rate(model, n, m,
                                                  cfg.mc.trials_x, cell_seed,
                                                  ctx.jobs);
                });
                const double raw = concentration_bound(n, m);
                const double bound = concentration_bound_clipped(n, m);
                const bool informative = bound < kInformativeBound;
                const bool pass = !informative || fr.ci_low <= bound;
                judged += informative;
                passed += informative && pass;
                csv.row({model.label(), fmt_uint(static_cast<std::uint64_t>(d)),
                         fmt_uint(n), fmt_uint(m), fmt_uint(fr.trials),
                         fmt_uint(fr.failures), fmt_double(fr.rate, prec),
                         fmt_double(fr.ci_low, prec),
                         fmt_double(fr.ci_high, prec), fmt_double(raw, prec),
                         fmt_double(bound, prec), fmt_bool(pass)});
            }
        }
    }
    std::printf("concentration: %zu cells, %zu judged, %zu passed\n",
                csv.rows(), judged, passed);
    return {"concentration.csv"};
}

std::vector<std::string> run_lsq_error(const ToolConfig& cfg,
                                       const RunContext& ctx) {
    require(!cfg.grids.n.empty(), "grids.n", "required for lsq-error");
    const int prec = ctx.precision;
    CsvWriter csv(out_path(ctx, "lsq_error.csv"),
                  {"model", "d", "n", "m", "delta", "feasible", "trials_x",
                   "successes", "trials_f", "rejections", "mean_sq",
                   "std_error", "bound_sq", "kl_terms", "truncation_bias",
                   "pass"});
    const MonteCarloPolicy policy = mc_policy(cfg);
    std::size_t cell = 0;
    std::size_t passed = 0;
    std::size_t feasible_cells = 0;
    for (int d : cfg.model.dims) {
        const ProblemModel model = make_model(cfg.model, d);
        for (std::size_t n : cfg.grids.n) {
            const ScheduleResult sched = schedule_for(cfg, n);
            const std::size_t m =
                cfg.grids.m_override ? *cfg.grids.m_override : sched.m;
            const double delta = cfg.grids.delta.value_or(sched.delta);
            const std::uint64_t cell_seed = derive_seed(ctx.seed, cell++);
            if (m == 0) {
                csv.row({model.label(), fmt_uint(static_cast<std::uint64_t>(d)),
                         fmt_uint(n), "0", fmt_double(delta, prec), "0", "",
                         "", "", "", "", "", "", "", "", ""});
                continue;
            }
            ++feasible_cells;
            char where[96];
            std::snprintf(where, sizeof where, "d=%d n=%zu m=%zu", d, n, m);
            const StdErrorEstimate est = with_cell(where, [&] {
                return avg_error_std_empirical(model, n, m, delta, policy,
                                               cell_seed, ctx.jobs);
            });
            const double adjusted =
                est.mean_sq + amp_sq(n, m, delta) * est.truncation_bias;
            const bool pass =
                adjusted - kBoundSlackZ * est.std_error <= est.bound_sq;
            passed += pass;
            csv.row({model.label(), fmt_uint(static_cast<std::uint64_t>(d)),
                     fmt_uint(n), fmt_uint(m), fmt_double(delta, prec), "1",
                     fmt_uint(est.trials_x), fmt_uint(est.successes),
                     fmt_uint(est.trials_f), fmt_uint(est.rejections),
                     fmt_double(est.mean_sq, prec),
                     fmt_double(est.std_error, prec),
                     fmt_double(est.bound_sq, prec), fmt_uint(est.kl_terms),
                     fmt_double(est.truncation_bias, prec), fmt_bool(pass)});
        }
    }
    std::printf("lsq-error: %zu cells, %zu feasible, %zu passed\n", csv.rows(),
                feasible_cells, passed);
    return {"lsq_error.csv"};
}

std::vector<std::string> run_complexity(const ToolConfig& cfg,
                                        const RunContext& ctx) {
    require(!cfg.grids.eps.empty(), "grids.eps", "required for complexity");
    const int prec = ctx.precision;
    const ComplexityProfile profile =
        build_profile(make_model_family(cfg.model), cfg.grids.eps,
                      cfg.model.dims, cfg.criterion, ctx.jobs);
    CsvWriter csv(out_path(ctx, "complexity.csv"),
                  {"model", "criterion", "eps", "d", "gamma", "n_star"});
    for (std::size_t ei = 0; ei < profile.eps.size(); ++ei)
        for (std::size_t di = 0; di < profile.dims.size(); ++di)
            csv.row({profile.model_label, criterion_name(profile.criterion),
                     fmt_double(profile.eps[ei], prec),
                     fmt_uint(static_cast<std::uint64_t>(profile.dims[di])),
                     fmt_double(profile.gamma[di], prec),
                     fmt_uint(profile.at(ei, di))});
    std::printf("complexity: %zu cells\n", csv.rows());
    return {"complexity.csv"};
}

std::vector<std::string> run_transfer(const ToolConfig& cfg,
                                      const RunContext& ctx) {
    require(!cfg.grids.eps.empty(), "grids.eps", "required for transfer");
    require(!cfg.grids.n.empty(), "grids.n", "required for transfer");
    require(!cfg.grids.omega.empty(), "grids.omega", "required for transfer");
    const int prec = ctx.precision;
    const ModelFamily family = make_model_family(cfg.model);
    const ComplexityProfile profile = build_profile(
        family, cfg.grids.eps, cfg.model.dims, cfg.criterion, ctx.jobs);

    std::vector<std::size_t> n_grid = cfg.grids.n;
    std::sort(n_grid.begin(), n_grid.end());
    const MonteCarloPolicy policy = mc_policy(cfg);

    std::vector<StdComplexityCell> cells;
    std::size_t flat = 0;
    for (std::size_t ei = 0; ei < profile.eps.size(); ++ei) {
        for (std::size_t di = 0; di < profile.dims.size(); ++di) {
            const double eps = profile.eps[ei];
            const int d = profile.dims[di];
            const ProblemModel model = family(d);
            const double cri = cfg.criterion == Criterion::normalized
                                   ? std::sqrt(model.trace())
                                   : 1.0;
            const std::uint64_t cell_seed = derive_seed(ctx.seed, flat++);
            StdComplexityCell cell;
            cell.eps = eps;
            cell.d = d;
            for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
                const std::size_t n = n_grid[ni];
                const ScheduleResult sched = schedule_for(cfg, n);
                if (!sched.feasible) continue;
                const double delta = cfg.grids.delta.value_or(sched.delta);
                char where[128];
                std::snprintf(where, sizeof where, "eps=%g d=%d n=%zu m=%zu",
                              eps, d, n, sched.m);
                const StdErrorEstimate est = with_cell(where, [&] {
                    return avg_error_std_empirical(model, n, sched.m, delta,
                                                   policy,
                                                   derive_seed(cell_seed, ni),
                                                   ctx.jobs);
                });
                const double upper_sq =
                    est.mean_sq +
                    amp_sq(n, sched.m, delta) * est.truncation_bias +
                    cfg.mc.ci_z * est.std_error;
                cell.err_ci_upper = std::sqrt(std::max(0.0, upper_sq));
                if (cell.err_ci_upper <= eps * cri) {
                    cell.n_std = n;
                    cell.found = true;
                    break;
                }
            }
            cells.push_back(cell);
        }
    }

    const std::vector<TransferRow> rows = verify_transfer(
        family, profile, cells, cfg.grids.omega.front(),
        cfg.grids.transfer_delta);

    CsvWriter csv(out_path(ctx, "transfer.csv"),
                  {"model", "criterion", "eps", "d", "n_all", "n_all_quarter",
                   "n_all_shifted", "bound_log", "bound_power", "bound_delta",
                   "n_std_empirical", "err_ci_upper", "found", "pass",
                   "witness"});
    std::size_t passed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TransferRow& r = rows[i];
        const StdComplexityCell& c = cells[i];
        passed += r.pass;
        csv.row({profile.model_label, criterion_name(profile.criterion),
                 fmt_double(r.eps, prec),
                 fmt_uint(static_cast<std::uint64_t>(r.d)), fmt_uint(r.n_all),
                 fmt_uint(r.n_all_quarter), fmt_uint(r.n_all_shifted),
                 fmt_double(r.bound_log, prec),
                 fmt_double(r.bound_power, prec),
                 fmt_double(r.bound_delta, prec), fmt_uint(r.n_std_empirical),
                 fmt_double(c.err_ci_upper, prec), fmt_bool(c.found),
                 fmt_bool(r.pass), r.witness});
    }
    std::printf("transfer: %zu/%zu cells pass\n", passed, rows.size());
    return {"transfer.csv"};
}

std::vector<std::string> run_tractability(const ToolConfig& cfg,
                                          const RunContext& ctx) {
    require(!cfg.grids.eps.empty(), "grids.eps", "required for tractability");
    const int prec = ctx.precision;
    const ComplexityProfile profile =
        build_profile(make_model_family(cfg.model), cfg.grids.eps,
                      cfg.model.dims, cfg.criterion, ctx.jobs);
    std::vector<std::pair<double, double>> pairs = cfg.grids.st_pairs;
    if (pairs.empty()) pairs.emplace_back(1.0, 1.0);

    CsvWriter csv(out_path(ctx, "tractability.csv"),
                  {"model", "criterion", "s", "t", "scaling", "notion",
                   "verdict", "c_fit", "p_fit", "q_fit", "t_fit", "residual",
                   "inner_max", "outer_max", "witness"});
    for (const auto& [s, t] : pairs) {
        const TractabilityReport report = classify_all(profile, s, t);
        for (const NotionVerdict& v : report.verdicts)
            csv.row({report.model_label, criterion_name(report.criterion),
                     fmt_double(v.s, prec), fmt_double(v.t, prec),
                     scaling_name(v.scaling), notion_name(v.notion),
                     verdict_name(v.verdict), fmt_double(v.c_fit, prec),
                     fmt_double(v.p_fit, prec), fmt_double(v.q_fit, prec),
                     fmt_double(v.t_fit, prec), fmt_double(v.residual, prec),
                     fmt_double(v.inner_max, prec),
                     fmt_double(v.outer_max, prec), v.witness});
    }
    std::printf("tractability: %zu verdicts\n", csv.rows());
    return {"tractability.csv"};
}

std::vector<std::string> run_exp_decay(const ToolConfig& cfg,
                                       const RunContext& ctx) {
    require(cfg.hypothesis.has_value(), "hypothesis",
            "required for exp-decay");
    require(!cfg.grids.n.empty(), "grids.n", "required for exp-decay");
    const int prec = ctx.precision;
    const HypothesisSpec& hyp = *cfg.hypothesis;
    const MonteCarloPolicy policy = mc_policy(cfg);
    CsvWriter csv(out_path(ctx, "exp_decay.csv"),
                  {"model", "d", "n", "m", "feasible", "A", "q", "q2",
                   "hypothesis_holds", "hypothesis_witness", "mean_sq",
                   "std_error", "rms_error", "bound", "pass"});
    const double q2 = exp_decay_q2(hyp.q);
    std::size_t cell = 0;
    std::size_t passed = 0;
    for (int d : cfg.model.dims) {
        const ProblemModel model = make_model(cfg.model, d);
        const HypothesisCheck hc =
            check_exp_hypothesis(model, hyp.A, hyp.q, hyp.k_max);
        const double gamma = model.trace();
        for (std::size_t n : cfg.grids.n) {
            const ScheduleResult sched = schedule_for(cfg, n);
            const std::uint64_t cell_seed = derive_seed(ctx.seed, cell++);
            const std::string head_model = model.label();
            if (!sched.feasible) {
                csv.row({head_model, fmt_uint(static_cast<std::uint64_t>(d)),
                         fmt_uint(n), "0", "0", fmt_double(hyp.A, prec),
                         fmt_double(hyp.q, prec), fmt_double(q2, prec),
                         fmt_bool(hc.holds), fmt_uint(hc.witness), "", "", "",
                         "", ""});
                continue;
            }
            const double delta = cfg.grids.delta.value_or(sched.delta);
            char where[96];
            std::snprintf(where, sizeof where, "d=%d n=%zu m=%zu", d, n,
                          sched.m);
            const StdErrorEstimate est = with_cell(where, [&] {
                return avg_error_std_empirical(model, n, sched.m, delta,
                                               policy, cell_seed, ctx.jobs);
            });
            const double bound = exp_decay_bound(n, hyp.A, hyp.q, gamma);
            const double adjusted =
                est.mean_sq +
                amp_sq(n, sched.m, delta) * est.truncation_bias;
            const bool pass =
                hc.holds &&
                adjusted - kBoundSlackZ * est.std_error <= bound * bound;
            passed += pass;
            csv.row({head_model, fmt_uint(static_cast<std::uint64_t>(d)),
                     fmt_uint(n), fmt_uint(sched.m), "1",
                     fmt_double(hyp.A, prec), fmt_double(hyp.q, prec),
                     fmt_double(q2, prec), fmt_bool(hc.holds),
                     fmt_uint(hc.witness), fmt_double(est.mean_sq, prec),
                     fmt_double(est.std_error, prec),
                     fmt_double(std::sqrt(est.mean_sq), prec),
                     fmt_double(bound, prec), fmt_bool(pass)});
        }
    }
    std::printf("exp-decay: %zu cells, %zu passed\n", csv.rows(), passed);
    return {"exp_decay.csv"};
}

std::vector<std::string> run_subcommand(const std::string& name,
                                        const ToolConfig& cfg,
                                        const RunContext& ctx,
                                        const std::string& config_path) {
    using Runner = std::vector<std::string> (*)(const ToolConfig&,
                                                const RunContext&);
    static const std::map<std::string, Runner> runners{
        {"spectrum", run_spectrum},
        {"concentration", run_concentration},
        {"lsq-error", run_lsq_error},
        {"complexity", run_complexity},
        {"transfer", run_transfer},
        {"tractability", run_tractability},
        {"exp-decay", run_exp_decay},
    };
    const auto it = runners.find(name);
    if (it == runners.end())
        throw ConfigInvalidError("unknown subcommand: " + name);

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> files = it->second(cfg, ctx);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const std::string manifest =
        write_manifest(ctx.out_dir, name, config_path, cfg.raw, ctx.seed,
                       ctx.jobs, ctx.precision, wall, files);
    for (const std::string& f : files)
        std::printf("wrote %s\n", out_path(ctx, f).c_str());
    std::printf("wrote %s (%.2fs)\n", manifest.c_str(), wall);
    return files;
}

}  // namespace avgcase::tool
