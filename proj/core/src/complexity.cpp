#include "avgcase/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

#include "avgcase/errors.hpp"
#include "avgcase/lsq.hpp"
#include "avgcase/parallel.hpp"

namespace avgcase {

namespace {

const double kLog192Sqrt2 = std::log(192.0 * std::sqrt(2.0));
const double k96Sqrt2 = 96.0 * std::sqrt(2.0);
const double k48Sqrt2 = 48.0 * std::sqrt(2.0);

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

const char* criterion_name(Criterion crit) {
    return crit == Criterion::absolute ? "ABS" : "NOR";
}

const char* scaling_name(Scaling s) { return s == Scaling::alg ? "ALG" : "EXP"; }

const char* notion_name(Notion n) {
    switch (n) {
        case Notion::spt: return "SPT";
        case Notion::pt: return "PT";
        case Notion::qpt: return "QPT";
        case Notion::wt: return "WT";
        case Notion::st_wt: return "(s,t)-WT";
        case Notion::uwt: return "UWT";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::size_t info_complexity(const ProblemModel& model, double eps,
                            Criterion crit) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("info_complexity: eps must lie in (0, 1)");
    const double cri =
        crit == Criterion::absolute ? 1.0 : std::sqrt(model.trace());
    const double target = (eps * cri) * (eps * cri);
    if (model.tail_sum(0) <= target) return 0;

    std::size_t lo = 0;  // tail_sum(lo) > target
    std::size_t hi = 1;
    while (model.tail_sum(hi) > target) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (model.tail_sum(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

namespace {

void check_grid(std::span<const double> eps, std::span<const int> dims) {
    if (eps.empty()) throw std::invalid_argument("profile grid: empty eps list");
    if (dims.empty()) throw std::invalid_argument("profile grid: empty dims list");
    std::set<double> es;
    for (double e : eps) {
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("profile grid: eps values must lie in (0, 1)");
        if (!es.insert(e).second)
            throw std::invalid_argument("profile grid: duplicate eps value");
    }
    std::set<int> ds;
    for (int d : dims) {
        if (d < 1)
            throw std::invalid_argument("profile grid: dimensions must be >= 1");
        if (!ds.insert(d).second)
            throw std::invalid_argument("profile grid: duplicate dimension");
    }
}

}  // namespace

ComplexityProfile build_profile(const ModelFamily& family,
                                std::span<const double> eps,
                                std::span<const int> dims, Criterion crit,
                                unsigned jobs) {
    check_grid(eps, dims);
    ComplexityProfile profile;
    profile.criterion = crit;
    profile.eps.assign(eps.begin(), eps.end());
    profile.dims.assign(dims.begin(), dims.end());

    std::vector<ProblemModel> models;
    models.reserve(dims.size());
    for (int d : dims) models.push_back(family(d));
    profile.model_label = models.front().family().label();
    profile.gamma.resize(dims.size());
    for (std::size_t di = 0; di < dims.size(); ++di)
        profile.gamma[di] = models[di].trace();

    profile.n_star.assign(eps.size(),
                          std::vector<std::size_t>(dims.size(), 0));
    parallel_for(eps.size() * dims.size(), jobs, [&](std::size_t cell) {
        const std::size_t ei = cell / dims.size();
        const std::size_t di = cell % dims.size();
        profile.n_star[ei][di] = info_complexity(models[di], eps[ei], crit);
    });
    return profile;
}

ComplexityProfile build_profile(const DecayFamily& family,
                                std::span<const double> eps,
                                std::span<const int> dims, Criterion crit,
                                unsigned jobs) {
    return build_profile(
        [&family](int d) { return ProblemModel(family, d); }, eps, dims, crit,
        jobs);
}

double transfer_log_bound(std::size_t n_all) {
    const double x = static_cast<double>(n_all) + 1.0;
    return k96Sqrt2 * x * (std::log(x) + kLog192Sqrt2);
}

double power_bound_constant(double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("power_bound_constant: omega must be > 0");
    // Stationary point of (ln x + c)/x^omega at ln x = 1/omega - c.
    const double log_xstar = 1.0 / omega - kLog192Sqrt2;
    if (log_xstar <= 0.0) return k96Sqrt2 * kLog192Sqrt2;
    return k96Sqrt2 / omega * std::exp(omega * kLog192Sqrt2 - 1.0);
}

double transfer_power_bound(std::size_t n_all, double omega) {
    const double c = power_bound_constant(omega);
    return c * std::pow(static_cast<double>(n_all) + 1.0, 1.0 + omega);
}

double transfer_delta_bound(std::size_t n_all, double delta) {
    if (!(delta > 0.0 && delta <= kDeltaBoundMax))
        throw DeltaOutOfRangeError(
            "transfer_delta_bound: delta must lie in (0, e^-e], got " +
            fmt_g(delta));
    const double x = static_cast<double>(n_all) + 1.0;
    const double l = std::log(1.0 / delta);
    return 48.0 * (4.0 * (std::log(48.0) + std::log(l) + std::log(x)) + l) * x;
}

double exp_decay_q2(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("exp_decay_q2: q must lie in (0, 1)");
    return std::exp(std::log(q) / k48Sqrt2);
}

double exp_decay_bound(std::size_t n, double A, double q, double gamma_d) {
    if (n < 1) throw std::invalid_argument("exp_decay_bound: n must be >= 1");
    if (!(A >= 1.0)) throw std::invalid_argument("exp_decay_bound: A must be >= 1");
    if (!(gamma_d > 0.0))
        throw std::invalid_argument("exp_decay_bound: gamma_d must be > 0");
    const double q2 = exp_decay_q2(q);
    const double expo = static_cast<double>(n) / std::log(4.0 * static_cast<double>(n));
    return 4.0 * A / (1.0 - q) * std::pow(q2, expo) * std::sqrt(gamma_d);
}

HypothesisCheck check_exp_hypothesis(const ProblemModel& model, double A,
                                     double q, std::size_t k_max) {
    if (k_max < 1)
        throw std::invalid_argument("check_exp_hypothesis: k_max must be >= 1");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("check_exp_hypothesis: q must lie in (0, 1)");
    const double sqrt_gamma = std::sqrt(model.trace());
    const std::vector<double> lambda = model.eigenvalue_prefix(k_max);
    HypothesisCheck res;
    res.holds = true;
    double qk = 1.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        qk *= q;
        const double lhs = std::sqrt(lambda[k - 1]);
        const double rhs = A * qk * sqrt_gamma;
        if (lhs > rhs) {
            res.holds = false;
            res.witness = k;
            res.lhs = lhs;
            res.rhs = rhs;
            return res;
        }
    }
    return res;
}

namespace {

struct Cell {
    double eps;
    int d;
    std::size_t n;
};

std::vector<Cell> flatten(const ComplexityProfile& p) {
    std::vector<Cell> cells;
    cells.reserve(p.eps.size() * p.dims.size());
    for (std::size_t ei = 0; ei < p.eps.size(); ++ei)
        for (std::size_t di = 0; di < p.dims.size(); ++di)
            cells.push_back({p.eps[ei], p.dims[di], p.n_star[ei][di]});
    return cells;
}

// Accuracy scale the notion measures against: 1/eps for ALG,
// 1 + ln(1/eps) for EXP.
double accuracy_base(Scaling scaling, double eps) {
    const double inv = 1.0 / eps;
    return scaling == Scaling::alg ? inv : 1.0 + std::log(inv);
}

// log of the growth form at unit constant; the admissible constant
// for given exponents is max over cells of n / exp(growth_log).
double growth_log(Notion notion, Scaling scaling, const Cell& c, double p,
                  double q, double t) {
    const double lb = std::log(accuracy_base(scaling, c.eps));
    switch (notion) {
        case Notion::spt: return p * lb;
        case Notion::pt: return p * lb + q * std::log(static_cast<double>(c.d));
        case Notion::qpt:
            return t * (1.0 + std::log(static_cast<double>(c.d))) * (1.0 + lb);
        default: break;
    }
    throw std::logic_error("growth_log: not a fit notion");
}

double min_constant(const std::vector<Cell>& cells, Notion notion,
                    Scaling scaling, double p, double q, double t) {
    double best = 0.0;
    for (const Cell& c : cells) {
        if (c.n == 0) continue;
        const double lr = std::log(static_cast<double>(c.n)) -
                          growth_log(notion, scaling, c, p, q, t);
        best = std::max(best, std::exp(lr));
    }
    return best;
}

const Cell* worst_cell(const std::vector<Cell>& cells, Notion notion,
                       Scaling scaling, double p, double q, double t) {
    const Cell* worst = nullptr;
    double best = -1.0;
    for (const Cell& c : cells) {
        if (c.n == 0) continue;
        const double lr = std::log(static_cast<double>(c.n)) -
                          growth_log(notion, scaling, c, p, q, t);
        if (lr > best) {
            best = lr;
            worst = &c;
        }
    }
    return worst;
}

NotionVerdict classify_fit(const std::vector<Cell>& cells, Scaling scaling,
                           Notion notion, const TractabilityCaps& caps) {
    NotionVerdict v;
    v.scaling = scaling;
    v.notion = notion;

    std::vector<const Cell*> active;
    for (const Cell& c : cells)
        if (c.n >= 1) active.push_back(&c);

    // Regress ln n on the notion's regressors; zero cells carry no
    // constraint (any nonnegative bound covers them).
    const int nreg = notion == Notion::pt ? 2 : 1;
    double p_hat = 0.0, q_hat = 0.0, t_hat = 0.0;
    if (active.size() >= static_cast<std::size_t>(nreg) + 1) {
        Eigen::MatrixXd X(static_cast<Eigen::Index>(active.size()), nreg + 1);
        Eigen::VectorXd y(static_cast<Eigen::Index>(active.size()));
        for (std::size_t i = 0; i < active.size(); ++i) {
            const Cell& c = *active[i];
            const auto r = static_cast<Eigen::Index>(i);
            const double lb = std::log(accuracy_base(scaling, c.eps));
            X(r, 0) = 1.0;
            switch (notion) {
                case Notion::spt: X(r, 1) = lb; break;
                case Notion::pt:
                    X(r, 1) = lb;
                    X(r, 2) = std::log(static_cast<double>(c.d));
                    break;
                case Notion::qpt:
                    X(r, 1) = (1.0 + std::log(static_cast<double>(c.d))) * (1.0 + lb);
                    break;
                default: break;
            }
            y[r] = std::log(static_cast<double>(c.n));
        }
        const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
        v.residual = std::sqrt((X * beta - y).squaredNorm() /
                               static_cast<double>(active.size()));
        const auto clamp = [&caps](double b) {
            return std::clamp(b, 0.0, caps.exp_cap);
        };
        switch (notion) {
            case Notion::spt: p_hat = clamp(beta[1]); break;
            case Notion::pt:
                p_hat = clamp(beta[1]);
                q_hat = clamp(beta[2]);
                break;
            case Notion::qpt: t_hat = clamp(beta[1]); break;
            default: break;
        }
    }
    v.p_fit = p_hat;
    v.q_fit = q_hat;
    v.t_fit = t_hat;
    v.c_fit = min_constant(cells, notion, scaling, p_hat, q_hat, t_hat);

    if (v.c_fit <= caps.c_cap) {
        v.verdict = Verdict::consistent;
        v.witness = "C=" + fmt_g(v.c_fit) + " within caps";
        return v;
    }
    // The constant shrinks as exponents grow, so the capped exponents
    // give the smallest admissible constant.
    const double c_at_cap = min_constant(cells, notion, scaling, caps.exp_cap,
                                         caps.exp_cap, caps.exp_cap);
    const Cell* w = worst_cell(cells, notion, scaling, caps.exp_cap,
                               caps.exp_cap, caps.exp_cap);
    if (c_at_cap > caps.c_cap) {
        v.verdict = Verdict::violated;
        v.witness = "needs C=" + fmt_g(c_at_cap) + " > cap even at exponent cap";
        if (w)
            v.witness += " (eps=" + fmt_g(w->eps) + ", d=" + std::to_string(w->d) +
                         ", n=" + std::to_string(w->n) + ")";
    } else {
        v.verdict = Verdict::inconclusive;
        v.witness = "fitted exponents need C=" + fmt_g(v.c_fit) +
                    " > cap; capped exponents would fit";
    }
    return v;
}

NotionVerdict classify_limit(const std::vector<Cell>& cells, Scaling scaling,
                             Notion notion, double s, double t) {
    NotionVerdict v;
    v.scaling = scaling;
    v.notion = notion;
    v.s = s;
    v.t = t;

    struct Rated {
        double radius;
        double ratio;
    };
    std::vector<Rated> rated;
    rated.reserve(cells.size());
    bool any_positive = false;
    for (const Cell& c : cells) {
        const double num = std::log(static_cast<double>(std::max<std::size_t>(c.n, 1)));
        const double denom = std::pow(accuracy_base(scaling, c.eps), s) +
                             std::pow(static_cast<double>(c.d), t);
        const double ratio = num / denom;
        if (ratio > 0.0) any_positive = true;
        rated.push_back({1.0 / c.eps + static_cast<double>(c.d), ratio});
    }
    if (!any_positive) {
        v.verdict = Verdict::consistent;
        v.witness = "all ratios zero";
        return v;
    }

    std::vector<double> radii;
    radii.reserve(rated.size());
    for (const Rated& r : rated) radii.push_back(r.radius);
    std::sort(radii.begin(), radii.end());
    const double median = radii[(radii.size() - 1) / 2];

    double inner = 0.0, outer = 0.0;
    std::size_t n_outer = 0;
    for (const Rated& r : rated) {
        if (r.radius <= median) {
            inner = std::max(inner, r.ratio);
        } else {
            outer = std::max(outer, r.ratio);
            ++n_outer;
        }
    }
    v.inner_max = inner;
    v.outer_max = outer;
    if (n_outer == 0) {
        v.verdict = Verdict::inconclusive;
        v.witness = "grid too flat to form shells";
    } else if (outer < inner) {
        v.verdict = Verdict::consistent;
        v.witness = "max ratio fell from " + fmt_g(inner) + " to " + fmt_g(outer);
    } else {
        v.verdict = Verdict::inconclusive;
        v.witness = "max ratio did not decrease (" + fmt_g(inner) + " -> " +
                    fmt_g(outer) + ")";
    }
    return v;
}

void check_classification_grid(const ComplexityProfile& profile) {
    if (profile.eps.size() < 4)
        throw GridTooSmallError("classification needs at least 4 accuracy values, got " +
                                std::to_string(profile.eps.size()));
    if (profile.dims.size() < 3)
        throw GridTooSmallError("classification needs at least 3 dimensions, got " +
                                std::to_string(profile.dims.size()));
}

}  // namespace

NotionVerdict classify_tractability(const ComplexityProfile& profile,
                                    Scaling scaling, Notion notion, double s,
                                    double t, const TractabilityCaps& caps) {
    check_classification_grid(profile);
    if (notion == Notion::st_wt && !(s > 0.0 && t > 0.0))
        throw std::invalid_argument("classify_tractability: s, t must be > 0");
    const std::vector<Cell> cells = flatten(profile);
    switch (notion) {
        case Notion::spt:
        case Notion::pt:
        case Notion::qpt:
            return classify_fit(cells, scaling, notion, caps);
        case Notion::wt:
            return classify_limit(cells, scaling, notion, 1.0, 1.0);
        case Notion::st_wt:
            return classify_limit(cells, scaling, notion, s, t);
        case Notion::uwt:
            // Uniform weak tractability quantifies over all positive
            // exponents; probe the grid at the small pair (1/2, 1/2),
            // the hardest the finite grid can usefully resolve.
            return classify_limit(cells, scaling, notion, 0.5, 0.5);
    }
    throw std::logic_error("classify_tractability: unknown notion");
}

TractabilityReport classify_all(const ComplexityProfile& profile, double s,
                                double t, const TractabilityCaps& caps) {
    check_classification_grid(profile);
    TractabilityReport report;
    report.model_label = profile.model_label;
    report.criterion = profile.criterion;
    report.eps = profile.eps;
    report.dims = profile.dims;

    const Notion order[] = {Notion::spt, Notion::pt,    Notion::qpt,
                            Notion::wt,  Notion::st_wt, Notion::uwt};
    for (Scaling scaling : {Scaling::alg, Scaling::exp})
        for (Notion notion : order)
            report.verdicts.push_back(
                classify_tractability(profile, scaling, notion, s, t, caps));

    // Enforce the implication chain per scaling: a notion implied by a
    // stronger consistent one is itself consistent.
    const auto find = [&report](Scaling sc, Notion no) -> NotionVerdict& {
        for (NotionVerdict& v : report.verdicts)
            if (v.scaling == sc && v.notion == no) return v;
        throw std::logic_error("classify_all: verdict lookup failed");
    };
    const std::pair<Notion, Notion> chain[] = {
        {Notion::spt, Notion::pt},  {Notion::pt, Notion::qpt},
        {Notion::qpt, Notion::uwt}, {Notion::uwt, Notion::wt},
        {Notion::uwt, Notion::st_wt}};
    for (Scaling scaling : {Scaling::alg, Scaling::exp}) {
        for (const auto& [from, to] : chain) {
            const NotionVerdict& src = find(scaling, from);
            NotionVerdict& dst = find(scaling, to);
            if (src.verdict == Verdict::consistent &&
                dst.verdict != Verdict::consistent) {
                dst.verdict = Verdict::consistent;
                dst.witness = std::string("implied by ") + scaling_name(scaling) +
                              "-" + notion_name(from);
            }
        }
    }
    return report;
}

std::vector<TransferRow> verify_transfer(const ModelFamily& family,
                                         const ComplexityProfile& profile,
                                         std::span<const StdComplexityCell> cells,
                                         double omega, double delta) {
    if (!(omega > 0.0))
        throw std::invalid_argument("verify_transfer: omega must be > 0");
    const double shift = a_delta(delta);  // validates delta in (0,1)
    const std::size_t expected = profile.eps.size() * profile.dims.size();
    if (cells.size() != expected)
        throw GridMismatchError("verify_transfer: expected " +
                                std::to_string(expected) + " cells, got " +
                                std::to_string(cells.size()));

    const auto match = [&cells](double eps, int d) -> const StdComplexityCell* {
        const StdComplexityCell* found = nullptr;
        for (const StdComplexityCell& c : cells) {
            if (c.d != d) continue;
            if (std::abs(c.eps - eps) > 1e-12 * std::max(1.0, std::abs(eps)))
                continue;
            if (found)
                throw GridMismatchError("verify_transfer: duplicate cell at eps=" +
                                        fmt_g(eps) + ", d=" + std::to_string(d));
            found = &c;
        }
        if (!found)
            throw GridMismatchError("verify_transfer: missing cell at eps=" +
                                    fmt_g(eps) + ", d=" + std::to_string(d));
        return found;
    };

    std::vector<TransferRow> rows;
    rows.reserve(expected);
    for (std::size_t di = 0; di < profile.dims.size(); ++di) {
        const int d = profile.dims[di];
        const ProblemModel model = family(d);
        for (std::size_t ei = 0; ei < profile.eps.size(); ++ei) {
            const double eps = profile.eps[ei];
            const StdComplexityCell& cell = *match(eps, d);

            TransferRow row;
            row.eps = eps;
            row.d = d;
            row.n_all = profile.n_star[ei][di];
            row.n_all_quarter =
                info_complexity(model, eps / 4.0, profile.criterion);
            row.n_all_shifted =
                info_complexity(model, eps / shift, profile.criterion);
            row.bound_log = transfer_log_bound(row.n_all_quarter);
            row.bound_power = transfer_power_bound(row.n_all_quarter, omega);
            row.bound_delta = transfer_delta_bound(row.n_all_shifted, delta);
            row.n_std_empirical = cell.n_std;

            if (!cell.found) {
                row.pass = false;
                row.witness = "no tested n reached the accuracy target";
            } else if (cell.n_std < row.n_all) {
                row.pass = false;
                row.witness = "empirical std complexity " +
                              std::to_string(cell.n_std) +
                              " below general-information complexity " +
                              std::to_string(row.n_all);
            } else if (static_cast<double>(cell.n_std) > row.bound_log) {
                row.pass = false;
                row.witness = "empirical std complexity " +
                              std::to_string(cell.n_std) + " exceeds log bound " +
                              fmt_g(row.bound_log);
            } else if (static_cast<double>(cell.n_std) > row.bound_delta) {
                row.pass = false;
                row.witness = "empirical std complexity " +
                              std::to_string(cell.n_std) +
                              " exceeds delta bound " + fmt_g(row.bound_delta);
            } else if (row.bound_power < row.bound_log) {
                row.pass = false;
                row.witness = "power bound " + fmt_g(row.bound_power) +
                              " below log bound " + fmt_g(row.bound_log);
            } else {
                row.pass = true;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace avgcase
