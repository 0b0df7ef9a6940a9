#include "avgcase/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "avgcase/errors.hpp"
#include "avgcase/parallel.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/stats.hpp"

namespace avgcase {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
// 2^(-sqrt(2)), the failure budget of the fixed schedule.
constexpr double kFixedDelta = 0.37521422724648932;

// Rows per block when materializing basis values for the batch solve.
constexpr std::size_t kBatchRows = 256;

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DeltaOutOfRangeError("delta must lie in (0, 1), got " +
                                   std::to_string(delta));
}

double amplification_factor(std::size_t m, std::size_t n, double delta) {
    return std::sqrt((1.0 + 4.0 * static_cast<double>(m) / static_cast<double>(n)) /
                     (1.0 - delta));
}

ScheduleResult make_schedule(std::size_t n, double delta, double denominator) {
    ScheduleResult r;
    r.delta = delta;
    r.denominator = denominator;
    r.m = static_cast<std::size_t>(std::floor(static_cast<double>(n) / denominator));
    r.feasible = r.m >= 1;
    r.amplification = r.feasible ? amplification_factor(r.m, n, delta) : 0.0;
    return r;
}

}  // namespace

ScheduleResult schedule_m(std::size_t n, double delta) {
    if (n < 1) throw std::invalid_argument("schedule_m: n must be >= 1");
    check_delta(delta);
    const double den =
        48.0 * (kSqrt2 * std::log(2.0 * static_cast<double>(n)) - std::log(delta));
    return make_schedule(n, delta, den);
}

ScheduleResult schedule_m_fixed(std::size_t n) {
    if (n < 1) throw std::invalid_argument("schedule_m_fixed: n must be >= 1");
    const double den = 48.0 * kSqrt2 * std::log(4.0 * static_cast<double>(n));
    return make_schedule(n, kFixedDelta, den);
}

double a_delta(double delta) {
    check_delta(delta);
    const double l = std::log(1.0 / delta);
    return std::sqrt(1.0 + 1.0 / (12.0 * l)) / std::sqrt(1.0 - delta);
}

LsqSolver::LsqSolver(const DesignMatrix& design)
    : n_(static_cast<std::size_t>(design.scaled.rows())),
      m_(static_cast<std::size_t>(design.scaled.cols())),
      deviation_(design.deviation),
      admissible_(design.deviation <= kAdmissibleDeviation),
      inv_sqrt_weights_(design.weights.size()) {
    if (n_ == 0 || m_ == 0)
        throw std::invalid_argument("LsqSolver: empty design");
    for (Eigen::Index i = 0; i < design.weights.size(); ++i) {
        const double h = design.weights[i];
        if (!(h > 0.0))
            throw DegeneratePointError("LsqSolver: nonpositive density weight");
        inv_sqrt_weights_[i] = 1.0 / std::sqrt(h);
    }
    qr_.compute(design.scaled);
}

void LsqSolver::require_full_rank() const {
    if (static_cast<std::size_t>(qr_.rank()) < m_)
        throw RankDeficientError(
            "least-squares design has rank " + std::to_string(qr_.rank()) +
            " < " + std::to_string(m_) +
            (admissible_ ? "" : " (design was not admissible)"));
}

LsqFit LsqSolver::solve(std::span<const double> f_values) const {
    if (f_values.size() != n_)
        throw std::invalid_argument("LsqSolver::solve: expected " +
                                    std::to_string(n_) + " values, got " +
                                    std::to_string(f_values.size()));
    require_full_rank();
    Eigen::VectorXd y(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        y[static_cast<Eigen::Index>(i)] =
            f_values[i] * inv_sqrt_weights_[static_cast<Eigen::Index>(i)];
    LsqFit out;
    out.coeffs = qr_.solve(y);
    out.deviation = deviation_;
    out.admissible = admissible_;
    return out;
}

Eigen::MatrixXd LsqSolver::solve_weighted(const Eigen::MatrixXd& weighted_values) const {
    if (static_cast<std::size_t>(weighted_values.rows()) != n_)
        throw std::invalid_argument("LsqSolver::solve_weighted: row count mismatch");
    require_full_rank();
    return qr_.solve(weighted_values);
}

LsqFit fit(const ProblemModel& model, const SampleSet& X, std::size_t m,
           std::span<const double> f_values) {
    const DesignMatrix design = build_design(model, X, m);
    return LsqSolver(design).solve(f_values);
}

double approx_error_sq(const RandomFunction& f, const LsqFit& fit) {
    const std::size_t k_f = f.coeffs.size();
    const std::size_t k_m = static_cast<std::size_t>(fit.coeffs.size());
    KahanSum acc;
    for (std::size_t k = 0; k < std::max(k_f, k_m); ++k) {
        const double c = k < k_f ? f.coeffs[k] : 0.0;
        const double g = k < k_m ? fit.coeffs[static_cast<Eigen::Index>(k)] : 0.0;
        const double d = c - g;
        acc.add(d * d);
    }
    return acc.value();
}

double avg_error_all(const ProblemModel& model, std::size_t m) {
    return std::sqrt(model.tail_sum(m));
}

namespace {

struct TrialOutcome {
    bool success = false;
    std::size_t rejections = 0;
    double mean_err_sq = 0.0;
};

TrialOutcome run_outer_trial(const ProblemModel& model, std::size_t n,
                             std::size_t m, std::size_t kl_terms,
                             const Eigen::VectorXd& sqrt_lambda,
                             const MonteCarloPolicy& policy,
                             std::uint64_t master_seed, std::size_t trial) {
    TrialOutcome out;
    RngStream design_rng(master_seed, 2 * static_cast<std::uint64_t>(trial));

    SampleSet X;
    DesignMatrix design;
    bool found = false;
    for (std::size_t attempt = 0; attempt <= policy.max_redraws; ++attempt) {
        X = draw_samples(model, m, n, design_rng);
        design = build_design(model, X, m);
        if (design.deviation <= kAdmissibleDeviation) {
            found = true;
            out.rejections = attempt;
            break;
        }
    }
    if (!found) {
        out.rejections = policy.max_redraws + 1;
        return out;
    }

    const LsqSolver solver(design);
    const auto K = static_cast<Eigen::Index>(kl_terms);
    const auto tf = static_cast<Eigen::Index>(policy.trials_f);

    // Coefficient draws, one function per column, index order within a
    // column so the stream layout matches sample_function.
    RngStream f_rng(master_seed, 2 * static_cast<std::uint64_t>(trial) + 1);
    Eigen::MatrixXd coeffs(K, tf);
    for (Eigen::Index t = 0; t < tf; ++t)
        for (Eigen::Index k = 0; k < K; ++k)
            coeffs(k, t) = sqrt_lambda[k] * f_rng.normal();

    // Weighted sample values for all functions at once: stream the
    // basis rows in blocks and multiply into place.
    Eigen::MatrixXd weighted(static_cast<Eigen::Index>(n), tf);
    BasisEvaluator eval(model, kl_terms);
    std::vector<double> row(kl_terms);
    std::vector<double> point(static_cast<std::size_t>(model.dimension()));
    Eigen::MatrixXd block(static_cast<Eigen::Index>(kBatchRows), K);
    for (std::size_t r0 = 0; r0 < n; r0 += kBatchRows) {
        const std::size_t len = std::min(kBatchRows, n - r0);
        for (std::size_t i = 0; i < len; ++i) {
            const auto ri = static_cast<Eigen::Index>(r0 + i);
            for (int c = 0; c < model.dimension(); ++c)
                point[static_cast<std::size_t>(c)] = X.points(ri, c);
            eval(point, row);
            const double w = 1.0 / std::sqrt(design.weights[ri]);
            for (Eigen::Index k = 0; k < K; ++k)
                block(static_cast<Eigen::Index>(i), k) =
                    row[static_cast<std::size_t>(k)] * w;
        }
        weighted.middleRows(static_cast<Eigen::Index>(r0),
                            static_cast<Eigen::Index>(len)) =
            block.topRows(static_cast<Eigen::Index>(len)) *
            coeffs;
    }

    const Eigen::MatrixXd fitted = solver.solve_weighted(weighted);

    const auto mi = static_cast<Eigen::Index>(m);
    KahanSum err_acc;
    for (Eigen::Index t = 0; t < tf; ++t) {
        const double head =
            (coeffs.col(t).head(mi) - fitted.col(t)).squaredNorm();
        const double tail = coeffs.col(t).tail(K - mi).squaredNorm();
        err_acc.add(head + tail);
    }
    out.mean_err_sq = err_acc.value() / static_cast<double>(tf);
    out.success = true;
    return out;
}

}  // namespace

StdErrorEstimate avg_error_std_empirical(const ProblemModel& model,
                                         std::size_t n, std::size_t m,
                                         double delta,
                                         const MonteCarloPolicy& policy,
                                         std::uint64_t master_seed,
                                         unsigned jobs) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("avg_error_std_empirical: n, m must be >= 1");
    if (policy.trials_x < 1 || policy.trials_f < 1)
        throw std::invalid_argument("avg_error_std_empirical: trials must be >= 1");
    check_delta(delta);

    const std::size_t kl_terms =
        model.truncation(policy.kl_rel_tail, policy.kl_max_terms, m);
    const std::vector<double> lambda = model.eigenvalue_prefix(kl_terms);
    Eigen::VectorXd sqrt_lambda(static_cast<Eigen::Index>(kl_terms));
    for (std::size_t k = 0; k < kl_terms; ++k)
        sqrt_lambda[static_cast<Eigen::Index>(k)] = std::sqrt(lambda[k]);

    std::vector<TrialOutcome> outcomes(policy.trials_x);
    parallel_for(policy.trials_x, jobs, [&](std::size_t j) {
        outcomes[j] = run_outer_trial(model, n, m, kl_terms, sqrt_lambda,
                                      policy, master_seed, j);
    });

    StdErrorEstimate est;
    est.n = n;
    est.m = m;
    est.delta = delta;
    est.trials_x = policy.trials_x;
    est.trials_f = policy.trials_f;
    est.kl_terms = kl_terms;
    est.truncation_bias = model.tail_sum(kl_terms);
    est.bound_sq = (1.0 + 4.0 * static_cast<double>(m) / static_cast<double>(n)) /
                   (1.0 - delta) * model.tail_sum(m);

    std::vector<double> means;
    means.reserve(policy.trials_x);
    for (const TrialOutcome& o : outcomes) {
        est.rejections += o.rejections;
        if (o.success) means.push_back(o.mean_err_sq);
    }
    est.successes = means.size();
    if (means.empty())
        throw NoAdmissibleDesignError(
            "no admissible design in " + std::to_string(policy.trials_x) +
            " trials at n=" + std::to_string(n) + ", m=" + std::to_string(m));

    const MeanSe ms = mean_and_se(means);
    est.mean_sq = ms.mean;
    est.std_error = ms.se;
    return est;
}

}  // namespace avgcase
