#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>

#include "avgcase/model.hpp"
#include "avgcase/sampling.hpp"

namespace avgcase {

// Largest recovery order m that n samples support at failure budget
// delta: m = floor(n / (48 (sqrt(2) ln(2n) - ln delta))).  m = 0 is
// reported as infeasible, not as an error.
struct ScheduleResult {
    std::size_t m = 0;
    double delta = 0.0;
    double denominator = 0.0;
    bool feasible = false;
    // sqrt((1 + 4m/n) / (1 - delta)): the factor by which the recovery
    // error may exceed the order-m benchmark.
    double amplification = 0.0;
};

ScheduleResult schedule_m(std::size_t n, double delta);
// The fixed-budget schedule delta = 2^(-sqrt(2)), where the
// denominator simplifies to 48 sqrt(2) ln(4n) and the amplification is
// bounded by 4.
ScheduleResult schedule_m_fixed(std::size_t n);

// sqrt(1 + 1/(12 ln(1/delta))) / sqrt(1 - delta): the accuracy shift
// appearing in the delta-tuned complexity transfer bound.
double a_delta(double delta);

struct LsqFit {
    Eigen::VectorXd coeffs;   // fitted coefficients, eigenvalue order
    double deviation = 0.0;   // design deviation carried through
    bool admissible = false;  // deviation <= 1/2
};

// Factors a design once and solves the weighted least-squares problem
//   min_g sum_i (f(x_i) - g(x_i))^2 / h_m(x_i)
// for many right-hand sides.  Column-pivoted QR on the scaled design;
// normal equations are never formed.
class LsqSolver {
public:
    explicit LsqSolver(const DesignMatrix& design);

    std::size_t order() const { return m_; }
    std::size_t points() const { return n_; }
    bool admissible() const { return admissible_; }
    double deviation() const { return deviation_; }

    // f_values are raw samples f(x_i); weighting happens internally.
    // Throws RankDeficientError if the factorization found rank < m.
    LsqFit solve(std::span<const double> f_values) const;

    // Batch solve; columns of weighted_values are already divided by
    // sqrt(h_m(x_i)).  Returns the m x cols coefficient matrix.
    Eigen::MatrixXd solve_weighted(const Eigen::MatrixXd& weighted_values) const;

private:
    void require_full_rank() const;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    double deviation_ = 0.0;
    bool admissible_ = false;
    Eigen::VectorXd inv_sqrt_weights_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

// Convenience wrapper: builds the design for X and solves once.
LsqFit fit(const ProblemModel& model, const SampleSet& X, std::size_t m,
           std::span<const double> f_values);

// ||f - S f||^2 in coefficient space: the fitted coefficients replace
// the leading ones, everything beyond the truncation stays.
double approx_error_sq(const RandomFunction& f, const LsqFit& fit);

// Benchmark error of the best order-m algorithm: sqrt(tail_sum(m)).
double avg_error_all(const ProblemModel& model, std::size_t m);

struct MonteCarloPolicy {
    std::size_t trials_x = 100;    // outer: sample-set draws
    std::size_t trials_f = 100;    // inner: function draws per design
    double kl_rel_tail = 1e-6;     // truncation target tail/trace
    std::size_t kl_max_terms = 4096;
    std::size_t max_redraws = 1000;  // per outer trial
};

struct StdErrorEstimate {
    std::size_t n = 0;
    std::size_t m = 0;
    double delta = 0.0;
    std::size_t trials_x = 0;   // requested outer trials
    std::size_t successes = 0;  // outer trials with an admissible design
    std::size_t trials_f = 0;
    std::size_t rejections = 0;  // inadmissible designs redrawn
    double mean_sq = 0.0;        // empirical E ||f - S f||^2
    double std_error = 0.0;      // SE of mean_sq across outer trials
    double bound_sq = 0.0;       // (1 + 4m/n)/(1 - delta) * tail_sum(m)
    std::size_t kl_terms = 0;
    double truncation_bias = 0.0;  // tail_sum(kl_terms); the estimate
                                   // understates by at least this much
};

// Two-level Monte Carlo estimate of the conditional expected squared
// recovery error.  Outer trials draw designs (rejecting inadmissible
// ones); inner trials draw truncated Gaussian functions.  Streams are
// derived per trial, so results do not depend on jobs.  Throws
// NoAdmissibleDesignError when every outer trial fails.
StdErrorEstimate avg_error_std_empirical(const ProblemModel& model,
                                         std::size_t n, std::size_t m,
                                         double delta,
                                         const MonteCarloPolicy& policy,
                                         std::uint64_t master_seed,
                                         unsigned jobs = 1);

}  // namespace avgcase
