#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "avgcase/model.hpp"

namespace avgcase {

// Error criterion the target accuracy is measured against: absolute
// (threshold eps) or normalized (threshold eps times the initial
// error sqrt(trace)).
enum class Criterion { absolute, normalized };

const char* criterion_name(Criterion crit);  // "ABS" / "NOR"

// Least n with tail_sum(n) <= (eps * cri_d)^2, by exponential search
// plus bisection on the monotone tail.  Exact given exact tails: the
// same comparison a linear scan would make.
std::size_t info_complexity(const ProblemModel& model, double eps,
                            Criterion crit);

// n*(eps, d) tabulated over a grid, one model per dimension.
struct ComplexityProfile {
    std::string model_label;
    Criterion criterion = Criterion::absolute;
    std::vector<double> eps;
    std::vector<int> dims;
    std::vector<double> gamma;  // trace per dimension
    // n_star[ei][di] = n*(eps[ei], dims[di])
    std::vector<std::vector<std::size_t>> n_star;

    std::size_t at(std::size_t ei, std::size_t di) const {
        return n_star.at(ei).at(di);
    }
};

using ModelFamily = std::function<ProblemModel(int dimension)>;

ComplexityProfile build_profile(const ModelFamily& family,
                                std::span<const double> eps,
                                std::span<const int> dims, Criterion crit,
                                unsigned jobs = 1);
// Same spectrum in every dimension.
ComplexityProfile build_profile(const DecayFamily& family,
                                std::span<const double> eps,
                                std::span<const int> dims, Criterion crit,
                                unsigned jobs = 1);

// Standard-information complexity bounds in terms of the general
// information complexity n_all at a shifted accuracy.

// 96 sqrt(2) (n+1)(ln(n+1) + ln(192 sqrt(2))); pair with n_all at eps/4.
double transfer_log_bound(std::size_t n_all);

// C_omega = sup_{x >= 1} 96 sqrt(2)(ln x + ln(192 sqrt(2))) / x^omega,
// from the stationary point x = exp(1/omega - ln(192 sqrt(2))) when
// that exceeds 1, else the boundary x = 1.
double power_bound_constant(double omega);

// C_omega (n+1)^(1+omega); pair with n_all at eps/4.
double transfer_power_bound(std::size_t n_all, double omega);

// 48 (4 (ln 48 + ln ln(1/delta) + ln(n+1)) + ln(1/delta)) (n+1);
// pair with n_all at eps/a_delta(delta).  Requires delta <= e^(-e) so
// that ln ln(1/delta) >= 1 and the underlying estimate applies.
double transfer_delta_bound(std::size_t n_all, double delta);

inline constexpr double kDeltaBoundMax = 0.06598803584531254;  // e^(-e)

// Exponential-decay regime: if sqrt(lambda_k) <= A q^k sqrt(gamma_d)
// for all k, then the standard-information error after n samples is
// at most (4A/(1-q)) q2^(n/ln(4n)) sqrt(gamma_d) with q2 = q^(1/(48 sqrt(2))).
double exp_decay_q2(double q);
double exp_decay_bound(std::size_t n, double A, double q, double gamma_d);

struct HypothesisCheck {
    bool holds = false;
    std::size_t witness = 0;  // first violating index, 0 when none
    double lhs = 0.0;         // sqrt(lambda_k) at the witness
    double rhs = 0.0;         // A q^k sqrt(gamma_d) at the witness
};

// Checks sqrt(lambda_k) <= A q^k sqrt(trace) for k = 1..k_max.
HypothesisCheck check_exp_hypothesis(const ProblemModel& model, double A,
                                     double q, std::size_t k_max);

// Tractability classification.  Notions are growth classes of
// n*(eps, d); ALG scaling measures against 1/eps, EXP against
// 1 + ln(1/eps).
enum class Scaling { alg, exp };
enum class Notion { spt, pt, qpt, wt, st_wt, uwt };
enum class Verdict { consistent, violated, inconclusive };

const char* scaling_name(Scaling s);   // "ALG" / "EXP"
const char* notion_name(Notion n);     // "SPT", "PT", "QPT", "WT", "(s,t)-WT", "UWT"
const char* verdict_name(Verdict v);

struct TractabilityCaps {
    double c_cap = 1e6;    // largest admissible fitted constant
    double exp_cap = 64.0; // largest admissible fitted exponent
};

struct NotionVerdict {
    Scaling scaling = Scaling::alg;
    Notion notion = Notion::spt;
    double s = 1.0;  // (s,t)-WT parameters; UWT reports its probe here
    double t = 1.0;
    Verdict verdict = Verdict::inconclusive;
    // Fit notions (SPT/PT/QPT): smallest constant for the fitted
    // exponents, the exponents themselves, and the regression residual.
    double c_fit = 0.0;
    double p_fit = 0.0;  // accuracy exponent (SPT/PT)
    double q_fit = 0.0;  // dimension exponent (PT)
    double t_fit = 0.0;  // QPT exponent
    double residual = 0.0;
    // Limit notions (WT/(s,t)-WT/UWT): max ratio over inner/outer
    // grid shells ordered by 1/eps + d.
    double inner_max = 0.0;
    double outer_max = 0.0;
    std::string witness;
};

// Single-notion classification.  For SPT/PT/QPT: fits the log-linear
// form, takes the smallest constant at the fitted exponents, and
// reports `consistent` when it stays within the caps, `violated` when
// even the capped exponents need a larger constant, `inconclusive`
// otherwise.  For the limit notions: compares the max of
// ln(n*) / denom over the outer grid shell against the inner shell;
// decreasing max is `consistent`, anything else `inconclusive` (a
// finite grid cannot certify a limit).  Throws GridTooSmallError for
// fewer than 4 accuracy values or 3 dimensions.
NotionVerdict classify_tractability(const ComplexityProfile& profile,
                                    Scaling scaling, Notion notion,
                                    double s = 1.0, double t = 1.0,
                                    const TractabilityCaps& caps = {});

struct TractabilityReport {
    std::string model_label;
    Criterion criterion = Criterion::absolute;
    std::vector<double> eps;
    std::vector<int> dims;
    std::vector<NotionVerdict> verdicts;  // all twelve
};

// All twelve verdicts with the implication chain enforced:
// SPT => PT => QPT => UWT => WT and UWT => (s,t)-WT, per scaling.
// A weaker notion left unconfirmed by its own check is upgraded to
// `consistent` with an "implied by" witness when a stronger one holds.
TractabilityReport classify_all(const ComplexityProfile& profile, double s,
                                double t, const TractabilityCaps& caps = {});

// Transfer audit over a grid: general-information complexities from
// the profile against empirical standard-information complexities
// measured by least-squares runs.
struct StdComplexityCell {
    double eps = 0.0;
    int d = 0;
    std::size_t n_std = 0;      // least tested n whose error CI cleared
    bool found = false;         // false: no tested n cleared eps * cri_d
    double err_ci_upper = 0.0;  // CI upper bound of the error at n_std
};

struct TransferRow {
    double eps = 0.0;
    int d = 0;
    std::size_t n_all = 0;          // n*(eps) with general information
    std::size_t n_all_quarter = 0;  // n*(eps/4)
    std::size_t n_all_shifted = 0;  // n*(eps/a_delta(delta))
    double bound_log = 0.0;         // transfer_log_bound(n_all_quarter)
    double bound_power = 0.0;       // transfer_power_bound(n_all_quarter, omega)
    double bound_delta = 0.0;       // transfer_delta_bound(n_all_shifted, delta)
    std::size_t n_std_empirical = 0;
    bool pass = false;
    std::string witness;  // failure reason, empty on pass
};

// Per-cell checks: n_all <= n_std_empirical (standard information can
// only cost more), n_std_empirical <= bound_log and <= bound_delta,
// and bound_power >= bound_log.  Cells must match the profile grid
// exactly (GridMismatchError otherwise).
std::vector<TransferRow> verify_transfer(const ModelFamily& family,
                                         const ComplexityProfile& profile,
                                         std::span<const StdComplexityCell> cells,
                                         double omega, double delta);

}  // namespace avgcase
