#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "avgcase/model.hpp"
#include "avgcase/rng.hpp"

namespace avgcase {

// Points drawn i.i.d. from the order-m sampling density
//   omega_m(x) = h_m(x),  h_m(x) = (1/m) sum_{j<=m} eta_j(x)^2,
// which is the equal-weight mixture of the densities eta_j(x)^2 dx.
struct SampleSet {
    Eigen::MatrixXd points;  // n x d, one row per sample
    std::size_t m = 0;       // mixture order the points were drawn from
    std::uint64_t seed = 0;  // stream seed that produced the points
};

// Weighted design built from a sample set:
//   scaled(i,k) = eta_k(x_i) / sqrt(h_m(x_i)),
//   gram        = scaled^T scaled / n.
struct DesignMatrix {
    Eigen::MatrixXd scaled;
    Eigen::MatrixXd gram;
    Eigen::VectorXd weights;  // h_m at each sample point
    double deviation = 0.0;   // ||gram - I||_2
};

// Designs whose Gram matrix deviates from the identity by more than
// this are rejected everywhere; the constant matches the schedule.
inline constexpr double kAdmissibleDeviation = 0.5;

// h_m(x); strictly positive for this basis (eta_1 = 1, so h_m >= 1/m).
double christoffel_density(const ProblemModel& model, std::size_t m,
                           std::span<const double> x);

// Exact i.i.d. draws from omega_m: pick a mixture component uniformly,
// then invert each univariate factor CDF by monotone bisection to 1e-12.
SampleSet draw_samples(const ProblemModel& model, std::size_t m,
                       std::size_t n, RngStream& rng);

// Throws DensityMismatchError if X was drawn for a different m and
// DegeneratePointError if h_m vanishes at a sample point.
DesignMatrix build_design(const ProblemModel& model, const SampleSet& X,
                          std::size_t m);

// Largest absolute eigenvalue of gram - I (symmetric eigensolve).
double spectral_deviation(const DesignMatrix& design);

// (2n)^sqrt(2) * exp(-n / (48 m)): tail probability bound for the event
// deviation > 1/2.  Raw value; may exceed 1.
double concentration_bound(std::size_t n, std::size_t m);
// Raw value clipped to [0,1].
double concentration_bound_clipped(std::size_t n, std::size_t m);

struct FailureRate {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 0.0;
    std::vector<double> deviations;  // per-trial, in trial order
};

// Draws `trials` independent designs (streams derived per trial from
// master_seed, so the result is independent of scheduling) and counts
// deviation > 1/2.
FailureRate empirical_failure_rate(const ProblemModel& model, std::size_t n,
                                   std::size_t m, std::size_t trials,
                                   std::uint64_t master_seed,
                                   unsigned jobs = 1);

}  // namespace avgcase
