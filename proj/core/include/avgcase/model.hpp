#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "avgcase/errors.hpp"
#include "avgcase/rng.hpp"

namespace avgcase {

// Problem instances live on [0,1]^d with the uniform weight.  The
// orthonormal basis is the tensor-product real trigonometric system:
// univariate factors
//   phi_0(u) = 1,
//   phi_{2l-1}(u) = sqrt(2) cos(2 pi l u),
//   phi_{2l}(u)   = sqrt(2) sin(2 pi l u),   l >= 1,
// and a d-variate basis function is a product of one factor per
// coordinate.  A MultiIndex stores the factor id per coordinate.
using MultiIndex = std::vector<std::uint32_t>;

// Value of the univariate factor with id `a` at u in [0,1].
double factor_value(std::uint32_t a, double u);

enum class DecayKind { algebraic, geometric, tensor_product };

// Eigenvalue sequence of the covariance operator, nonincreasing in the
// linear index k >= 1.
//
//   algebraic:      lambda_k = scale * k^(-alpha), alpha > 1
//   geometric:      lambda_k = amplitude^2 * ratio^(2k), 0 < ratio < 1
//   tensor_product: lambda over multi-indices (i_1..i_d), i_t >= 1, is
//                   prod_t weight(i_t), reordered nonincreasingly with
//                   lexicographic tie-breaking.  weight(.) is either an
//                   explicit nonincreasing list (zero beyond the list,
//                   so finite rank per coordinate) or the rule
//                   weight(j) = weight_scale * weight_ratio^(j-1).
struct DecayFamily {
    DecayKind kind = DecayKind::geometric;

    double alpha = 0.0;
    double scale = 1.0;

    double ratio = 0.0;
    double amplitude = 1.0;

    std::vector<double> weights;
    double weight_scale = 1.0;
    double weight_ratio = 0.0;

    static DecayFamily algebraic(double alpha, double scale = 1.0);
    static DecayFamily geometric(double ratio, double amplitude = 1.0);
    static DecayFamily tensor_list(std::vector<double> weights);
    static DecayFamily tensor_rule(double weight_scale, double weight_ratio);

    // Canonical id used in CSV output, e.g. "geometric(q=0.5,A=1)".
    std::string label() const;
};

// A draw from the zero-mean Gaussian measure, truncated to its first
// k_terms coefficients: coeffs[k-1] = sqrt(lambda_k) * g_k.
struct RandomFunction {
    std::vector<double> coeffs;
};

inline constexpr double kDefaultTailTol = 1e-11;

// A problem instance: decay family plus domain dimension.  Eigenvalues
// are attached to basis functions in nonincreasing eigenvalue order;
// for the algebraic and geometric families (whose eigenvalues do not
// depend on the multi-index) the basis enumeration is the graded
// lexicographic order on factor ids.  Cheap to copy; the pairing cache
// is shared and guarded, so one instance may be used from many threads.
class ProblemModel {
public:
    // Throws NonSummableError if the spectrum has no finite trace and
    // std::invalid_argument for parameters outside their domain.
    ProblemModel(DecayFamily family, int dimension);

    int dimension() const { return d_; }
    const DecayFamily& family() const { return family_; }
    std::string label() const;

    // k is 1-based.
    double eigenvalue(std::size_t k) const;
    // First count eigenvalues at once (one lock instead of count).
    std::vector<double> eigenvalue_prefix(std::size_t count) const;

    // trace = sum_k lambda_k, certified within tol.
    double trace(double tol = kDefaultTailTol) const;
    // tail_sum(n) = sum_{k > n} lambda_k, certified within tol,
    // nonincreasing in n; tail_sum(0) equals the trace.
    double tail_sum(std::size_t n, double tol = kDefaultTailTol) const;

    // The basis function paired with eigenvalue k.
    MultiIndex basis_index(std::size_t k) const;
    std::vector<std::uint32_t> basis_index_prefix(std::size_t count) const;

    // eta_k(x); throws OutOfDomainError when x leaves [0,1]^d.
    double eval_basis(std::size_t k, std::span<const double> x) const;
    // Values of eta_1..eta_count at x into out (out.size() >= count).
    void eval_basis_prefix(std::span<const double> x, std::size_t count,
                           std::span<double> out) const;

    // Smallest K with tail_sum(K) <= rel_tail * trace(), clamped to
    // [min_terms, max_terms].
    std::size_t truncation(double rel_tail, std::size_t max_terms,
                           std::size_t min_terms = 0) const;

    // Truncated Karhunen-Loeve draw; deterministic given the stream.
    RandomFunction sample_function(std::size_t k_terms, RngStream& rng) const;
    double eval_function(const RandomFunction& f,
                         std::span<const double> x) const;

private:
    struct Pairing;

    void check_point(std::span<const double> x) const;

    DecayFamily family_;
    int d_;
    std::shared_ptr<Pairing> pairing_;
};

// Evaluates the first `count` basis functions of a model at points.
// Holds per-instance scratch, so create one evaluator per thread.
class BasisEvaluator {
public:
    BasisEvaluator(const ProblemModel& model, std::size_t count);

    std::size_t count() const { return count_; }
    int dimension() const { return d_; }

    // out.size() >= count(); x must already lie in [0,1]^d.
    void operator()(std::span<const double> x, std::span<double> out);

private:
    int d_;
    std::size_t count_;
    std::vector<std::uint32_t> flat_;   // count_ * d_ factor ids
    std::vector<std::uint32_t> level_;  // per-coordinate max frequency
    std::vector<double> cos_;           // scratch tables, one block per
    std::vector<double> sin_;           // coordinate of size level+1
    std::vector<std::size_t> offset_;
};

}  // namespace avgcase
