#include "avgcase/sampling.hpp"

#include <cmath>
#include <numbers>

#include "avgcase/parallel.hpp"
#include "avgcase/stats.hpp"

namespace avgcase {

namespace {

constexpr double kInverseCdfTol = 1e-12;

// CDF of the univariate factor density phi_a^2 on [0,1]:
//   a = 0:        u                      (uniform)
//   a = 2l-1:     u + sin(4 pi l u)/(4 pi l)   (density 1 + cos(4 pi l u))
//   a = 2l:       u - sin(4 pi l u)/(4 pi l)   (density 1 - cos(4 pi l u))
double factor_cdf(std::uint32_t a, double u) {
    if (a == 0) return u;
    const double l = static_cast<double>((a + 1) / 2);
    const double w = 4.0 * std::numbers::pi * l;
    const double s = std::sin(w * u) / w;
    return (a & 1u) ? u + s : u - s;
}

// Inverse CDF by bisection; the CDF is monotone with F(0)=0, F(1)=1.
double factor_quantile(std::uint32_t a, double p) {
    if (a == 0) return p;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > kInverseCdfTol) {
        const double mid = 0.5 * (lo + hi);
        if (factor_cdf(a, mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double christoffel_density(const ProblemModel& model, std::size_t m,
                           std::span<const double> x) {
    if (m == 0) throw std::invalid_argument("mixture order must be >= 1");
    std::vector<double> vals(m);
    model.eval_basis_prefix(x, m, vals);
    KahanSum acc;
    for (double v : vals) acc.add(v * v);
    return acc.value() / static_cast<double>(m);
}

SampleSet draw_samples(const ProblemModel& model, std::size_t m,
                       std::size_t n, RngStream& rng) {
    if (m == 0) throw std::invalid_argument("mixture order must be >= 1");
    if (n == 0) throw std::invalid_argument("sample count must be >= 1");
    const int d = model.dimension();
    const std::vector<std::uint32_t> flat = model.basis_index_prefix(m);

    SampleSet out;
    out.m = m;
    out.seed = rng.seed();
    out.points.resize(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = rng.below(m);  // mixture component
        for (int t = 0; t < d; ++t) {
            const std::uint32_t a =
                flat[j * static_cast<std::size_t>(d) +
                     static_cast<std::size_t>(t)];
            const double p = rng.uniform();
            out.points(static_cast<Eigen::Index>(i), t) =
                factor_quantile(a, p);
        }
    }
    return out;
}

DesignMatrix build_design(const ProblemModel& model, const SampleSet& X,
                          std::size_t m) {
    if (m == 0) throw std::invalid_argument("mixture order must be >= 1");
    if (X.m != m) {
        throw DensityMismatchError(
            "sample set was drawn for a different mixture order");
    }
    const std::size_t n = static_cast<std::size_t>(X.points.rows());
    const int d = model.dimension();
    if (X.points.cols() != d) {
        throw std::invalid_argument("sample set dimension mismatch");
    }

    DesignMatrix design;
    design.scaled.resize(static_cast<Eigen::Index>(n),
                         static_cast<Eigen::Index>(m));
    design.weights.resize(static_cast<Eigen::Index>(n));

    BasisEvaluator eval(model, m);
    std::vector<double> row(m);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (int t = 0; t < d; ++t) {
            x[static_cast<std::size_t>(t)] =
                X.points(static_cast<Eigen::Index>(i), t);
        }
        eval(x, row);
        KahanSum sq;
        for (double v : row) sq.add(v * v);
        const double h = sq.value() / static_cast<double>(m);
        if (h <= 0.0) {
            throw DegeneratePointError(
                "sampling density vanishes at a sample point");
        }
        design.weights(static_cast<Eigen::Index>(i)) = h;
        const double inv = 1.0 / std::sqrt(h);
        for (std::size_t k = 0; k < m; ++k) {
            design.scaled(static_cast<Eigen::Index>(i),
                          static_cast<Eigen::Index>(k)) = row[k] * inv;
        }
    }
    design.gram = (design.scaled.transpose() * design.scaled) /
                  static_cast<double>(n);
    design.deviation = spectral_deviation(design);
    return design;
}

double spectral_deviation(const DesignMatrix& design) {
    const Eigen::Index m = design.gram.rows();
    Eigen::MatrixXd shifted =
        design.gram - Eigen::MatrixXd::Identity(m, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        shifted, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double concentration_bound(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("concentration bound needs n, m >= 1");
    }
    const double ln = std::numbers::sqrt2 *
                          std::log(2.0 * static_cast<double>(n)) -
                      static_cast<double>(n) / (48.0 * static_cast<double>(m));
    return std::exp(ln);
}

double concentration_bound_clipped(std::size_t n, std::size_t m) {
    return std::min(1.0, concentration_bound(n, m));
}

FailureRate empirical_failure_rate(const ProblemModel& model, std::size_t n,
                                   std::size_t m, std::size_t trials,
                                   std::uint64_t master_seed, unsigned jobs) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    FailureRate out;
    out.trials = trials;
    out.deviations.assign(trials, 0.0);
    parallel_for(trials, jobs, [&](std::size_t trial) {
        RngStream rng(master_seed, trial);
        const SampleSet X = draw_samples(model, m, n, rng);
        const DesignMatrix design = build_design(model, X, m);
        out.deviations[trial] = design.deviation;
    });
    for (double dev : out.deviations) {
        if (dev > kAdmissibleDeviation) ++out.failures;
    }
    const BinomialCi ci = wilson_interval(out.failures, trials);
    out.rate = ci.rate;
    out.ci_low = ci.low;
    out.ci_high = ci.high;
    return out;
}

}  // namespace avgcase
