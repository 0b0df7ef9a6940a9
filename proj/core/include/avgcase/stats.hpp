#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace avgcase {

// Neumaier-compensated accumulator.  Summation order still matters, so
// parallel code collects per-index partials and folds them in index
// order to keep results independent of scheduling.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double kahan_total(std::span<const double> xs) {
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::size_t count = 0;
};

// Sample mean and its standard error (unbiased variance, compensated
// second pass).  count < 2 yields se = 0.
inline MeanSe mean_and_se(std::span<const double> xs) {
    MeanSe out;
    out.count = xs.size();
    if (xs.empty()) return out;
    out.mean = kahan_total(xs) / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    KahanSum sq;
    for (double x : xs) {
        const double d = x - out.mean;
        sq.add(d * d);
    }
    const double var = sq.value() / static_cast<double>(xs.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(xs.size()));
    return out;
}

// Two-sided z for a 95% interval.
inline constexpr double kZ95 = 1.959963984540054;

struct BinomialCi {
    double rate = 0.0;
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval; well behaved at 0 and n successes.
inline BinomialCi wilson_interval(std::size_t failures, std::size_t trials,
                                  double z = kZ95) {
    BinomialCi out;
    if (trials == 0) return out;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    out.rate = p;
    // center - half is exactly 0 (resp. 1) at the boundary counts; do
    // not let rounding leak past the closed form.
    out.low = failures == 0 ? 0.0 : std::max(0.0, center - half);
    out.high = failures == trials ? 1.0 : std::min(1.0, center + half);
    return out;
}

}  // namespace avgcase
