#include "avgcase/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>

#include "avgcase/stats.hpp"

namespace avgcase {

namespace {

constexpr std::size_t kMaxEnumeration = std::size_t{1} << 22;

bool finite(double x) { return std::isfinite(x); }

std::string format(const char* fmt, ...) {
    char buf[160];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return std::string(buf);
}

// Frequency of factor id a: 0 for the constant, l for cos/sin(2 pi l u).
std::uint32_t factor_level(std::uint32_t a) { return (a + 1) / 2; }

// cos(2 pi l u) and sin(2 pi l u) for l = 0..level via the rotation
// recurrence, re-anchored with a direct evaluation every 64 steps so the
// accumulated error stays near machine precision.
void fill_trig_tables(double u, std::uint32_t level, double* c, double* s) {
    c[0] = 1.0;
    s[0] = 0.0;
    if (level == 0) return;
    const double angle = 2.0 * std::numbers::pi * u;
    const double c1 = std::cos(angle);
    const double s1 = std::sin(angle);
    c[1] = c1;
    s[1] = s1;
    for (std::uint32_t l = 2; l <= level; ++l) {
        if ((l & 63u) == 0u) {
            const double a = 2.0 * std::numbers::pi * (static_cast<double>(l) * u);
            c[l] = std::cos(a);
            s[l] = std::sin(a);
        } else {
            c[l] = c[l - 1] * c1 - s[l - 1] * s1;
            s[l] = s[l - 1] * c1 + c[l - 1] * s1;
        }
    }
}

// sum_{k > n} k^(-alpha) for alpha > 1, certified within tol.
//
// Direct terms are summed up to M-1 and the remainder from M uses the
// Euler-Maclaurin expansion
//   T(M) = M^(1-a)/(a-1) + M^(-a)/2 + a M^(-a-1)/12
//          - a(a+1)(a+2) M^(-a-3)/720,
// whose neglected remainder is bounded by the first omitted term,
//   |R| <= a(a+1)(a+2)(a+3)(a+4) M^(-a-5)/30240.
// The integral bracket [I(M), I(M-1)] is the zeroth-order case of the
// same expansion; the extra terms keep M (and the amount of direct
// summation) small even for alpha near 1.
double algebraic_tail_unscaled(double alpha, std::size_t n, double tol) {
    const double poch5 = alpha * (alpha + 1.0) * (alpha + 2.0) *
                         (alpha + 3.0) * (alpha + 4.0);
    double m = std::max(static_cast<double>(n) + 1.0, 64.0);
    const double needed =
        std::pow(poch5 / (30240.0 * tol), 1.0 / (alpha + 5.0));
    if (needed > m) m = std::ceil(needed);
    const auto start = n + 1;
    const auto stop = static_cast<std::size_t>(m);

    KahanSum direct;
    for (std::size_t k = start; k < stop; ++k) {
        direct.add(std::pow(static_cast<double>(k), -alpha));
    }
    const double em = std::pow(m, 1.0 - alpha) / (alpha - 1.0) +
                      std::pow(m, -alpha) / 2.0 +
                      alpha * std::pow(m, -alpha - 1.0) / 12.0 -
                      alpha * (alpha + 1.0) * (alpha + 2.0) *
                          std::pow(m, -alpha - 3.0) / 720.0;
    return direct.value() + em;
}

}  // namespace

double factor_value(std::uint32_t a, double u) {
    if (a == 0) return 1.0;
    const double angle =
        2.0 * std::numbers::pi * (static_cast<double>(factor_level(a)) * u);
    const double t = (a & 1u) ? std::cos(angle) : std::sin(angle);
    return std::numbers::sqrt2 * t;
}

DecayFamily DecayFamily::algebraic(double alpha, double scale) {
    DecayFamily f;
    f.kind = DecayKind::algebraic;
    f.alpha = alpha;
    f.scale = scale;
    return f;
}

DecayFamily DecayFamily::geometric(double ratio, double amplitude) {
    DecayFamily f;
    f.kind = DecayKind::geometric;
    f.ratio = ratio;
    f.amplitude = amplitude;
    return f;
}

DecayFamily DecayFamily::tensor_list(std::vector<double> weights) {
    DecayFamily f;
    f.kind = DecayKind::tensor_product;
    f.weights = std::move(weights);
    return f;
}

DecayFamily DecayFamily::tensor_rule(double weight_scale, double weight_ratio) {
    DecayFamily f;
    f.kind = DecayKind::tensor_product;
    f.weight_scale = weight_scale;
    f.weight_ratio = weight_ratio;
    return f;
}

std::string DecayFamily::label() const {
    switch (kind) {
        case DecayKind::algebraic:
            return format("algebraic(alpha=%g,C=%g)", alpha, scale);
        case DecayKind::geometric:
            return format("geometric(q=%g,A=%g)", ratio, amplitude);
        case DecayKind::tensor_product:
            if (!weights.empty()) {
                return format("tensor-list(k=%zu,w1=%g)", weights.size(),
                              weights.front());
            }
            return format("tensor-rule(c=%g,r=%g)", weight_scale, weight_ratio);
    }
    return "unknown";
}

// Pairing between linear eigenvalue indices and basis multi-indices.
// For algebraic/geometric spectra the enumeration is graded-lex on
// factor ids (eigenvalues are already nonincreasing in k, so any fixed
// enumeration pairs correctly).  For tensor-product spectra the
// enumeration sorts the products nonincreasingly, lexicographic on the
// weight multi-index for ties; a max-heap walks the product lattice and
// the spanning-tree rule below visits every multi-index exactly once.
struct ProblemModel::Pairing {
    explicit Pairing(const DecayFamily& fam, int dim) : family(fam), d(dim) {}

    double weight(std::uint32_t j) const {  // 1-based weight index
        if (!family.weights.empty()) {
            return j <= family.weights.size() ? family.weights[j - 1] : 0.0;
        }
        return family.weight_scale *
               std::pow(family.weight_ratio, static_cast<double>(j - 1));
    }

    double product(const std::vector<std::uint32_t>& widx) const {
        double v = 1.0;
        for (std::uint32_t j : widx) v *= weight(j);
        return v;
    }

    struct HeapNode {
        double value;
        std::vector<std::uint32_t> widx;
    };
    // std::push_heap keeps the best node at front; "less" means popped
    // later: smaller value, or equal value and lex-greater multi-index.
    struct NodeLess {
        bool operator()(const HeapNode& a, const HeapNode& b) const {
            if (a.value != b.value) return a.value < b.value;
            return std::lexicographical_compare(b.widx.begin(), b.widx.end(),
                                                a.widx.begin(), a.widx.end());
        }
    };

    void seed_heap() {
        HeapNode root;
        root.widx.assign(static_cast<std::size_t>(d), 1);
        root.value = product(root.widx);
        heap.push_back(std::move(root));
    }

    void extend_tensor(std::size_t count) {
        if (enumerated == 0 && heap.empty()) seed_heap();
        while (enumerated < count) {
            if (enumerated >= kMaxEnumeration) {
                throw Error(format(
                    "tensor-product enumeration exceeds the cap of %zu terms",
                    kMaxEnumeration));
            }
            std::pop_heap(heap.begin(), heap.end(), NodeLess{});
            HeapNode node = std::move(heap.back());
            heap.pop_back();

            for (std::uint32_t j : node.widx) order.push_back(j - 1);
            lambda.push_back(node.value);
            prefix_acc.add(node.value);
            prefix.push_back(prefix_acc.value());
            ++enumerated;

            std::size_t limit = static_cast<std::size_t>(d);
            for (std::size_t t = 0; t < node.widx.size(); ++t) {
                if (node.widx[t] > 1) {
                    limit = t + 1;
                    break;
                }
            }
            for (std::size_t t = 0; t < limit; ++t) {
                HeapNode child;
                child.widx = node.widx;
                child.widx[t] += 1;
                child.value = product(child.widx);
                heap.push_back(std::move(child));
                std::push_heap(heap.begin(), heap.end(), NodeLess{});
            }
        }
    }

    // All multi-indices of factor-id sum `degree` in lex order.
    void emit_degree_block(std::uint32_t degree) {
        std::vector<std::uint32_t> idx(static_cast<std::size_t>(d), 0);
        emit_rec(idx, 0, degree);
    }
    void emit_rec(std::vector<std::uint32_t>& idx, std::size_t pos,
                  std::uint32_t left) {
        if (pos + 1 == idx.size()) {
            idx[pos] = left;
            order.insert(order.end(), idx.begin(), idx.end());
            ++enumerated;
            return;
        }
        for (std::uint32_t a = 0; a <= left; ++a) {
            idx[pos] = a;
            emit_rec(idx, pos + 1, left - a);
        }
    }

    void extend_graded(std::size_t count) {
        while (enumerated < count) {
            if (enumerated >= kMaxEnumeration) {
                throw Error(format(
                    "basis enumeration exceeds the cap of %zu terms",
                    kMaxEnumeration));
            }
            emit_degree_block(next_degree++);
        }
    }

    void extend(std::size_t count) {
        if (family.kind == DecayKind::tensor_product) {
            extend_tensor(count);
        } else {
            extend_graded(count);
        }
    }

    DecayFamily family;
    int d;
    std::mutex mutex;
    std::size_t enumerated = 0;
    std::vector<std::uint32_t> order;  // flat factor ids, stride d

    std::uint32_t next_degree = 0;  // graded-lex state

    std::vector<HeapNode> heap;  // tensor state
    std::vector<double> lambda;
    std::vector<double> prefix;
    KahanSum prefix_acc;
};

ProblemModel::ProblemModel(DecayFamily family, int dimension)
    : family_(std::move(family)), d_(dimension) {
    if (d_ < 1) throw std::invalid_argument("dimension must be >= 1");
    switch (family_.kind) {
        case DecayKind::algebraic:
            if (!finite(family_.alpha) || family_.alpha <= 1.0) {
                throw NonSummableError(
                    "algebraic decay needs alpha > 1 for a finite trace");
            }
            if (!finite(family_.scale) || family_.scale <= 0.0) {
                throw std::invalid_argument("algebraic scale must be > 0");
            }
            break;
        case DecayKind::geometric:
            if (!finite(family_.ratio) || family_.ratio <= 0.0 ||
                family_.ratio >= 1.0) {
                throw std::invalid_argument(
                    "geometric ratio must lie in (0,1)");
            }
            if (!finite(family_.amplitude) || family_.amplitude < 0.0) {
                throw std::invalid_argument(
                    "geometric amplitude must be >= 0");
            }
            break;
        case DecayKind::tensor_product:
            if (!family_.weights.empty()) {
                double prev = std::numeric_limits<double>::infinity();
                for (double w : family_.weights) {
                    if (!finite(w) || w < 0.0) {
                        throw std::invalid_argument(
                            "tensor weights must be finite and >= 0");
                    }
                    if (w > prev) {
                        throw std::invalid_argument(
                            "tensor weights must be nonincreasing");
                    }
                    prev = w;
                }
            } else {
                if (!finite(family_.weight_scale) ||
                    family_.weight_scale <= 0.0) {
                    throw std::invalid_argument(
                        "tensor weight scale must be > 0");
                }
                if (!finite(family_.weight_ratio) ||
                    family_.weight_ratio <= 0.0 ||
                    family_.weight_ratio >= 1.0) {
                    throw std::invalid_argument(
                        "tensor weight ratio must lie in (0,1)");
                }
            }
            break;
    }
    pairing_ = std::make_shared<Pairing>(family_, d_);
}

std::string ProblemModel::label() const {
    return family_.label() + format("|d=%d", d_);
}

double ProblemModel::eigenvalue(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("eigenvalue index is 1-based");
    switch (family_.kind) {
        case DecayKind::algebraic:
            return family_.scale *
                   std::pow(static_cast<double>(k), -family_.alpha);
        case DecayKind::geometric: {
            const double a = family_.amplitude;
            return a * a *
                   std::pow(family_.ratio, 2.0 * static_cast<double>(k));
        }
        case DecayKind::tensor_product: {
            std::lock_guard<std::mutex> lock(pairing_->mutex);
            pairing_->extend(k);
            return pairing_->lambda[k - 1];
        }
    }
    return 0.0;
}

std::vector<double> ProblemModel::eigenvalue_prefix(std::size_t count) const {
    std::vector<double> out(count);
    if (family_.kind == DecayKind::tensor_product) {
        std::lock_guard<std::mutex> lock(pairing_->mutex);
        pairing_->extend(count);
        std::copy_n(pairing_->lambda.begin(), count, out.begin());
        return out;
    }
    for (std::size_t k = 1; k <= count; ++k) out[k - 1] = eigenvalue(k);
    return out;
}

double ProblemModel::trace(double tol) const { return tail_sum(0, tol); }

double ProblemModel::tail_sum(std::size_t n, double tol) const {
    if (!(tol > 0.0)) throw std::invalid_argument("tail tolerance must be > 0");
    const double tol_eff = std::max(tol, 1e-15);
    switch (family_.kind) {
        case DecayKind::geometric: {
            const double a = family_.amplitude;
            const double q = family_.ratio;
            // sum_{k>n} A^2 q^(2k) is an exact geometric series.
            return a * a *
                   std::pow(q, 2.0 * (static_cast<double>(n) + 1.0)) /
                   (1.0 - q * q);
        }
        case DecayKind::algebraic:
            return family_.scale *
                   algebraic_tail_unscaled(family_.alpha, n,
                                           tol_eff / family_.scale);
        case DecayKind::tensor_product: {
            double total;
            if (!family_.weights.empty()) {
                KahanSum s;
                for (double w : family_.weights) s.add(w);
                total = std::pow(s.value(), d_);
            } else {
                total = std::pow(
                    family_.weight_scale / (1.0 - family_.weight_ratio), d_);
            }
            if (n == 0) return total;
            std::lock_guard<std::mutex> lock(pairing_->mutex);
            pairing_->extend(n);
            return std::max(0.0, total - pairing_->prefix[n - 1]);
        }
    }
    return 0.0;
}

MultiIndex ProblemModel::basis_index(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("basis index is 1-based");
    std::lock_guard<std::mutex> lock(pairing_->mutex);
    pairing_->extend(k);
    const std::size_t stride = static_cast<std::size_t>(d_);
    const auto begin = pairing_->order.begin() +
                       static_cast<std::ptrdiff_t>((k - 1) * stride);
    return MultiIndex(begin, begin + static_cast<std::ptrdiff_t>(stride));
}

std::vector<std::uint32_t> ProblemModel::basis_index_prefix(
    std::size_t count) const {
    std::lock_guard<std::mutex> lock(pairing_->mutex);
    pairing_->extend(count);
    const std::size_t stride = static_cast<std::size_t>(d_);
    return std::vector<std::uint32_t>(
        pairing_->order.begin(),
        pairing_->order.begin() +
            static_cast<std::ptrdiff_t>(count * stride));
}

void ProblemModel::check_point(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(d_)) {
        throw std::invalid_argument("point dimension mismatch");
    }
    for (double u : x) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw OutOfDomainError("point outside [0,1]^d");
        }
    }
}

double ProblemModel::eval_basis(std::size_t k, std::span<const double> x) const {
    check_point(x);
    const MultiIndex idx = basis_index(k);
    double v = 1.0;
    for (int t = 0; t < d_; ++t) {
        v *= factor_value(idx[static_cast<std::size_t>(t)],
                          x[static_cast<std::size_t>(t)]);
    }
    return v;
}

void ProblemModel::eval_basis_prefix(std::span<const double> x,
                                     std::size_t count,
                                     std::span<double> out) const {
    check_point(x);
    BasisEvaluator eval(*this, count);
    eval(x, out);
}

std::size_t ProblemModel::truncation(double rel_tail, std::size_t max_terms,
                                     std::size_t min_terms) const {
    if (!(rel_tail > 0.0)) {
        throw std::invalid_argument("relative tail target must be > 0");
    }
    if (max_terms < min_terms) max_terms = min_terms;
    const double target = rel_tail * trace();
    if (!(tail_sum(max_terms) <= target)) return max_terms;
    std::size_t lo = 0, hi = max_terms;  // smallest K with tail <= target
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (tail_sum(mid) <= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return std::max(lo, min_terms);
}

RandomFunction ProblemModel::sample_function(std::size_t k_terms,
                                             RngStream& rng) const {
    RandomFunction f;
    f.coeffs.resize(k_terms);
    const std::vector<double> lam = eigenvalue_prefix(k_terms);
    for (std::size_t i = 0; i < k_terms; ++i) {
        f.coeffs[i] = std::sqrt(lam[i]) * rng.normal();
    }
    return f;
}

double ProblemModel::eval_function(const RandomFunction& f,
                                   std::span<const double> x) const {
    check_point(x);
    const std::size_t count = f.coeffs.size();
    std::vector<double> basis(count);
    BasisEvaluator eval(*this, count);
    eval(x, basis);
    KahanSum acc;
    for (std::size_t i = 0; i < count; ++i) acc.add(f.coeffs[i] * basis[i]);
    return acc.value();
}

BasisEvaluator::BasisEvaluator(const ProblemModel& model, std::size_t count)
    : d_(model.dimension()), count_(count) {
    flat_ = model.basis_index_prefix(count);
    level_.assign(static_cast<std::size_t>(d_), 0);
    for (std::size_t k = 0; k < count_; ++k) {
        for (int t = 0; t < d_; ++t) {
            const std::uint32_t lvl = factor_level(
                flat_[k * static_cast<std::size_t>(d_) +
                      static_cast<std::size_t>(t)]);
            auto& cur = level_[static_cast<std::size_t>(t)];
            cur = std::max(cur, lvl);
        }
    }
    offset_.assign(static_cast<std::size_t>(d_) + 1, 0);
    for (int t = 0; t < d_; ++t) {
        offset_[static_cast<std::size_t>(t) + 1] =
            offset_[static_cast<std::size_t>(t)] +
            level_[static_cast<std::size_t>(t)] + 1;
    }
    cos_.resize(offset_.back());
    sin_.resize(offset_.back());
}

void BasisEvaluator::operator()(std::span<const double> x,
                                std::span<double> out) {
    for (int t = 0; t < d_; ++t) {
        const std::size_t off = offset_[static_cast<std::size_t>(t)];
        fill_trig_tables(x[static_cast<std::size_t>(t)],
                         level_[static_cast<std::size_t>(t)], cos_.data() + off,
                         sin_.data() + off);
    }
    const std::size_t stride = static_cast<std::size_t>(d_);
    for (std::size_t k = 0; k < count_; ++k) {
        double v = 1.0;
        for (std::size_t t = 0; t < stride; ++t) {
            const std::uint32_t a = flat_[k * stride + t];
            if (a == 0) continue;
            const std::size_t off = offset_[t] + factor_level(a);
            const double trig = (a & 1u) ? cos_[off] : sin_[off];
            v *= std::numbers::sqrt2 * trig;
        }
        out[k] = v;
    }
}

}  // namespace avgcase
