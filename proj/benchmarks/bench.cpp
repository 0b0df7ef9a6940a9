#include <benchmark/benchmark.h>

#include <array>
#include <cstddef>

#include "avgcase/complexity.hpp"
#include "avgcase/lsq.hpp"
#include "avgcase/model.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/sampling.hpp"

namespace {

using namespace avgcase;

constexpr std::uint64_t kSeed = 20260815;

ProblemModel make_model(int d) {
    return ProblemModel(DecayFamily::geometric(0.5), d);
}

void BM_ChristoffelDensity(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const std::size_t m = static_cast<std::size_t>(state.range(1));
    const ProblemModel model = make_model(d);
    std::array<double, 4> x{0.3, 0.7, 0.1, 0.9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            christoffel_density(model, m, {x.data(), static_cast<std::size_t>(d)}));
    }
}
BENCHMARK(BM_ChristoffelDensity)->Args({1, 4})->Args({2, 16})->Args({3, 64});

void BM_DrawSamples(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const std::size_t m = static_cast<std::size_t>(state.range(1));
    const std::size_t n = 256;
    const ProblemModel model = make_model(d);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        RngStream rng(kSeed, stream++);
        benchmark::DoNotOptimize(draw_samples(model, m, n, rng));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_DrawSamples)->Args({1, 1})->Args({1, 16})->Args({2, 16});

void BM_BuildDesign(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 1024;
    const ProblemModel model = make_model(2);
    RngStream rng(kSeed, 0);
    const SampleSet X = draw_samples(model, m, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_design(model, X, m));
    }
}
BENCHMARK(BM_BuildDesign)->Arg(4)->Arg(16);

void BM_LsqFactor(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 1024;
    const ProblemModel model = make_model(2);
    RngStream rng(kSeed, 1);
    const SampleSet X = draw_samples(model, m, n, rng);
    const DesignMatrix design = build_design(model, X, m);
    for (auto _ : state) {
        LsqSolver solver(design);
        benchmark::DoNotOptimize(solver);
    }
}
BENCHMARK(BM_LsqFactor)->Arg(4)->Arg(16);

void BM_LsqSolve(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 1024;
    const ProblemModel model = make_model(2);
    RngStream rng(kSeed, 2);
    const SampleSet X = draw_samples(model, m, n, rng);
    const DesignMatrix design = build_design(model, X, m);
    const LsqSolver solver(design);
    Eigen::VectorXd values(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < values.size(); ++i)
        values[i] = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve(
            {values.data(), static_cast<std::size_t>(values.size())}));
    }
}
BENCHMARK(BM_LsqSolve)->Arg(4)->Arg(16);

void BM_TailSumAlgebraic(benchmark::State& state) {
    const ProblemModel model(DecayFamily::algebraic(2.0), 1);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.tail_sum(n));
    }
}
BENCHMARK(BM_TailSumAlgebraic)->Arg(100)->Arg(1000000);

void BM_InfoComplexity(benchmark::State& state) {
    const ProblemModel model(DecayFamily::algebraic(2.5), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            info_complexity(model, 1e-3, Criterion::absolute));
    }
}
BENCHMARK(BM_InfoComplexity);

void BM_SpectralDeviation(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const ProblemModel model = make_model(2);
    RngStream rng(kSeed, 3);
    const SampleSet X = draw_samples(model, m, 1024, rng);
    const DesignMatrix design = build_design(model, X, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_deviation(design));
    }
}
BENCHMARK(BM_SpectralDeviation)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
