#include <benchmark/benchmark.h>

#include <cmath>
#include <span>

#include "pcm/collocation.hpp"
#include "pcm/hermite.hpp"
#include "pcm/pce_model.hpp"
#include "pcm/rng.hpp"

using namespace pcm;

static void BM_HermiteEval(benchmark::State& state) {
    const unsigned k = static_cast<unsigned>(state.range(0));
    double x = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermite_eval(k, x));
        x = -x;
    }
}
BENCHMARK(BM_HermiteEval)->Arg(2)->Arg(5)->Arg(10);

static void BM_SelectPoints(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const unsigned d = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto plan = select_points(n, d, 42);
        benchmark::DoNotOptimize(plan.points.size());
    }
}
BENCHMARK(BM_SelectPoints)->Args({2, 2})->Args({3, 3})->Args({4, 3});

static void BM_FitPce(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const unsigned d = static_cast<unsigned>(state.range(1));
    SrvModelFn model = [](std::span<const double> xi) {
        double y = 1.0;
        for (double x : xi) y *= std::pow(1.0 + 0.1 * x, 1.3);
        return 65.1 * y;
    };
    for (auto _ : state) {
        auto fr = fit_pce(model, n, d, 7);
        benchmark::DoNotOptimize(fr.coeffs[0]);
    }
}
BENCHMARK(BM_FitPce)->Args({2, 2})->Args({3, 3});

static void BM_SampleOutput(benchmark::State& state) {
    PceModel m;
    m.inputs.resize(3);
    for (auto& in : m.inputs) {
        in.family = Family::Normal;
        in.p1 = 0.0;
        in.p2 = 1.0;
    }
    m.degree = 3;
    m.terms = basis_terms(3, 3);
    m.coeffs.assign(m.terms.size(), 0.1);
    m.coeffs[0] = 65.1;
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto s = sample_output(m, count, 9);
        benchmark::DoNotOptimize(s.back());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(count));
}
BENCHMARK(BM_SampleOutput)->Arg(10000)->Arg(100000);

static void BM_Kde(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    auto samples = sample_srv(count, 3);
    for (auto _ : state) {
        auto curve = pdf_estimate(samples, 256);
        benchmark::DoNotOptimize(curve.points[0].density);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(count));
}
BENCHMARK(BM_Kde)->Arg(100000)->Arg(1000000);

BENCHMARK_MAIN();
