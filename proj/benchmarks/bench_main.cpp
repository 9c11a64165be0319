#include "edgekit/ensembles.hpp"
#include "edgekit/painleve.hpp"
#include "edgekit/riccati.hpp"
#include "edgekit/tridiag.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace edgekit;

void BM_SturmCount(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream stream(1, 0);
    const TridiagSym t = sample_hermite({n, 2.0}, stream);
    double lambda = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sturm_count(t, lambda));
        lambda += 1e-9;
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SturmCount)->Arg(1000)->Arg(100000);

void BM_SampleHermite(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream stream(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_hermite({n, 2.0}, stream));
    }
}
BENCHMARK(BM_SampleHermite)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_HermiteEdgeDraw(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) {
        RngStream stream(1, i++);
        benchmark::DoNotOptimize(edge_sample(HermiteSpec{100000, 2.0}, 1, stream));
    }
}
BENCHMARK(BM_HermiteEdgeDraw)->Unit(benchmark::kMillisecond);

void BM_RiccatiPath(benchmark::State& state) {
    const RiccatiConfig config;
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(0.0, 2.0, config, RngStream(1, i++)));
    }
}
BENCHMARK(BM_RiccatiPath)->Unit(benchmark::kMicrosecond);

void BM_RiccatiLambda0(benchmark::State& state) {
    const RiccatiConfig config;
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_lambda0(2.0, config, RngStream(1, i++)));
    }
}
BENCHMARK(BM_RiccatiLambda0)->Unit(benchmark::kMillisecond);

void BM_PainleveSolve(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_hastings_mcleod());
    }
}
BENCHMARK(BM_PainleveSolve)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
