#include <benchmark/benchmark.h>

#include "locmix/analyze.hpp"
#include "locmix/decompose.hpp"
#include "locmix/moments.hpp"
#include "locmix/samplers.hpp"

using namespace locmix;

namespace {

void BM_OutputDistributionChain(benchmark::State& state) {
    const LocalFunction f = build_evens(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto dist = output_distribution(f);
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(BM_OutputDistributionChain)->Arg(12)->Arg(16);

void BM_OutputDistributionBiased(benchmark::State& state) {
    const LocalFunction f = build_biased(static_cast<int>(state.range(0)), 3, 3);
    for (auto _ : state) {
        auto dist = output_distribution(f);
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(BM_OutputDistributionBiased)->Arg(12)->Arg(16);

void BM_TotalVariation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto p = make_biased_product(n, Rat(1, 4));
    const auto q = make_biased_product(n, Rat(3, 8));
    for (auto _ : state) {
        auto d = tv(p, q);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_TotalVariation)->Arg(12)->Arg(16);

void BM_VandermondeDecompose(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto profile = moment_profile(
        binomial_weights(24, Rat(1, 1 << d)));
    for (auto _ : state) {
        auto spec = vandermonde_decompose(profile, d);
        benchmark::DoNotOptimize(spec);
    }
}
BENCHMARK(BM_VandermondeDecompose)->Arg(2)->Arg(3);

void BM_Classify(benchmark::State& state) {
    SamplerBlueprint bp;
    bp.n = 8;
    bp.d = 2;
    bp.selector_bits = 1;
    bp.branches = {BranchSpec::bias(1), BranchSpec::bias(3)};
    const auto built = build_mixture(bp);
    for (auto _ : state) {
        auto result = classify(built.function, 2);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
