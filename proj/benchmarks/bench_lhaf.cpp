#include <benchmark/benchmark.h>

#include <random>

#include "hafband/circuit.hpp"
#include "hafband/lhaf.hpp"
#include "hafband/oracle.hpp"
#include "hafband/sampler.hpp"

namespace {

hafband::SymmetricMatrix make(std::size_t n, std::size_t w) {
    std::mt19937_64 rng(1234 + n * 31 + w);
    return hafband::random_banded(n, w, rng);
}

void BM_LhafBanded(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto w = static_cast<std::size_t>(state.range(1));
    const auto m = make(n, w);
    const auto profile = hafband::bandwidth_of(m);
    for (auto _ : state) benchmark::DoNotOptimize(hafband::lhaf_banded(m, profile));
    state.counters["n_w_2^w"] = static_cast<double>(n * w) * static_cast<double>(1u << w);
}
BENCHMARK(BM_LhafBanded)
    ->ArgsProduct({{200, 400, 800}, {10}})
    ->ArgsProduct({{200}, {8, 10, 12, 14, 16}})
    ->Unit(benchmark::kMillisecond);

void BM_LhafSparse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto w = static_cast<std::size_t>(state.range(1));
    const auto m = make(n, w);
    const auto profile = hafband::bandwidth_of(m);
    for (auto _ : state) benchmark::DoNotOptimize(hafband::lhaf_sparse(m, profile));
}
BENCHMARK(BM_LhafSparse)->ArgsProduct({{200}, {8, 10, 12}})->Unit(benchmark::kMillisecond);

void BM_LhafOracle(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = make(n, n - 1);
    for (auto _ : state) benchmark::DoNotOptimize(hafband::lhaf_oracle(m));
}
BENCHMARK(BM_LhafOracle)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_ChainRuleShot(benchmark::State& state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const auto u = hafband::circuit_unitary(hafband::random_local_circuit(modes, 1, std::uint64_t{7}));
    const hafband::ChainRuleSampler sampler(u, hafband::SqueezeConfig::uniform(modes, 0.3),
                                            hafband::Kernel::banded);
    std::mt19937_64 rng(99);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(4, rng));
}
BENCHMARK(BM_ChainRuleShot)->Arg(3)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
