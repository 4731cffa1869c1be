#include <benchmark/benchmark.h>

#include "lifeloop/sim/experiment.hpp"

using namespace lifeloop;

namespace {

void BM_RunCommuteLunch(benchmark::State& state) {
    auto cfg = sim::default_config("commute_lunch");
    cfg.horizon_days = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_experiment(cfg, seed++).metrics);
    state.counters["days/s"] = benchmark::Counter(static_cast<double>(cfg.horizon_days) * state.iterations(),
                                                  benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunCommuteLunch)->Arg(7)->Arg(28)->Arg(90)->Unit(benchmark::kMillisecond);

void BM_CompareTwentySeeds(benchmark::State& state) {
    const auto cfg = sim::default_config("commute_lunch");
    std::vector<std::uint64_t> seeds(20);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
    for (auto _ : state) benchmark::DoNotOptimize(sim::compare_arms(cfg, seeds).mean_tir_delta);
}
BENCHMARK(BM_CompareTwentySeeds)->Unit(benchmark::kMillisecond);

}  // namespace
