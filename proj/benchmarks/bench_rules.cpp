#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "lifeloop/predict/rules.hpp"

using namespace lifeloop;

namespace {

void BM_MineRules(benchmark::State& state) {
    Rng rng = make_rng(11, 0);
    testing::PersonicleShape shape;
    shape.max_events = static_cast<std::size_t>(state.range(0));
    shape.categories.push_back("hyperglycemia");
    const std::vector<events::Personicle> ps = {testing::random_personicle(rng, shape),
                                                testing::random_personicle(rng, shape)};
    predict::MiningParams params;
    params.consequent = "hyperglycemia";
    params.max_len = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(predict::mine_rules(ps, params));
}
BENCHMARK(BM_MineRules)->ArgsProduct({{100, 300, 1000}, {1, 2, 3}});

}  // namespace
