#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "lifeloop/events/operators.hpp"

using namespace lifeloop;

namespace {

events::Personicle sample(std::size_t n) {
    Rng rng = make_rng(7, 0);
    testing::PersonicleShape shape;
    shape.max_events = n;
    events::Personicle p;
    // Draw until the size is close to n; the generator picks a size in [0, n].
    do {
        p = testing::random_personicle(rng, shape);
    } while (p.size() < n * 9 / 10);
    return p;
}

void BM_Classify(benchmark::State& state) {
    Rng rng = make_rng(1, 0);
    std::vector<std::pair<events::Interval, events::Interval>> pairs(1024);
    for (auto& [a, b] : pairs) {
        a = testing::random_interval(rng);
        b = testing::random_interval(rng);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(events::classify_interval_relation(a, b));
    }
}
BENCHMARK(BM_Classify);

void BM_CoOccurrence(benchmark::State& state) {
    const auto p = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(events::co_occurrence(p, "eating", "exercising", minutes{120}));
    state.SetComplexityN(static_cast<long>(p.size()));
}
BENCHMARK(BM_CoOccurrence)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_CompoundWindowed(benchmark::State& state) {
    const auto p = sample(static_cast<std::size_t>(state.range(0)));
    const events::CompoundEventDef def{"meal_then_move",
                                       {{events::StreamKind::activity, "eating"},
                                        {events::StreamKind::activity, "exercising"}},
                                       events::WithinWindow{hours{2}}};
    for (auto _ : state) benchmark::DoNotOptimize(events::detect_compound_events(p, def));
}
BENCHMARK(BM_CompoundWindowed)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace
