#pragma once

// Seeded random inputs shared by the property tests and the acceptance run.

#include <string>
#include <vector>

#include "lifeloop/events/interval.hpp"
#include "lifeloop/events/personicle.hpp"
#include "lifeloop/rng.hpp"

namespace lifeloop::testing {

inline const Timestamp kEpoch = Timestamp{Date{std::chrono::year{2017} / 3 / 6}};

/// Endpoints drawn from a small grid so that shared endpoints (and thus every
/// Allen relation, degenerate ones included) turn up often.
inline events::Interval random_interval(Rng& rng, int grid = 12, bool allow_points = true) {
    auto a = uniform_int(rng, 0, grid);
    auto b = uniform_int(rng, 0, grid);
    if (a > b) std::swap(a, b);
    if (!allow_points && a == b) b = a + 1;
    return {kEpoch + minutes{a * 10}, kEpoch + minutes{b * 10}};
}

struct PersonicleShape {
    std::size_t max_events = 500;
    std::vector<std::string> categories = {"eating", "working", "commuting", "exercising", "relaxing", "sleeping"};
    int span_minutes = 7 * 24 * 60;
    int step_minutes = 15;     ///< start times are multiples of this, so ties occur
    double interval_share = 0.6;
};

/// Random single-subject personicle on the activity stream.
inline events::Personicle random_personicle(Rng& rng, const PersonicleShape& shape = {}) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(shape.max_events)));
    std::vector<events::Event> evs;
    evs.reserve(n);
    const auto slots = shape.span_minutes / shape.step_minutes;
    for (std::size_t i = 0; i < n; ++i) {
        events::Event e;
        e.id = "e" + std::to_string(i);
        e.stream = events::StreamKind::activity;
        e.category = shape.categories[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<std::int64_t>(shape.categories.size()) - 1))];
        e.start = kEpoch + minutes{uniform_int(rng, 0, slots) * shape.step_minutes};
        if (bernoulli(rng, shape.interval_share)) e.end = e.start + minutes{uniform_int(rng, 0, 12) * shape.step_minutes};
        e.subject = "subject";
        evs.push_back(std::move(e));
    }
    return events::merge_streams(evs);
}

}  // namespace lifeloop::testing
