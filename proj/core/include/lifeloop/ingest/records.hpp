#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/events/event.hpp"

namespace lifeloop::ingest {

/// Per-meal nutrient totals, grams and kilocalories.
struct FoodAttrs {
    double carbs_g = 0.0;
    double fat_g = 0.0;
    double protein_g = 0.0;
    double sugar_g = 0.0;
    double kcal = 0.0;
    std::string dish_id;

    /// Reads the nutrient attrs of a food event; absent nutrients count as 0.
    static FoodAttrs from_event(const events::Event& e);
    /// Writes nutrients and dish_id into an attr map.
    void store(events::AttrMap& attrs) const;

    /// Throws ValidationError on a negative mass or kcal.
    void validate() const;

    FoodAttrs& operator+=(const FoodAttrs& other);
    bool operator==(const FoodAttrs&) const = default;
};

/// Component-wise nutrient sums over food events starting in [t0, t1).
/// dish_id of the result is empty.
FoodAttrs nutrition_summary(std::span<const events::Event> events, Timestamp t0, Timestamp t1);

/// A one-touch mood mark: valence -1, 0 or +1, optionally linked to an event.
struct MoodMark {
    int valence = 0;
    Timestamp at{};
    std::optional<std::string> event_id;

    bool operator==(const MoodMark&) const = default;
};

/// Builds a mood-stream event carrying the mark.
events::Event to_event(const MoodMark& mark, std::string id, std::string subject);

/// Extracts marks from mood-stream events (attr "valence", optional attr "event").
std::vector<MoodMark> mood_marks(std::span<const events::Event> events);

struct EnvSnapshot {
    Timestamp at{};
    double aqi = 0.0;
    double pollen = 0.0;

    bool operator==(const EnvSnapshot&) const = default;
};

}  // namespace lifeloop::ingest
