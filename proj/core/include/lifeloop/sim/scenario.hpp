#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lifeloop/events/event.hpp"
#include "lifeloop/ingest/catalogs.hpp"
#include "lifeloop/ingest/records.hpp"

namespace lifeloop::sim {

enum class Arm { active, placebo };
std::string_view to_string(Arm arm);
std::optional<Arm> parse_arm(std::string_view text);

/// A weekday lunch the recommender may influence.
struct LunchDecision {
    std::string id;                  ///< id given to the resulting meal event
    Timestamp at{};
    double travel_budget_minutes = 20.0;
    events::Event fallback;          ///< the habitual lunch eaten when nothing is accepted
    double mood_noise = 0.0;         ///< pre-drawn, so both arms see the same draw
    bool operator==(const LunchDecision&) const = default;
};

struct Scenario {
    std::string name;
    std::string subject;
    Date start{};
    int horizon_days = 0;
    std::vector<events::Event> schedule;   ///< chronological
    std::vector<LunchDecision> decisions;  ///< chronological
    std::vector<ingest::EnvSnapshot> environment;
    /// Latent liking per item in about [-1, 1]; drives post-meal mood marks.
    std::map<std::string, double, std::less<>> tastes;
    bool operator==(const Scenario&) const = default;
};

struct ScenarioOptions {
    std::string subject = "bruce";
    Date start = Date{std::chrono::year{2017} / 3 / 6};  ///< a Monday
    std::optional<int> horizon_days;                     ///< scenario default when empty
};

/// "commute_lunch" and "wedding_weekend".
std::vector<std::string_view> scenario_names();
int default_horizon_days(std::string_view name);

/// Deterministic in (name, seed, options). Throws ValidationError naming the
/// available scenarios for an unknown name.
///
/// commute_lunch: sleep, breakfast, medication (85 % adherence), weekday
/// commute and work around a 12:00 lunch decision whose habitual default is a
/// burger combo, optional late-morning gym and snack, evening exercise, dinner,
/// TV, an evening mood mark and hourly air-quality snapshots.
/// wedding_weekend: the same routine for 21 days with a wedding on the second
/// weekend (heavy sweet and fatty meals, no exercise) and a low-mood Monday.
Scenario generate_scenario(std::string_view name, std::uint64_t seed, const ScenarioOptions& options = {});

/// Lunch venues around the commute: a habitual burger place, several healthier
/// options, one out of reach and a breakfast-only cafe.
ingest::ResourceCatalog default_catalog();

/// Food event for a dish at a time.
events::Event meal_event(std::string id, std::string subject, Timestamp at, const ingest::FoodAttrs& food,
                         std::string_view category = "meal");

/// Post-meal mood: +1 above 0.35, -1 below -0.35, else 0.
int mood_valence(double taste, double noise);

}  // namespace lifeloop::sim
