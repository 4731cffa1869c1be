#pragma once

#include <iosfwd>
#include <span>

#include "lifeloop/events/event.hpp"
#include "lifeloop/ingest/records.hpp"

namespace lifeloop::predict {

/// Lifestyle features of one day.
struct DayFeatures {
    double high_sugar_meals = 0.0;   ///< meals with sugar above the threshold
    double high_fat_meals = 0.0;     ///< meals with fat above the threshold
    double sedentary_hours = 0.0;
    double negative_mood = 0.0;      ///< count of -1 mood marks
    double aqi_excess = 0.0;         ///< max(0, peak AQI - base) / scale
    double exercise_minutes = 0.0;

    bool operator==(const DayFeatures&) const = default;
};

/// Declared per-day upper bounds; features are nonnegative.
struct FeatureBounds {
    double high_sugar_meals = 6.0;
    double high_fat_meals = 6.0;
    double sedentary_hours = 24.0;
    double negative_mood = 6.0;
    double aqi_excess = 5.0;
    double exercise_minutes = 600.0;

    bool operator==(const FeatureBounds&) const = default;
};

struct RiskWeights {
    double high_sugar_meal = 1.0;
    double high_fat_meal = 1.0;
    double sedentary_hour = 0.1;
    double negative_mood = 0.5;
    double aqi_excess = 0.5;
    double exercise_minute = -0.05;  ///< must be <= 0

    bool operator==(const RiskWeights&) const = default;
};

/// Non-clinical feature thresholds.
struct FeatureThresholds {
    double sugar_g = 25.0;
    double fat_g = 30.0;
    double aqi_base = 100.0;
    double aqi_scale = 100.0;

    bool operator==(const FeatureThresholds&) const = default;
};

/// Decaying accumulator of adverse lifestyle features; a proxy for rising
/// insulin resistance.
struct RiskModel {
    double risk = 0.0;
    double beta = 0.8;
    RiskWeights weights;
    FeatureBounds bounds;
    FeatureThresholds thresholds;

    /// Largest possible per-day contribution given the bounds (Fmax).
    double feature_sum_bound() const;
    /// Fmax / (1 - beta): R never exceeds this when started at or below it.
    double risk_bound() const { return feature_sum_bound() / (1.0 - beta); }

    /// Throws ValidationError on beta outside [0, 1), negative adverse weights,
    /// a positive exercise weight or negative risk.
    void validate() const;
    bool operator==(const RiskModel&) const = default;
};

/// Weighted sum of the day's features, the value added to beta * R.
double feature_contribution(const RiskWeights& w, const DayFeatures& f);

/// R' = max(0, beta R + contribution). Throws ValidationError if a feature is
/// not finite or lies outside [0, bound].
RiskModel risk_update(const RiskModel& model, const DayFeatures& features);

/// Sedentary activity categories counted towards sedentary_hours.
bool is_sedentary(std::string_view category);

/// Derives a day's features from the events starting in [day, day + 24h)
/// (interval activities are clipped to the day) and the day's environment
/// snapshots. Counts are clamped to the bounds.
DayFeatures extract_day_features(std::span<const events::Event> events, std::span<const ingest::EnvSnapshot> env,
                                 Date day, const FeatureThresholds& thresholds, const FeatureBounds& bounds);

}  // namespace lifeloop::predict
