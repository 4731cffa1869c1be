#include "lifeloop/predict/risk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lifeloop/error.hpp"

namespace lifeloop::predict {
namespace {

void check_feature(double value, double bound, const char* name) {
    if (!std::isfinite(value) || value < 0.0 || value > bound) {
        throw ValidationError(std::string("risk feature '") + name + "' outside [0, " + std::to_string(bound) + "]");
    }
}

}  // namespace

double RiskModel::feature_sum_bound() const {
    const auto pos = [](double w) { return std::max(w, 0.0); };
    return pos(weights.high_sugar_meal) * bounds.high_sugar_meals + pos(weights.high_fat_meal) * bounds.high_fat_meals +
           pos(weights.sedentary_hour) * bounds.sedentary_hours + pos(weights.negative_mood) * bounds.negative_mood +
           pos(weights.aqi_excess) * bounds.aqi_excess + pos(weights.exercise_minute) * bounds.exercise_minutes;
}

void RiskModel::validate() const {
    if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError("risk beta must lie in [0, 1)");
    if (weights.high_sugar_meal < 0 || weights.high_fat_meal < 0 || weights.sedentary_hour < 0 ||
        weights.negative_mood < 0 || weights.aqi_excess < 0) {
        throw ValidationError("adverse risk weights must be nonnegative");
    }
    if (weights.exercise_minute > 0) throw ValidationError("exercise risk weight must be <= 0");
    if (!(risk >= 0.0) || !std::isfinite(risk)) throw ValidationError("risk accumulator must be finite and >= 0");
}

double feature_contribution(const RiskWeights& w, const DayFeatures& f) {
    return w.high_sugar_meal * f.high_sugar_meals + w.high_fat_meal * f.high_fat_meals +
           w.sedentary_hour * f.sedentary_hours + w.negative_mood * f.negative_mood + w.aqi_excess * f.aqi_excess +
           w.exercise_minute * f.exercise_minutes;
}

RiskModel risk_update(const RiskModel& model, const DayFeatures& f) {
    check_feature(f.high_sugar_meals, model.bounds.high_sugar_meals, "high_sugar_meals");
    check_feature(f.high_fat_meals, model.bounds.high_fat_meals, "high_fat_meals");
    check_feature(f.sedentary_hours, model.bounds.sedentary_hours, "sedentary_hours");
    check_feature(f.negative_mood, model.bounds.negative_mood, "negative_mood");
    check_feature(f.aqi_excess, model.bounds.aqi_excess, "aqi_excess");
    check_feature(f.exercise_minutes, model.bounds.exercise_minutes, "exercise_minutes");

    RiskModel out = model;
    out.risk = std::max(0.0, model.beta * model.risk + feature_contribution(model.weights, f));
    return out;
}

bool is_sedentary(std::string_view category) {
    static constexpr std::array<std::string_view, 5> kSedentary = {"working", "commuting", "watching_tv",
                                                                   "computer_use", "relaxing"};
    return std::find(kSedentary.begin(), kSedentary.end(), category) != kSedentary.end();
}

DayFeatures extract_day_features(std::span<const events::Event> events, std::span<const ingest::EnvSnapshot> env,
                                 Date day, const FeatureThresholds& th, const FeatureBounds& bounds) {
    const Timestamp t0{day};
    const Timestamp t1 = t0 + hours{24};
    DayFeatures f;

    for (const auto& e : events) {
        switch (e.stream) {
            case events::StreamKind::food:
                if (e.start >= t0 && e.start < t1) {
                    const auto food = ingest::FoodAttrs::from_event(e);
                    if (food.sugar_g > th.sugar_g) f.high_sugar_meals += 1.0;
                    if (food.fat_g > th.fat_g) f.high_fat_meals += 1.0;
                }
                break;
            case events::StreamKind::mood:
                if (e.start >= t0 && e.start < t1 && e.number_or("valence", 0.0) < 0.0) f.negative_mood += 1.0;
                break;
            case events::StreamKind::activity: {
                if (e.is_point()) break;
                const auto overlap = std::min(*e.end, t1) - std::max(e.start, t0);
                if (overlap <= Duration::zero()) break;
                const double secs = static_cast<double>(overlap.count());
                if (e.category == "exercising") f.exercise_minutes += secs / 60.0;
                if (is_sedentary(e.category)) f.sedentary_hours += secs / 3600.0;
                break;
            }
            default:
                break;
        }
    }

    double peak_aqi = 0.0;
    for (const auto& s : env) {
        if (s.at >= t0 && s.at < t1) peak_aqi = std::max(peak_aqi, s.aqi);
    }
    for (const auto& e : events) {
        if (e.stream == events::StreamKind::environment && e.start >= t0 && e.start < t1) {
            peak_aqi = std::max(peak_aqi, e.number_or("aqi", 0.0));
        }
    }
    f.aqi_excess = std::max(0.0, peak_aqi - th.aqi_base) / th.aqi_scale;

    f.high_sugar_meals = std::min(f.high_sugar_meals, bounds.high_sugar_meals);
    f.high_fat_meals = std::min(f.high_fat_meals, bounds.high_fat_meals);
    f.sedentary_hours = std::min(f.sedentary_hours, bounds.sedentary_hours);
    f.negative_mood = std::min(f.negative_mood, bounds.negative_mood);
    f.aqi_excess = std::min(f.aqi_excess, bounds.aqi_excess);
    f.exercise_minutes = std::min(f.exercise_minutes, bounds.exercise_minutes);
    return f;
}

}  // namespace lifeloop::predict
