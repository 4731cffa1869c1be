#pragma once

#include <span>
#include <vector>

#include <optional>

#include "lifeloop/events/event.hpp"
#include "lifeloop/events/interval.hpp"
#include "lifeloop/rng.hpp"
#include "lifeloop/time.hpp"

namespace lifeloop::sim {

/// Toy carb / insulin-sensitivity plant. Not a clinical model.
struct PhysiologyParams {
    int tick_minutes = 5;
    double carb_gain = 2.0;            ///< k_c, mg/dL per gram at S = 1
    int absorption_minutes = 120;
    double exercise_gain = 0.002;      ///< k_e, S gained per exercise minute
    double relaxation = 0.3;           ///< eta, daily pull of S toward S_base(R)
    double s_base_max = 1.2;
    double s_base_slope = 0.015;       ///< S_base = clamp(max - slope R, s_min, max)
    double medication_effect = -30.0;  ///< mg/dL per adherent dose
    int medication_minutes = 240;
    double drift_rate = 0.1;           ///< per tick, toward basal_glucose
    double basal_glucose = 100.0;
    double exercise_acute = 0.5;       ///< mg/dL lowered per exercise minute
    double glucose_min = 40.0;
    double glucose_max = 400.0;
    double sensitivity_min = 0.3;
    double sensitivity_max = 1.5;

    Duration tick() const { return minutes{tick_minutes}; }
    int absorption_ticks() const { return (absorption_minutes + tick_minutes - 1) / tick_minutes; }
    int medication_ticks() const { return (medication_minutes + tick_minutes - 1) / tick_minutes; }

    /// Throws ValidationError unless rates are positive, clamps are ordered
    /// and the tick divides the day.
    void validate() const;
    bool operator==(const PhysiologyParams&) const = default;
};

/// A dose spread evenly over a fixed number of ticks; the last tick takes the
/// remainder so the total is delivered exactly.
struct SpreadDose {
    double remaining = 0.0;
    double per_tick = 0.0;
    int ticks_left = 0;

    double take();
    bool operator==(const SpreadDose&) const = default;
};

struct PatientState {
    Timestamp now{};
    double glucose = 100.0;
    double sensitivity = 1.0;
    std::vector<SpreadDose> pending_carbs;
    std::vector<SpreadDose> pending_medication;
    std::vector<events::Interval> exercise;  ///< sessions not yet finished
    double mood = 0.0;               ///< last mood mark valence
    std::optional<Timestamp> last_meal;
    double carbs_ingested = 0.0;
    double carbs_absorbed = 0.0;
    Rng rng;                         ///< acceptance draws

    bool operator==(const PatientState&) const = default;
};

PatientState initial_patient(Timestamp start, double sensitivity, Rng rng);

/// S_base(R) = clamp(s_base_max - s_base_slope R, sensitivity_min, s_base_max).
double baseline_sensitivity(double risk, const PhysiologyParams& params);

/// Daily pull: S += eta (S_base(R) - S), clamped.
void relax_sensitivity(PatientState& state, double risk, const PhysiologyParams& params);

/// Advances one tick from state.now. `events` are those starting in the tick,
/// time-sorted: food events queue carbs (attr carbs_g), "medication" medical
/// events queue a dose, "exercising" activities register a session, mood
/// events set the mood. Then, in order: carb absorption (k_c g / S), medication,
/// exercise (S gain and acute drop for the minutes overlapping the tick),
/// basal drift and clamping.
void step(PatientState& state, std::span<const events::Event> events, const PhysiologyParams& params);

}  // namespace lifeloop::sim
