#include "lifeloop/sim/physiology.hpp"

#include <algorithm>

#include "lifeloop/error.hpp"

namespace lifeloop::sim {

void PhysiologyParams::validate() const {
    if (tick_minutes <= 0 || 1440 % tick_minutes != 0) throw ValidationError("tick_minutes must divide the day");
    if (absorption_minutes <= 0 || medication_minutes <= 0) throw ValidationError("spread windows must be positive");
    if (!(carb_gain > 0 && exercise_gain > 0 && relaxation > 0 && relaxation <= 1 && drift_rate > 0 &&
          drift_rate <= 1 && exercise_acute > 0 && s_base_slope > 0)) {
        throw ValidationError("physiology rates must be positive (relaxation and drift at most 1)");
    }
    if (!(glucose_min > 0 && glucose_min < glucose_max)) throw ValidationError("glucose clamp must be ordered");
    if (!(sensitivity_min > 0 && sensitivity_min < sensitivity_max)) {
        throw ValidationError("sensitivity clamp must be ordered");
    }
    if (!(s_base_max >= sensitivity_min && s_base_max <= sensitivity_max)) {
        throw ValidationError("s_base_max must lie inside the sensitivity clamp");
    }
    if (!(basal_glucose >= glucose_min && basal_glucose <= glucose_max)) {
        throw ValidationError("basal glucose must lie inside the glucose clamp");
    }
}

double SpreadDose::take() {
    if (ticks_left <= 0) return 0.0;
    const double amount = ticks_left == 1 ? remaining : per_tick;
    remaining -= amount;
    --ticks_left;
    return amount;
}

PatientState initial_patient(Timestamp start, double sensitivity, Rng rng) {
    PatientState s;
    s.now = start;
    s.sensitivity = sensitivity;
    s.rng = std::move(rng);
    return s;
}

double baseline_sensitivity(double risk, const PhysiologyParams& p) {
    return std::clamp(p.s_base_max - p.s_base_slope * risk, p.sensitivity_min, p.s_base_max);
}

void relax_sensitivity(PatientState& state, double risk, const PhysiologyParams& p) {
    state.sensitivity += p.relaxation * (baseline_sensitivity(risk, p) - state.sensitivity);
    state.sensitivity = std::clamp(state.sensitivity, p.sensitivity_min, p.sensitivity_max);
}

void step(PatientState& s, std::span<const events::Event> evs, const PhysiologyParams& p) {
    const Timestamp t0 = s.now;
    const Timestamp t1 = t0 + p.tick();

    for (const auto& e : evs) {
        switch (e.stream) {
            case events::StreamKind::food: {
                const double carbs = std::max(0.0, e.number_or("carbs_g", 0.0));
                const int n = p.absorption_ticks();
                s.pending_carbs.push_back({carbs, carbs / n, n});
                s.carbs_ingested += carbs;
                s.last_meal = e.start;
                break;
            }
            case events::StreamKind::medical:
                if (e.category == "medication") {
                    const int n = p.medication_ticks();
                    s.pending_medication.push_back({p.medication_effect, p.medication_effect / n, n});
                }
                break;
            case events::StreamKind::activity:
                if (e.category == "exercising" && !e.is_point()) s.exercise.push_back(events::Interval::of(e));
                break;
            case events::StreamKind::mood:
                s.mood = e.number_or("valence", s.mood);
                break;
            default:
                break;
        }
    }

    for (auto& dose : s.pending_carbs) {
        const double g = dose.take();
        s.carbs_absorbed += g;
        s.glucose += p.carb_gain * g / s.sensitivity;
    }
    std::erase_if(s.pending_carbs, [](const SpreadDose& d) { return d.ticks_left <= 0; });

    for (auto& dose : s.pending_medication) s.glucose += dose.take();
    std::erase_if(s.pending_medication, [](const SpreadDose& d) { return d.ticks_left <= 0; });

    double exercise_minutes = 0.0;
    for (const auto& iv : s.exercise) {
        const auto overlap = std::min(iv.end, t1) - std::max(iv.start, t0);
        if (overlap > Duration::zero()) exercise_minutes += static_cast<double>(overlap.count()) / 60.0;
    }
    std::erase_if(s.exercise, [t1](const events::Interval& iv) { return iv.end <= t1; });
    s.sensitivity += p.exercise_gain * exercise_minutes;
    s.glucose -= p.exercise_acute * exercise_minutes;

    s.glucose += p.drift_rate * (p.basal_glucose - s.glucose);
    s.glucose = std::clamp(s.glucose, p.glucose_min, p.glucose_max);
    s.sensitivity = std::clamp(s.sensitivity, p.sensitivity_min, p.sensitivity_max);
    s.now = t1;
}

}  // namespace lifeloop::sim
