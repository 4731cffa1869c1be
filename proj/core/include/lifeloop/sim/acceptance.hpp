#pragma once

#include "lifeloop/events/event.hpp"
#include "lifeloop/recommend/dispatch.hpp"
#include "lifeloop/sim/physiology.hpp"

namespace lifeloop::sim {

/// Logit coefficients of the acceptance model. The trigger coefficient is
/// BehaviorModelParams::trigger_bonus.
struct AcceptanceCoefficients {
    double motivation = 3.0;  ///< gamma_m
    double ability = 2.0;     ///< gamma_a
    double offset = 2.5;      ///< gamma_0

    void validate() const;
    bool operator==(const AcceptanceCoefficients&) const = default;
};

/// logistic(gamma_m m + gamma_a a + gamma_t synergy - gamma_0); 0 when a = 0.
double acceptance_probability(const recommend::ScoredCandidate& c, bool synergy,
                              const recommend::BehaviorModelParams& params, const AcceptanceCoefficients& coef);

struct Decision {
    bool accepted = false;
    double probability = 0.0;
    events::Event outcome;  ///< the suggested event on accept, the default one otherwise
};

/// Draws exactly one uniform from the patient's RNG and compares it with the
/// acceptance probability.
Decision decide(const recommend::Trigger& trigger, const recommend::ScoredCandidate& scored, PatientState& state,
                const recommend::BehaviorModelParams& params, const AcceptanceCoefficients& coef,
                events::Event suggested, events::Event fallback);

}  // namespace lifeloop::sim
