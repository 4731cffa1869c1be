#include "lifeloop/sim/acceptance.hpp"

#include <cmath>

#include "lifeloop/error.hpp"

namespace lifeloop::sim {

void AcceptanceCoefficients::validate() const {
    if (!std::isfinite(motivation) || !std::isfinite(ability) || !std::isfinite(offset)) {
        throw ValidationError("acceptance coefficients must be finite");
    }
    if (motivation < 0 || ability < 0) throw ValidationError("acceptance motivation/ability coefficients must be >= 0");
}

double acceptance_probability(const recommend::ScoredCandidate& c, bool synergy,
                              const recommend::BehaviorModelParams& params, const AcceptanceCoefficients& coef) {
    if (c.ability <= 0.0) return 0.0;
    const double logit = coef.motivation * c.motivation(params) + coef.ability * c.ability +
                         params.trigger_bonus * (synergy ? 1.0 : 0.0) - coef.offset;
    return 1.0 / (1.0 + std::exp(-logit));
}

Decision decide(const recommend::Trigger& trigger, const recommend::ScoredCandidate& scored, PatientState& state,
                const recommend::BehaviorModelParams& params, const AcceptanceCoefficients& coef,
                events::Event suggested, events::Event fallback) {
    Decision d;
    d.probability = acceptance_probability(scored, trigger.synergy, params, coef);
    const double u = uniform01(state.rng);
    d.accepted = u < d.probability;
    d.outcome = d.accepted ? std::move(suggested) : std::move(fallback);
    return d;
}

}  // namespace lifeloop::sim
