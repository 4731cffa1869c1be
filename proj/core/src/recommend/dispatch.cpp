#include "lifeloop/recommend/dispatch.hpp"

#include <json.hpp>

#include "lifeloop/error.hpp"

namespace lifeloop::recommend {

void DispatchState::validate() const {
    if (!(theta_low >= 0.0)) throw ValidationError("theta_low must be >= 0");
    if (!(theta_high > theta_low)) throw ValidationError("theta_high must exceed theta_low");
    if (min_gap <= Duration::zero()) throw ValidationError("alert gap must be positive");
}

DispatchDecision should_dispatch(const DispatchState& state, double risk, Timestamp now) {
    DispatchDecision out{false, state};
    if (risk < state.theta_low) out.state.armed = true;
    const bool gap_ok = !state.last_alert || now - *state.last_alert >= state.min_gap;
    if (out.state.armed && risk > state.theta_high && gap_ok) {
        out.dispatch = true;
        out.state.armed = false;
        out.state.last_alert = now;
    }
    return out;
}

std::string_view to_string(TriggerKind kind) {
    return kind == TriggerKind::alert ? "alert" : "recommendation";
}

Trigger build_trigger(const ScoredCandidate& top, const Context& ctx, std::string subject, TriggerKind kind) {
    Trigger t;
    t.at = ctx.now;
    t.subject = std::move(subject);
    t.kind = kind;
    t.candidate = top;
    t.synergy = ctx.natural_trigger;
    if (kind == TriggerKind::alert) {
        t.reason = "risk above threshold; suggested " + top.item;
    } else {
        t.reason = top.item + " at " + top.venue + (t.synergy ? " (hungry)" : "");
    }
    return t;
}

std::string audit_record(const Trigger& t) {
    nlohmann::ordered_json j;
    j["timestamp"] = format_timestamp(t.at);
    j["subject"] = t.subject;
    j["kind"] = to_string(t.kind);
    j["item"] = t.candidate.item;
    j["venue"] = t.candidate.venue;
    j["health"] = t.candidate.health;
    j["preference"] = t.candidate.preference;
    j["ability"] = t.candidate.ability;
    j["utility"] = t.candidate.utility;
    j["habitual"] = t.candidate.habitual;
    j["synergy"] = t.synergy;
    j["reason"] = t.reason;
    return j.dump();
}

}  // namespace lifeloop::recommend
