#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lifeloop/recommend/scoring.hpp"

namespace lifeloop::recommend {

/// Hysteresis and rate-limit state of the alert channel.
struct DispatchState {
    std::optional<Timestamp> last_alert;
    bool armed = true;
    double theta_high = 14.0;
    double theta_low = 8.0;
    Duration min_gap{hours{72}};

    /// Throws ValidationError unless theta_high > theta_low >= 0 and min_gap > 0.
    void validate() const;
    bool operator==(const DispatchState&) const = default;
};

struct DispatchDecision {
    bool dispatch = false;
    DispatchState state;
};

/// Alerts iff armed, risk > theta_high and no alert within min_gap before
/// `now`. A dispatch disarms the channel; it re-arms only once risk falls
/// below theta_low.
DispatchDecision should_dispatch(const DispatchState& state, double risk, Timestamp now);

enum class TriggerKind { recommendation, alert };
std::string_view to_string(TriggerKind kind);

/// A synthetic trigger: the control signal sent to the person.
struct Trigger {
    Timestamp at{};
    std::string subject;
    TriggerKind kind = TriggerKind::recommendation;
    ScoredCandidate candidate;
    std::string reason;
    bool synergy = false;  ///< coincides with a natural trigger
};

Trigger build_trigger(const ScoredCandidate& top, const Context& ctx, std::string subject,
                      TriggerKind kind = TriggerKind::recommendation);

/// One JSON line: timestamp, subject, kind, item, venue, scores, synergy, reason.
std::string audit_record(const Trigger& t);

}  // namespace lifeloop::recommend
