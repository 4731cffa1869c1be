#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/events/event.hpp"
#include "lifeloop/events/interval.hpp"

namespace lifeloop::events {

/// A subject's merged, chronologically ordered event timeline.
///
/// Immutable once built; concurrent readers need no synchronisation.
class Personicle {
public:
    Personicle() = default;

    const std::string& subject() const { return subject_; }
    std::span<const Event> events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const Event& operator[](std::size_t i) const { return events_[i]; }

    /// [min start, max end-or-start]; nullopt when empty.
    std::optional<Interval> span() const;

    /// Events whose start lies in [t0, t1).
    std::span<const Event> starting_in(Timestamp t0, Timestamp t1) const;

private:
    friend Personicle merge_streams(std::span<const std::vector<Event>> streams);

    std::string subject_;
    std::vector<Event> events_;
};

/// Merges per-channel streams into one personicle ordered by (start, stream, id).
/// Throws ValidationError on mixed subjects or an invalid event.
Personicle merge_streams(std::span<const std::vector<Event>> streams);

inline Personicle merge_streams(const std::vector<Event>& single) {
    return merge_streams(std::span<const std::vector<Event>>(&single, 1));
}

}  // namespace lifeloop::events
