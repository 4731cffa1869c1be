#include "lifeloop/events/personicle.hpp"

#include <algorithm>

#include "lifeloop/error.hpp"

namespace lifeloop::events {

std::optional<Interval> Personicle::span() const {
    if (events_.empty()) return std::nullopt;
    Timestamp last = events_.front().end_or_start();
    for (const auto& e : events_) last = std::max(last, e.end_or_start());
    return Interval{events_.front().start, last};
}

std::span<const Event> Personicle::starting_in(Timestamp t0, Timestamp t1) const {
    const auto lo = std::lower_bound(events_.begin(), events_.end(), t0,
                                     [](const Event& e, Timestamp t) { return e.start < t; });
    const auto hi =
        std::lower_bound(lo, events_.end(), t1, [](const Event& e, Timestamp t) { return e.start < t; });
    return {lo, hi};
}

Personicle merge_streams(std::span<const std::vector<Event>> streams) {
    Personicle out;
    std::size_t total = 0;
    for (const auto& s : streams) total += s.size();
    out.events_.reserve(total);

    for (const auto& stream : streams) {
        for (const auto& e : stream) {
            validate(e);
            if (out.events_.empty()) {
                out.subject_ = e.subject;
            } else if (e.subject != out.subject_) {
                throw ValidationError("mixed subjects in personicle: '" + out.subject_ + "' and '" + e.subject +
                                      "'");
            }
            out.events_.push_back(e);
        }
    }
    std::stable_sort(out.events_.begin(), out.events_.end(), chronological_less);
    return out;
}

}  // namespace lifeloop::events
