#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lifeloop/events/interval.hpp"
#include "lifeloop/events/personicle.hpp"

namespace lifeloop::events {

struct CoOccurrence {
    std::size_t count = 0;
    double lift = 0.0;
};

/// Counts ordered pairs (a, b) of distinct events with categories (cat_a, cat_b)
/// and 0 <= b.start - a.start <= window.
///
/// lift = count * N / (n_a * n_b * w_frac), where N is the personicle size and
/// w_frac is the fraction of all ordered pairs of distinct events whose start
/// gap falls in [0, window]. lift is 0 whenever a denominator term is 0.
/// Throws ValidationError if window <= 0.
CoOccurrence co_occurrence(const Personicle& p, std::string_view cat_a, std::string_view cat_b, Duration window);

struct PartSelector {
    StreamKind stream = StreamKind::activity;
    std::string category;

    bool matches(const Event& e) const { return e.stream == stream && e.category == category; }
    bool operator==(const PartSelector&) const = default;
};

/// Parts occur in personicle order and the last part starts within `window`
/// of the first.
struct WithinWindow {
    Duration window{};
    bool operator==(const WithinWindow&) const = default;
};

using CompoundRelation = std::variant<AllenRelation, WithinWindow>;

/// A compound event: consecutive parts must stand in `relation` (an Allen
/// relation between part i and part i+1, or an ordered window sequence).
struct CompoundEventDef {
    std::string name;
    std::vector<PartSelector> parts;
    CompoundRelation relation = WithinWindow{};

    /// Throws ValidationError unless parts.size() >= 2, name is nonempty and
    /// a windowed relation has window > 0.
    void validate() const;
};

/// Detects compound events.
///
/// Candidate part tuples are considered in lexicographic order of their
/// personicle indices; a tuple is accepted when it satisfies the definition
/// and shares no event with an already accepted tuple. Each accepted tuple
/// yields one derived event spanning [min part start, max part end] with
/// category = def.name and attr "parts" listing the part ids.
std::vector<Event> detect_compound_events(const Personicle& p, const CompoundEventDef& def);

}  // namespace lifeloop::events
