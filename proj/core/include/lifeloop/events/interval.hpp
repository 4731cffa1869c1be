#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "lifeloop/events/event.hpp"

namespace lifeloop::events {

/// Closed interval [start, end]; a point event is the zero-length interval [t, t].
struct Interval {
    Timestamp start{};
    Timestamp end{};

    static Interval of(const Event& e) { return {e.start, e.end_or_start()}; }
    bool well_formed() const { return end >= start; }
    Duration length() const { return end - start; }

    bool operator==(const Interval&) const = default;
};

/// Allen's thirteen interval relations: seven base relations and six inverses
/// (equals is its own inverse).
enum class AllenRelation : std::uint8_t {
    before,
    meets,
    overlaps,
    starts,
    during,
    finishes,
    equals,
    after,
    met_by,
    overlapped_by,
    started_by,
    contains,
    finished_by,
};

inline constexpr std::array<AllenRelation, 13> kAllAllenRelations = {
    AllenRelation::before,   AllenRelation::meets,         AllenRelation::overlaps,   AllenRelation::starts,
    AllenRelation::during,   AllenRelation::finishes,      AllenRelation::equals,     AllenRelation::after,
    AllenRelation::met_by,   AllenRelation::overlapped_by, AllenRelation::started_by, AllenRelation::contains,
    AllenRelation::finished_by,
};

AllenRelation inverse(AllenRelation r);
std::string_view to_string(AllenRelation r);
std::optional<AllenRelation> parse_allen_relation(std::string_view text);

/// Returns the unique relation of `a` to `b`.
///
/// Zero-length intervals make several endpoint definitions hold at once
/// (a point at the start of `b` both meets and starts it). Ties resolve by
/// precedence: equals, starts/started_by, finishes/finished_by,
/// before/after, meets/met_by, during/contains, overlaps/overlapped_by.
/// Each rung is closed under swapping the arguments, so
/// classify(b, a) == inverse(classify(a, b)) always holds.
///
/// Throws ValidationError if either interval has end < start.
AllenRelation classify_interval_relation(const Interval& a, const Interval& b);

}  // namespace lifeloop::events
