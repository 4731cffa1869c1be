#pragma once

// Allen relations straight from the endpoint definitions. Each relation is a
// predicate; for zero-length intervals several may hold and the documented
// precedence order picks one.

#include <array>
#include <vector>

#include "lifeloop/events/interval.hpp"

namespace lifeloop::oracle {

using events::AllenRelation;
using events::Interval;

inline bool holds(AllenRelation r, const Interval& a, const Interval& b) {
    switch (r) {
        case AllenRelation::before: return a.end < b.start;
        case AllenRelation::meets: return a.end == b.start;
        case AllenRelation::overlaps: return a.start < b.start && b.start < a.end && a.end < b.end;
        case AllenRelation::starts: return a.start == b.start && a.end < b.end;
        case AllenRelation::during: return b.start < a.start && a.end < b.end;
        case AllenRelation::finishes: return b.start < a.start && a.end == b.end;
        case AllenRelation::equals: return a.start == b.start && a.end == b.end;
        case AllenRelation::after: return holds(AllenRelation::before, b, a);
        case AllenRelation::met_by: return holds(AllenRelation::meets, b, a);
        case AllenRelation::overlapped_by: return holds(AllenRelation::overlaps, b, a);
        case AllenRelation::started_by: return holds(AllenRelation::starts, b, a);
        case AllenRelation::contains: return holds(AllenRelation::during, b, a);
        case AllenRelation::finished_by: return holds(AllenRelation::finishes, b, a);
    }
    return false;
}

inline std::vector<AllenRelation> all_holding(const Interval& a, const Interval& b) {
    std::vector<AllenRelation> out;
    for (auto r : events::kAllAllenRelations) {
        if (holds(r, a, b)) out.push_back(r);
    }
    return out;
}

inline constexpr std::array<AllenRelation, 13> kPrecedence = {
    AllenRelation::equals,   AllenRelation::starts,   AllenRelation::started_by,    AllenRelation::finishes,
    AllenRelation::finished_by, AllenRelation::before, AllenRelation::after,        AllenRelation::meets,
    AllenRelation::met_by,   AllenRelation::during,   AllenRelation::contains,      AllenRelation::overlaps,
    AllenRelation::overlapped_by,
};

inline AllenRelation classify(const Interval& a, const Interval& b) {
    for (auto r : kPrecedence) {
        if (holds(r, a, b)) return r;
    }
    return AllenRelation::equals;  // unreachable for well-formed input
}

}  // namespace lifeloop::oracle
