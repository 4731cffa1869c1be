#include "lifeloop/events/interval.hpp"

#include <array>

#include "lifeloop/error.hpp"

namespace lifeloop::events {
namespace {

constexpr std::array<std::string_view, 13> kNames = {
    "before", "meets",  "overlaps",      "starts",     "during",   "finishes",    "equals",
    "after",  "met_by", "overlapped_by", "started_by", "contains", "finished_by",
};

int sign(Duration d) { return (d.count() > 0) - (d.count() < 0); }

}  // namespace

AllenRelation inverse(AllenRelation r) {
    switch (r) {
        case AllenRelation::before: return AllenRelation::after;
        case AllenRelation::meets: return AllenRelation::met_by;
        case AllenRelation::overlaps: return AllenRelation::overlapped_by;
        case AllenRelation::starts: return AllenRelation::started_by;
        case AllenRelation::during: return AllenRelation::contains;
        case AllenRelation::finishes: return AllenRelation::finished_by;
        case AllenRelation::equals: return AllenRelation::equals;
        case AllenRelation::after: return AllenRelation::before;
        case AllenRelation::met_by: return AllenRelation::meets;
        case AllenRelation::overlapped_by: return AllenRelation::overlaps;
        case AllenRelation::started_by: return AllenRelation::starts;
        case AllenRelation::contains: return AllenRelation::during;
        case AllenRelation::finished_by: return AllenRelation::finishes;
    }
    return r;
}

std::string_view to_string(AllenRelation r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<AllenRelation> parse_allen_relation(std::string_view text) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == text) return static_cast<AllenRelation>(i);
    }
    return std::nullopt;
}

AllenRelation classify_interval_relation(const Interval& a, const Interval& b) {
    if (!a.well_formed() || !b.well_formed()) throw ValidationError("malformed interval: end precedes start");

    const int ss = sign(a.start - b.start);
    const int ee = sign(a.end - b.end);
    const int es = sign(a.end - b.start);
    const int se = sign(a.start - b.end);

    if (ss == 0 && ee == 0) return AllenRelation::equals;
    if (ss == 0) return ee < 0 ? AllenRelation::starts : AllenRelation::started_by;
    if (ee == 0) return ss > 0 ? AllenRelation::finishes : AllenRelation::finished_by;
    if (es < 0) return AllenRelation::before;
    if (se > 0) return AllenRelation::after;
    if (es == 0) return AllenRelation::meets;
    if (se == 0) return AllenRelation::met_by;
    if (ss > 0 && ee < 0) return AllenRelation::during;
    if (ss < 0 && ee > 0) return AllenRelation::contains;
    return ss < 0 ? AllenRelation::overlaps : AllenRelation::overlapped_by;
}

}  // namespace lifeloop::events
