#pragma once

// Brute-force co-occurrence and compound-event enumeration.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "allen_oracle.hpp"
#include "lifeloop/events/operators.hpp"

namespace lifeloop::oracle {

struct CoOccurrenceCount {
    std::size_t count = 0;
    double lift = 0.0;
};

inline CoOccurrenceCount co_occurrence(const events::Personicle& p, const std::string& a, const std::string& b,
                                       Duration window) {
    const std::size_t n = p.size();
    std::size_t count = 0, na = 0, nb = 0, in_window = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i].category == a) ++na;
        if (p[i].category == b) ++nb;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto gap = p[j].start - p[i].start;
            if (gap < Duration::zero() || gap > window) continue;
            ++in_window;
            if (p[i].category == a && p[j].category == b) ++count;
        }
    }
    CoOccurrenceCount out{count, 0.0};
    if (n < 2 || na == 0 || nb == 0 || in_window == 0) return out;
    const double w_frac = static_cast<double>(in_window) / (static_cast<double>(n) * static_cast<double>(n - 1));
    out.lift = static_cast<double>(count) * static_cast<double>(n) /
               (static_cast<double>(na) * static_cast<double>(nb) * w_frac);
    return out;
}

/// Accepted part tuples, as personicle indices, in acceptance order.
inline std::vector<std::vector<std::size_t>> compound_tuples(const events::Personicle& p,
                                                             const events::CompoundEventDef& def) {
    const std::size_t k = def.parts.size();
    std::vector<std::vector<std::size_t>> accepted;
    std::set<std::size_t> used;
    std::vector<std::size_t> tuple(k);

    const auto valid = [&] {
        for (std::size_t x = 0; x < k; ++x) {
            if (!def.parts[x].matches(p[tuple[x]])) return false;
            for (std::size_t y = 0; y < x; ++y) {
                if (tuple[x] == tuple[y]) return false;
            }
        }
        if (const auto* w = std::get_if<events::WithinWindow>(&def.relation)) {
            for (std::size_t x = 1; x < k; ++x) {
                if (tuple[x] <= tuple[x - 1]) return false;
            }
            return p[tuple[k - 1]].start - p[tuple[0]].start <= w->window;
        }
        const auto rel = std::get<events::AllenRelation>(def.relation);
        for (std::size_t x = 1; x < k; ++x) {
            if (classify(events::Interval::of(p[tuple[x - 1]]), events::Interval::of(p[tuple[x]])) != rel) return false;
        }
        return true;
    };

    // Odometer over all index tuples, which visits them in lexicographic order.
    std::function<void(std::size_t)> visit = [&](std::size_t depth) {
        if (depth == k) {
            for (auto i : tuple) {
                if (used.contains(i)) return;
            }
            if (!valid()) return;
            accepted.push_back(tuple);
            used.insert(tuple.begin(), tuple.end());
            return;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!def.parts[depth].matches(p[i]) || used.contains(i)) continue;  // pruning only; rechecked below
            tuple[depth] = i;
            visit(depth + 1);
        }
    };
    if (!p.empty()) visit(0);
    return accepted;
}

}  // namespace lifeloop::oracle
