#include "lifeloop/events/operators.hpp"

#include <algorithm>

#include "lifeloop/error.hpp"

namespace lifeloop::events {
namespace {

std::vector<Timestamp> starts_of(const Personicle& p, std::string_view category) {
    std::vector<Timestamp> out;
    for (const auto& e : p.events()) {
        if (e.category == category) out.push_back(e.start);
    }
    return out;
}

/// Number of (i, j) with 0 <= t[j] - t[i] <= window over a sorted sequence,
/// counting i == j.
std::size_t pairs_within(std::span<const Timestamp> from, std::span<const Timestamp> to, Duration window) {
    std::size_t n = 0;
    for (const auto t : from) {
        const auto lo = std::lower_bound(to.begin(), to.end(), t);
        const auto hi = std::upper_bound(lo, to.end(), t + window);
        n += static_cast<std::size_t>(hi - lo);
    }
    return n;
}

class CompoundMatcher {
public:
    CompoundMatcher(const Personicle& p, const CompoundEventDef& def) : p_(p), def_(def), used_(p.size(), false) {
        candidates_.resize(def.parts.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t k = 0; k < def.parts.size(); ++k) {
                if (def.parts[k].matches(p[i])) candidates_[k].push_back(i);
            }
        }
        if (const auto* w = std::get_if<WithinWindow>(&def.relation)) window_ = w->window;
    }

    std::vector<std::vector<std::size_t>> run() {
        std::vector<std::vector<std::size_t>> matches;
        std::vector<std::size_t> chosen;
        for (const std::size_t anchor : candidates_[0]) {
            if (used_[anchor]) continue;
            chosen.assign(1, anchor);
            if (extend(chosen)) {
                for (const auto i : chosen) used_[i] = true;
                matches.push_back(chosen);
            }
        }
        return matches;
    }

private:
    // Depth-first search in increasing index order, so the first complete
    // tuple found is the lexicographically smallest one for this anchor.
    bool extend(std::vector<std::size_t>& chosen) {
        const std::size_t part = chosen.size();
        if (part == def_.parts.size()) return true;
        const auto& cands = candidates_[part];
        const std::size_t prev = chosen.back();

        auto it = cands.begin();
        if (window_) it = std::upper_bound(cands.begin(), cands.end(), prev);

        for (; it != cands.end(); ++it) {
            const std::size_t j = *it;
            if (used_[j] || std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
            if (window_) {
                if (p_[j].start - p_[chosen.front()].start > *window_) break;
            } else {
                const auto rel = std::get<AllenRelation>(def_.relation);
                if (classify_interval_relation(Interval::of(p_[prev]), Interval::of(p_[j])) != rel) continue;
            }
            chosen.push_back(j);
            if (extend(chosen)) return true;
            chosen.pop_back();
        }
        return false;
    }

    const Personicle& p_;
    const CompoundEventDef& def_;
    std::vector<bool> used_;
    std::vector<std::vector<std::size_t>> candidates_;
    std::optional<Duration> window_;
};

}  // namespace

CoOccurrence co_occurrence(const Personicle& p, std::string_view cat_a, std::string_view cat_b, Duration window) {
    if (window <= Duration::zero()) throw ValidationError("co_occurrence window must be positive");

    const auto a = starts_of(p, cat_a);
    const auto b = starts_of(p, cat_b);
    CoOccurrence out;
    if (a.empty() || b.empty()) return out;

    out.count = pairs_within(a, b, window);
    if (cat_a == cat_b) out.count -= a.size();  // drop self-pairs

    const std::size_t n = p.size();
    std::vector<Timestamp> all;
    all.reserve(n);
    for (const auto& e : p.events()) all.push_back(e.start);
    const std::size_t total_pairs = n * (n - 1);
    const std::size_t in_window = pairs_within(all, all, window) - n;
    if (total_pairs == 0 || in_window == 0 || out.count == 0) return out;

    const double w_frac = static_cast<double>(in_window) / static_cast<double>(total_pairs);
    out.lift = static_cast<double>(out.count) * static_cast<double>(n) /
               (static_cast<double>(a.size()) * static_cast<double>(b.size()) * w_frac);
    return out;
}

void CompoundEventDef::validate() const {
    if (name.empty()) throw ValidationError("compound event definition needs a name");
    if (parts.size() < 2) throw ValidationError("compound event '" + name + "' needs at least two parts");
    if (const auto* w = std::get_if<WithinWindow>(&relation); w && w->window <= Duration::zero()) {
        throw ValidationError("compound event '" + name + "' window must be positive");
    }
}

std::vector<Event> detect_compound_events(const Personicle& p, const CompoundEventDef& def) {
    def.validate();
    std::vector<Event> out;
    if (p.empty()) return out;

    const auto matches = CompoundMatcher(p, def).run();
    out.reserve(matches.size());
    for (std::size_t m = 0; m < matches.size(); ++m) {
        const auto& idx = matches[m];
        Event e;
        e.id = def.name + "#" + std::to_string(m);
        e.stream = p[idx.front()].stream;
        e.category = def.name;
        e.subject = p.subject();
        e.start = p[idx.front()].start;
        Timestamp last = p[idx.front()].end_or_start();
        std::string parts;
        for (const auto i : idx) {
            e.start = std::min(e.start, p[i].start);
            last = std::max(last, p[i].end_or_start());
            if (!parts.empty()) parts += ',';
            parts += p[i].id;
        }
        if (last > e.start) e.end = last;
        e.attrs.emplace("parts", parts);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace lifeloop::events
