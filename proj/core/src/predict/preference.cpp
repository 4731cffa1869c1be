#include "lifeloop/predict/preference.hpp"

#include <algorithm>

namespace lifeloop::predict {
namespace {

constexpr Duration kAttachRadius = minutes{30};

double mapped(int valence) { return valence < 0 ? 0.0 : (valence > 0 ? 1.0 : 0.5); }

bool attachable(const events::Event& e) {
    return e.stream == events::StreamKind::activity || e.stream == events::StreamKind::food ||
           e.stream == events::StreamKind::medical;
}

Duration distance(const events::Event& e, Timestamp t) {
    if (t < e.start) return e.start - t;
    if (t > e.end_or_start()) return t - e.end_or_start();
    return Duration::zero();
}

struct Tally {
    double sum = 0.0;
    std::size_t n = 0;
};

std::map<std::string, Tally, std::less<>> tally_marks(const events::Personicle& p,
                                                      std::span<const ingest::MoodMark> marks) {
    std::map<std::string, Tally, std::less<>> out;
    for (const auto& m : marks) {
        const auto idx = attach_mark(p, m);
        if (!idx) continue;
        auto& t = out[preference_item(p[*idx])];
        t.sum += mapped(m.valence);
        ++t.n;
    }
    return out;
}

}  // namespace

double PreferenceModel::score(std::string_view item) const {
    const auto it = scores.find(item);
    return it == scores.end() ? 0.5 : it->second;
}

std::string preference_item(const events::Event& e) {
    if (e.stream == events::StreamKind::food) {
        if (auto dish = e.text("dish_id"); dish && !dish->empty()) return *dish;
    }
    return e.category;
}

std::optional<std::size_t> attach_mark(const events::Personicle& p, const ingest::MoodMark& mark) {
    if (mark.event_id) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i].id == *mark.event_id) return i;
        }
    }
    std::optional<std::size_t> best;
    Duration best_d = kAttachRadius;
    // Events starting after mark + radius cannot be within range; stop there.
    const auto ev = p.events();
    for (std::size_t i = 0; i < ev.size() && ev[i].start <= mark.at + kAttachRadius; ++i) {
        if (!attachable(ev[i])) continue;
        const auto d = distance(ev[i], mark.at);
        if (d < best_d || (d == best_d && !best)) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

PreferenceModel preference_scores(const events::Personicle& p, std::span<const ingest::MoodMark> marks,
                                  double prior_strength) {
    PreferenceModel model;
    model.prior_strength = prior_strength;
    for (const auto& [item, t] : tally_marks(p, marks)) {
        model.scores.emplace(item, (t.sum + prior_strength * 0.5) / (static_cast<double>(t.n) + prior_strength));
    }
    return model;
}

std::set<std::string, std::less<>> habitual_items(const events::Personicle& p,
                                                  std::span<const ingest::MoodMark> marks, std::size_t min_count) {
    std::map<std::string, std::size_t, std::less<>> occurrences;
    for (const auto& e : p.events()) {
        if (e.stream == events::StreamKind::food || e.stream == events::StreamKind::activity) {
            ++occurrences[preference_item(e)];
        }
    }
    const auto tallies = tally_marks(p, marks);
    std::set<std::string, std::less<>> out;
    for (const auto& [item, count] : occurrences) {
        if (count < min_count) continue;
        const auto it = tallies.find(item);
        if (it != tallies.end() && it->second.sum / static_cast<double>(it->second.n) <= 0.5) out.insert(item);
    }
    return out;
}

bool mood_shift_alert(std::span<const ingest::MoodMark> marks, Timestamp now) {
    const Duration window = hours{6};
    double recent_sum = 0.0, prior_sum = 0.0;
    std::size_t recent_n = 0, prior_n = 0;
    for (const auto& m : marks) {
        if (m.at >= now - window && m.at < now) {
            recent_sum += m.valence;
            ++recent_n;
            continue;
        }
        for (int d = 1; d <= 7; ++d) {
            const Timestamp end = now - hours{24 * d};
            if (m.at >= end - window && m.at < end) {
                prior_sum += m.valence;
                ++prior_n;
                break;
            }
        }
    }
    if (recent_n == 0 || prior_n == 0) return false;
    const double drop = prior_sum / static_cast<double>(prior_n) - recent_sum / static_cast<double>(recent_n);
    return drop >= 1.5;
}

}  // namespace lifeloop::predict
