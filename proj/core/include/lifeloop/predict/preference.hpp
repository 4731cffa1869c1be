#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "lifeloop/events/personicle.hpp"
#include "lifeloop/ingest/records.hpp"

namespace lifeloop::predict {

/// Learned liking for items (dish ids or activity categories), each in [0, 1].
struct PreferenceModel {
    std::map<std::string, double, std::less<>> scores;
    double prior_strength = 2.0;

    /// 0.5 for items never marked.
    double score(std::string_view item) const;
};

/// Item key of an event for preference purposes: the dish id for food with one,
/// otherwise the category.
std::string preference_item(const events::Event& e);

/// Resolves which event a mark refers to: the linked id when it is in the
/// personicle, otherwise the nearest activity/food/medical event within 30
/// minutes (earliest on ties). nullopt when nothing qualifies.
std::optional<std::size_t> attach_mark(const events::Personicle& p, const ingest::MoodMark& mark);

/// score(item) = (sum of mapped valences + s * 0.5) / (n + s) with valence
/// mapped {-1 -> 0, 0 -> 0.5, +1 -> 1}; marks that attach to nothing are dropped.
PreferenceModel preference_scores(const events::Personicle& p, std::span<const ingest::MoodMark> marks,
                                  double prior_strength = 2.0);

/// Items repeated at least `min_count` times whose attached marks are, on
/// average, no better than neutral: behaviour sustained by goals or habit
/// rather than enjoyment.
std::set<std::string, std::less<>> habitual_items(const events::Personicle& p,
                                                  std::span<const ingest::MoodMark> marks,
                                                  std::size_t min_count = 3);

/// True iff the mean valence of marks in [now - 6h, now) is at least 1.5
/// below the mean over the same clock hours on each of the prior 7 days.
/// False when either window has no marks.
bool mood_shift_alert(std::span<const ingest::MoodMark> marks, Timestamp now);

}  // namespace lifeloop::predict
