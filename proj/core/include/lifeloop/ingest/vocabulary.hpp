#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace lifeloop::ingest {

/// The semantic activity labels recognised on the activity stream. Sixteen
/// named activities plus a catch-all "other".
inline constexpr std::array<std::string_view, 17> kActivityVocabulary = {
    "socializing", "relaxing",  "prayer",       "eating",  "exercising",     "watching_tv",
    "preparing_food", "sleeping", "housework",  "shopping", "conversations", "computer_use",
    "working",     "commuting", "toilet_use",   "hospital_visit", "other",
};

using ActivityVocabulary = std::array<std::string_view, 17>;

inline const ActivityVocabulary& activity_vocabulary() { return kActivityVocabulary; }

/// Row index of a category in the vocabulary.
std::optional<std::size_t> activity_index(std::string_view category);

inline bool is_activity_category(std::string_view category) { return activity_index(category).has_value(); }

}  // namespace lifeloop::ingest
