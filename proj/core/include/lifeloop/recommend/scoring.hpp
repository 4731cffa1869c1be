#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/ingest/catalogs.hpp"
#include "lifeloop/predict/cascade.hpp"
#include "lifeloop/predict/preference.hpp"

namespace lifeloop::recommend {

/// Health need signalled after exercise; raises the per-meal carb ceiling.
inline constexpr std::string_view kGlycogenNeed = "glycogen_replenishment";

/// Situation at a decision point.
struct Context {
    Timestamp now{};
    double travel_budget_minutes = 0.0;
    bool natural_trigger = false;  ///< hunger: at least 4 h since the last food event
    std::map<std::string, double, std::less<>> needs;

    /// Throws ValidationError on a negative travel budget.
    void validate() const;
};

/// Hunger flag: true when there was no meal yet or the last one was >= 4 h ago.
bool hunger_trigger(Timestamp now, std::optional<Timestamp> last_food);

/// Fogg behaviour-model knobs.
struct BehaviorModelParams {
    double lambda = 0.5;            ///< health vs preference weight in utility
    double a_min = 0.1;             ///< feasibility floor on ability
    double w_preference = 1.0;      ///< motivation weights, nonnegative, sum 1
    double w_goal = 0.0;
    double w_social = 0.0;          ///< no social-graph input; always multiplies 0
    double trigger_bonus = 1.0;     ///< acceptance boost when a synthetic trigger meets a natural one
    std::size_t top_n = 5;
    double preference_floor = 0.2;  ///< never push items the person clearly dislikes

    /// Throws ValidationError when a field is out of range.
    void validate() const;
    bool operator==(const BehaviorModelParams&) const = default;
};

struct ScoredCandidate {
    std::string item;   ///< dish id or activity
    std::string venue;
    ingest::FoodAttrs food;
    double health = 0.0;      ///< h in [-1, 1]
    double preference = 0.5;  ///< p in [0, 1]
    double ability = 0.0;     ///< a in [0, 1]
    bool habitual = false;
    double utility = 0.0;     ///< lambda h + (1 - lambda) p

    /// Motivation from the weighted preference / goal / social factors.
    double motivation(const BehaviorModelParams& params) const;
};

/// 0 when the venue is closed or out of reach within the budget, otherwise
/// 1 - travel / budget. A zero budget admits only zero-travel items (ability 1).
double ability(const ingest::CatalogItem& item, const Context& ctx);

/// Health impact of a dish against the resolved per-meal targets, in [-1, 1].
///
/// Each nutrient contributes its relative deviation outside its target band
/// (carbs: both sides; sugar, fat, kcal: above the ceiling; protein: below the
/// floor). D is the weighted mean deviation and h = (scale - D) / (scale + D),
/// so a dish on every target scores 1 and h tends to -1 as D grows. The
/// glycogen need multiplies the carb ceiling by (1 + boost * need weight).
double health_impact(const ingest::FoodAttrs& food, const std::map<std::string, double, std::less<>>& needs,
                     const predict::ParameterMap& targets);

/// Sorts by utility descending, ties by (item, venue), and keeps the first `top_n`.
std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> candidates, std::size_t top_n);

struct Ranking {
    std::vector<ScoredCandidate> candidates;
    bool no_feasible_options = false;
};

/// Scores every catalog item, keeps those with ability >= a_min and ranks them.
Ranking score_candidates(const ingest::ResourceCatalog& catalog, const Context& ctx,
                         const predict::PreferenceModel& prefs, const BehaviorModelParams& params,
                         const predict::ParameterMap& targets,
                         const std::set<std::string, std::less<>>& habitual = {});

/// Highest-ranked candidate whose preference clears the preference floor.
const ScoredCandidate* select_for_dispatch(const Ranking& ranking, const BehaviorModelParams& params);

}  // namespace lifeloop::recommend
