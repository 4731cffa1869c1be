#include "lifeloop/recommend/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "lifeloop/error.hpp"

namespace lifeloop::recommend {
namespace {

double above(double value, double ceiling) { return ceiling > 0 ? std::max(0.0, value - ceiling) / ceiling : 0.0; }
double below(double value, double floor) { return floor > 0 ? std::max(0.0, floor - value) / floor : 0.0; }

}  // namespace

void Context::validate() const {
    if (!(travel_budget_minutes >= 0.0)) throw ValidationError("travel budget must be >= 0");
}

bool hunger_trigger(Timestamp now, std::optional<Timestamp> last_food) {
    return !last_food || now - *last_food >= hours{4};
}

void BehaviorModelParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in [0, 1]");
    if (!(a_min >= 0.0 && a_min <= 1.0)) throw ValidationError("a_min must lie in [0, 1]");
    if (w_preference < 0 || w_goal < 0 || w_social < 0) throw ValidationError("motivation weights must be >= 0");
    if (std::abs(w_preference + w_goal + w_social - 1.0) > 1e-9) {
        throw ValidationError("motivation weights must sum to 1");
    }
    if (trigger_bonus < 0) throw ValidationError("trigger bonus must be >= 0");
    if (top_n == 0) throw ValidationError("top_n must be positive");
    if (!(preference_floor >= 0.0 && preference_floor <= 1.0)) {
        throw ValidationError("preference floor must lie in [0, 1]");
    }
}

double ScoredCandidate::motivation(const BehaviorModelParams& params) const {
    return params.w_preference * preference + params.w_goal * (habitual ? 1.0 : 0.0);
}

double ability(const ingest::CatalogItem& item, const Context& ctx) {
    if (!item.open.contains(ctx.now)) return 0.0;
    if (item.travel_minutes > ctx.travel_budget_minutes) return 0.0;
    if (ctx.travel_budget_minutes <= 0.0) return 1.0;
    return 1.0 - item.travel_minutes / ctx.travel_budget_minutes;
}

double health_impact(const ingest::FoodAttrs& food, const std::map<std::string, double, std::less<>>& needs,
                     const predict::ParameterMap& targets) {
    using predict::require;
    double need = 0.0;
    if (const auto it = needs.find(kGlycogenNeed); it != needs.end()) need = std::max(0.0, it->second);
    const double carb_ceiling = require(targets, "meal_carbs_high") * (1.0 + require(targets, "glycogen_carb_boost") * need);

    const double w_carbs = require(targets, "impact_w_carbs");
    const double w_sugar = require(targets, "impact_w_sugar");
    const double w_fat = require(targets, "impact_w_fat");
    const double w_protein = require(targets, "impact_w_protein");
    const double w_kcal = require(targets, "impact_w_kcal");
    const double w_total = w_carbs + w_sugar + w_fat + w_protein + w_kcal;
    if (!(w_total > 0)) throw ValidationError("health-impact weights must have a positive sum");

    const double d = (w_carbs * (below(food.carbs_g, require(targets, "meal_carbs_low")) + above(food.carbs_g, carb_ceiling)) +
                      w_sugar * above(food.sugar_g, require(targets, "meal_sugar_max")) +
                      w_fat * above(food.fat_g, require(targets, "meal_fat_max")) +
                      w_protein * below(food.protein_g, require(targets, "meal_protein_low")) +
                      w_kcal * above(food.kcal, require(targets, "meal_kcal_max"))) /
                     w_total;
    const double scale = require(targets, "impact_scale");
    return (scale - d) / (scale + d);
}

std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> candidates, std::size_t top_n) {
    std::sort(candidates.begin(), candidates.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.utility != b.utility) return a.utility > b.utility;
        return std::tie(a.item, a.venue) < std::tie(b.item, b.venue);
    });
    if (candidates.size() > top_n) candidates.resize(top_n);
    return candidates;
}

Ranking score_candidates(const ingest::ResourceCatalog& catalog, const Context& ctx,
                         const predict::PreferenceModel& prefs, const BehaviorModelParams& params,
                         const predict::ParameterMap& targets, const std::set<std::string, std::less<>>& habitual) {
    ctx.validate();
    params.validate();
    std::vector<ScoredCandidate> feasible;
    for (const auto& item : catalog.items()) {
        const double a = ability(item, ctx);
        if (a < params.a_min || a <= 0.0) continue;
        ScoredCandidate c;
        c.item = item.dish_id;
        c.venue = item.venue_id;
        c.food = item.food;
        c.ability = a;
        c.health = health_impact(item.food, ctx.needs, targets);
        c.preference = prefs.score(item.dish_id);
        c.habitual = habitual.contains(item.dish_id);
        c.utility = params.lambda * c.health + (1.0 - params.lambda) * c.preference;
        feasible.push_back(std::move(c));
    }
    Ranking out;
    out.no_feasible_options = feasible.empty();
    out.candidates = rank_candidates(std::move(feasible), params.top_n);
    return out;
}

const ScoredCandidate* select_for_dispatch(const Ranking& ranking, const BehaviorModelParams& params) {
    for (const auto& c : ranking.candidates) {
        if (c.preference >= params.preference_floor) return &c;
    }
    return nullptr;
}

}  // namespace lifeloop::recommend
