#include "lifeloop/sim/scenario.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "lifeloop/error.hpp"
#include "lifeloop/rng.hpp"

namespace lifeloop::sim {
namespace {

using events::Event;
using events::StreamKind;
using ingest::FoodAttrs;

constexpr std::uint64_t kScheduleStream = 1;

FoodAttrs dish(std::string id, double carbs, double sugar, double fat, double protein, double kcal) {
    FoodAttrs f;
    f.dish_id = std::move(id);
    f.carbs_g = carbs;
    f.sugar_g = sugar;
    f.fat_g = fat;
    f.protein_g = protein;
    f.kcal = kcal;
    return f;
}

const FoodAttrs kOatmeal = dish("oatmeal_berries", 45, 12, 8, 12, 380);
const FoodAttrs kGranola = dish("granola_bar", 25, 12, 7, 4, 190);
const FoodAttrs kBurger = dish("burger_fries_combo", 140, 22, 45, 35, 1250);

const std::array<FoodAttrs, 3> kHomeLunches = {
    dish("turkey_sandwich", 50, 6, 14, 22, 480),
    dish("leftover_pasta", 70, 8, 20, 20, 600),
    dish("takeout_pizza", 95, 12, 38, 32, 1000),
};

const std::array<FoodAttrs, 4> kDinners = {
    dish("salmon_rice", 60, 5, 18, 35, 600),
    dish("pasta_bolognese", 85, 10, 22, 30, 750),
    dish("pepperoni_pizza", 90, 10, 35, 30, 900),
    dish("chicken_stir_fry", 55, 8, 15, 28, 520),
};

const std::array<FoodAttrs, 4> kWeddingMeals = {
    dish("wedding_brunch", 110, 40, 38, 25, 1100),
    dish("reception_lunch", 120, 30, 45, 40, 1300),
    dish("wedding_cake", 85, 60, 32, 6, 800),
    dish("banquet_dinner", 100, 35, 50, 45, 1400),
};

class Builder {
public:
    Builder(Scenario& s, Rng& rng) : s_(s), rng_(rng) {}

    std::string id(int day, std::string_view tag) const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "d%02d-", day);
        return buf + std::string(tag);
    }

    void activity(int day, std::string_view tag, std::string category, Timestamp start, Timestamp end) {
        Event e;
        e.id = id(day, tag);
        e.stream = StreamKind::activity;
        e.category = std::move(category);
        e.start = start;
        e.end = end;
        e.subject = s_.subject;
        s_.schedule.push_back(std::move(e));
    }

    void meal(int day, std::string_view tag, Timestamp at, const FoodAttrs& food, std::string_view category = "meal") {
        s_.schedule.push_back(meal_event(id(day, tag), s_.subject, at, food, category));
        activity(day, std::string(tag) + "-eat", "eating", at, at + minutes{30});
    }

    void medication(int day, Timestamp at) {
        Event e;
        e.id = id(day, "med");
        e.stream = StreamKind::medical;
        e.category = "medication";
        e.start = at;
        e.subject = s_.subject;
        s_.schedule.push_back(std::move(e));
    }

    void mark(int day, std::string_view tag, Timestamp at, int valence) {
        s_.schedule.push_back(ingest::to_event({valence, at, std::nullopt}, id(day, tag), s_.subject));
    }

    int jitter(int lo, int hi) { return static_cast<int>(uniform_int(rng_, lo, hi)); }

    void routine_day(int day, Date date, bool wedding, bool low_mood) {
        const unsigned wd = iso_weekday_index(date);
        const bool weekend = wd >= 5;

        const Timestamp sleep_start = day == 0 ? Timestamp{date} : at_time(date - std::chrono::days{1}, 23, jitter(0, 30));
        const Timestamp wake = weekend ? at_time(date, 8, jitter(0, 60)) : at_time(date, 6, 30 + jitter(0, 20));
        activity(day, "sleep", "sleeping", sleep_start, wake);

        const bool adherent = bernoulli(rng_, 0.85);
        if (wedding) {
            wedding_day(day, date, adherent, wd == 6);
            return;
        }

        const Timestamp breakfast = weekend ? at_time(date, 9, 0) : at_time(date, 7, 20 + jitter(0, 20));
        meal(day, "breakfast", breakfast, kOatmeal);
        if (adherent) medication(day, breakfast + minutes{30});

        if (!weekend) {
            const bool gym = bernoulli(rng_, 0.35);
            const bool snack = bernoulli(rng_, 0.3);
            activity(day, "commute-am", "commuting", at_time(date, 8, 15), at_time(date, 9, 0));
            activity(day, "work-am", "working", at_time(date, 9, 0), gym ? at_time(date, 10, 50) : at_time(date, 12, 0));
            if (gym) activity(day, "gym", "exercising", at_time(date, 11, 0), at_time(date, 11, 45));
            if (snack) s_.schedule.push_back(meal_event(id(day, "snack"), s_.subject, at_time(date, 10, 30), kGranola, "snack"));

            LunchDecision d;
            d.id = id(day, "lunch");
            d.at = at_time(date, 12, 0);
            d.travel_budget_minutes = 20.0;
            d.fallback = meal_event(d.id, s_.subject, at_time(date, 12, 30), kBurger);
            d.mood_noise = uniform(rng_, -0.5, 0.5);
            s_.decisions.push_back(std::move(d));
            activity(day, "lunch-eat", "eating", at_time(date, 12, 30), at_time(date, 13, 0));

            activity(day, "work-pm", "working", at_time(date, 13, 0), at_time(date, 17, 0));
            activity(day, "commute-pm", "commuting", at_time(date, 17, 15), at_time(date, 18, 0));
        } else {
            activity(day, "housework", "housework", at_time(date, 10, 0), at_time(date, 11, 30));
            const auto& lunch = kHomeLunches[static_cast<std::size_t>(jitter(0, kHomeLunches.size() - 1))];
            meal(day, "lunch", at_time(date, 12, 30), lunch);
            if (wd == 5) {
                activity(day, "shopping", "shopping", at_time(date, 14, 0), at_time(date, 16, 0));
                activity(day, "relax", "relaxing", at_time(date, 16, 0), at_time(date, 18, 0));
            } else {
                activity(day, "visit", "socializing", at_time(date, 15, 0), at_time(date, 17, 0));
                activity(day, "relax", "relaxing", at_time(date, 17, 0), at_time(date, 18, 0));
            }
        }

        if (bernoulli(rng_, 0.3)) activity(day, "run", "exercising", at_time(date, 18, 30), at_time(date, 19, 0));
        const auto& dinner = kDinners[static_cast<std::size_t>(jitter(0, kDinners.size() - 1))];
        meal(day, "dinner", at_time(date, 19, 20 + jitter(0, 20)), dinner);
        activity(day, "tv", "watching_tv", at_time(date, 20, 0), at_time(date, 22, jitter(0, 45)));

        if (low_mood) {
            mark(day, "low-1", at_time(date, 9, 40), -1);
            mark(day, "low-2", at_time(date, 11, 40), -1);
            mark(day, "low-3", at_time(date, 14, 40), -1);
            mark(day, "low-4", at_time(date, 16, 40), -1);
        }
        const double u = uniform01(rng_);
        mark(day, "mood", at_time(date, 21, 0), u < 0.1 ? -1 : (u < 0.7 ? 0 : 1));
    }

    /// Saturday: long drive and a rich rehearsal dinner. Sunday: the wedding.
    void wedding_day(int day, Date date, bool adherent, bool ceremony) {
        if (!ceremony) {
            meal(day, "breakfast", at_time(date, 8, 30), kOatmeal);
            if (adherent) medication(day, at_time(date, 9, 0));
            activity(day, "drive", "commuting", at_time(date, 9, 30), at_time(date, 13, 0));
            meal(day, "lunch", at_time(date, 13, 15), kHomeLunches[2]);
            activity(day, "hotel", "relaxing", at_time(date, 14, 0), at_time(date, 18, 0));
            meal(day, "rehearsal", at_time(date, 19, 0), kWeddingMeals[3]);
            meal(day, "dessert", at_time(date, 21, 0), kWeddingMeals[2]);
        } else {
            meal(day, "brunch", at_time(date, 10, 0), kWeddingMeals[0]);
            if (adherent) medication(day, at_time(date, 10, 30));
            activity(day, "ceremony", "socializing", at_time(date, 11, 0), at_time(date, 13, 30));
            meal(day, "reception", at_time(date, 14, 0), kWeddingMeals[1]);
            activity(day, "lounge", "relaxing", at_time(date, 15, 0), at_time(date, 18, 0));
            meal(day, "cake", at_time(date, 18, 0), kWeddingMeals[2]);
            activity(day, "party", "socializing", at_time(date, 19, 0), at_time(date, 21, 0));
            meal(day, "banquet", at_time(date, 21, 0), kWeddingMeals[3]);
            activity(day, "dance", "socializing", at_time(date, 21, 30), at_time(date, 23, 30));
            meal(day, "late-snack", at_time(date, 23, 30), kWeddingMeals[2], "snack");
        }
        const double u = uniform01(rng_);
        mark(day, "mood", at_time(date, 22, 0), u < 0.1 ? -1 : (u < 0.4 ? 0 : 1));
    }

    void environment(Date date) {
        const double base = uniform(rng_, 30.0, 80.0);
        const bool spike = bernoulli(rng_, 0.1);
        const double peak = uniform(rng_, 110.0, 160.0);
        for (int h = 0; h < 24; ++h) {
            const bool in_spike = spike && h >= 15 && h < 18;
            const double aqi = in_spike ? peak : base + uniform(rng_, -10.0, 10.0);
            s_.environment.push_back({at_time(date, h), aqi, uniform(rng_, 0.0, 5.0)});
        }
    }

private:
    Scenario& s_;
    Rng& rng_;
};

}  // namespace

std::string_view to_string(Arm arm) { return arm == Arm::active ? "active" : "placebo"; }

std::optional<Arm> parse_arm(std::string_view text) {
    if (text == "active") return Arm::active;
    if (text == "placebo") return Arm::placebo;
    return std::nullopt;
}

std::vector<std::string_view> scenario_names() { return {"commute_lunch", "wedding_weekend"}; }

int default_horizon_days(std::string_view name) {
    if (name == "commute_lunch") return 28;
    if (name == "wedding_weekend") return 21;
    throw ValidationError("unknown scenario '" + std::string(name) + "' (available: commute_lunch, wedding_weekend)");
}

events::Event meal_event(std::string id, std::string subject, Timestamp at, const FoodAttrs& food,
                         std::string_view category) {
    Event e;
    e.id = std::move(id);
    e.stream = StreamKind::food;
    e.category = std::string(category);
    e.start = at;
    e.subject = std::move(subject);
    food.store(e.attrs);
    return e;
}

int mood_valence(double taste, double noise) {
    const double score = taste + noise;
    if (score > 0.35) return 1;
    if (score < -0.35) return -1;
    return 0;
}

Scenario generate_scenario(std::string_view name, std::uint64_t seed, const ScenarioOptions& options) {
    const int default_days = default_horizon_days(name);
    Scenario s;
    s.name = std::string(name);
    s.subject = options.subject;
    s.start = options.start;
    s.horizon_days = options.horizon_days.value_or(default_days);
    if (s.horizon_days < 0) throw ValidationError("horizon_days must be >= 0");
    if (s.subject.empty()) throw ValidationError("subject must be nonempty");

    s.tastes = {
        {"burger_fries_combo", -0.1}, {"grilled_chicken_salad", 0.3}, {"turkey_wrap", 0.1},
        {"poke_bowl", 0.5},           {"pasta_alfredo", 0.4},         {"veggie_burrito", -0.4},
        {"sushi_combo", 0.6},         {"muffin_latte", 0.2},
    };

    // The wedding falls on the first Saturday at least a week into the run.
    std::optional<Date> wedding_saturday;
    if (name == "wedding_weekend") {
        Date d = s.start + std::chrono::days{7};
        while (iso_weekday_index(d) != 5) d += std::chrono::days{1};
        wedding_saturday = d;
    }

    Rng rng = make_rng(seed, kScheduleStream);
    Builder b(s, rng);
    for (int day = 0; day < s.horizon_days; ++day) {
        const Date date = s.start + std::chrono::days{day};
        const bool wedding = wedding_saturday && (date == *wedding_saturday || date == *wedding_saturday + std::chrono::days{1});
        const bool low_mood = wedding_saturday && date == *wedding_saturday + std::chrono::days{2};
        b.routine_day(day, date, wedding, low_mood);
        b.environment(date);
    }
    std::stable_sort(s.schedule.begin(), s.schedule.end(), events::chronological_less);
    return s;
}

ingest::ResourceCatalog default_catalog() {
    const auto item = [](std::string venue, FoodAttrs food, double travel, std::string_view open, double price) {
        ingest::CatalogItem c;
        c.venue_id = std::move(venue);
        c.dish_id = food.dish_id;
        c.food = std::move(food);
        c.travel_minutes = travel;
        c.open = ingest::DailyWindow::parse(open);
        c.price = price;
        return c;
    };
    return ingest::ResourceCatalog({
        item("burger_palace", kBurger, 5, "10:30-22:00", 11.5),
        item("green_leaf", dish("grilled_chicken_salad", 35, 8, 15, 35, 450), 10, "11:00-15:00", 12.0),
        item("wrap_shack", dish("turkey_wrap", 48, 6, 12, 28, 430), 8, "10:00-16:00", 9.0),
        item("poke_place", dish("poke_bowl", 60, 9, 14, 30, 560), 12, "11:00-20:00", 14.0),
        item("trattoria", dish("pasta_alfredo", 95, 6, 40, 25, 1000), 15, "11:30-22:00", 16.0),
        item("burrito_cart", dish("veggie_burrito", 70, 5, 16, 18, 620), 6, "11:00-14:30", 8.5),
        item("sushi_bar", dish("sushi_combo", 75, 10, 12, 30, 600), 25, "11:30-21:00", 18.0),
        item("corner_cafe", dish("muffin_latte", 65, 35, 20, 8, 520), 3, "06:30-10:30", 6.0),
    });
}

}  // namespace lifeloop::sim
