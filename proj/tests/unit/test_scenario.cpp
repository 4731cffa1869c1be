#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "lifeloop/error.hpp"
#include "lifeloop/ingest/event_log.hpp"
#include "lifeloop/sim/scenario.hpp"

using namespace lifeloop;

namespace {

std::string serialized(const sim::Scenario& s) {
    std::ostringstream out;
    ingest::write_event_log(out, s.schedule);
    return out.str();
}

}  // namespace

TEST(Scenario, SameSeedSameSchedule) {
    for (auto name : sim::scenario_names()) {
        const auto a = sim::generate_scenario(name, 17);
        const auto b = sim::generate_scenario(name, 17);
        EXPECT_EQ(a, b);
        EXPECT_EQ(serialized(a), serialized(b));
        EXPECT_NE(serialized(a), serialized(sim::generate_scenario(name, 18)));
    }
}

TEST(Scenario, UnknownNameListsOptions) {
    try {
        sim::generate_scenario("marathon", 1);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("commute_lunch"), std::string::npos);
        EXPECT_NE(msg.find("wedding_weekend"), std::string::npos);
    }
    EXPECT_THROW(sim::default_horizon_days("marathon"), ValidationError);
}

TEST(Scenario, ScheduleIsChronologicalAndInsideHorizon) {
    const auto s = sim::generate_scenario("commute_lunch", 3);
    ASSERT_FALSE(s.schedule.empty());
    EXPECT_EQ(s.horizon_days, 28);
    const Timestamp t0{s.start};
    const Timestamp t1 = t0 + hours{24 * s.horizon_days};
    for (std::size_t i = 0; i < s.schedule.size(); ++i) {
        EXPECT_GE(s.schedule[i].start, t0);
        EXPECT_LT(s.schedule[i].start, t1);
        if (i > 0) {
            EXPECT_FALSE(events::chronological_less(s.schedule[i], s.schedule[i - 1]));
        }
    }
    std::vector<std::string> ids;
    for (const auto& e : s.schedule) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
}

TEST(Scenario, OneLunchDecisionPerWeekday) {
    const auto s = sim::generate_scenario("commute_lunch", 4);
    EXPECT_EQ(s.decisions.size(), 20u);
    for (const auto& d : s.decisions) {
        EXPECT_LT(iso_weekday_index(date_of(d.at)), 5u);
        EXPECT_EQ(d.fallback.stream, events::StreamKind::food);
        EXPECT_GT(d.fallback.number_or("carbs_g", 0), 100);
    }
    EXPECT_FALSE(s.environment.empty());
}

TEST(Scenario, WeddingWeekendIsHeavyAndSedentary) {
    const auto s = sim::generate_scenario("wedding_weekend", 5);
    EXPECT_EQ(s.horizon_days, 21);
    // Find the weekend day with the most sweet meals; it must have no exercise.
    std::map<Date, int> sweet;
    std::map<Date, int> exercise;
    for (const auto& e : s.schedule) {
        const auto day = date_of(e.start);
        if (e.stream == events::StreamKind::food && e.number_or("sugar_g", 0) > 25) ++sweet[day];
        if (e.category == "exercising") ++exercise[day];
    }
    const auto peak = std::max_element(sweet.begin(), sweet.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    ASSERT_NE(peak, sweet.end());
    EXPECT_GE(iso_weekday_index(peak->first), 5u);
    EXPECT_GE(peak->second, 3);
    EXPECT_EQ(exercise[peak->first], 0);
    EXPECT_EQ(exercise[peak->first - std::chrono::days{1}], 0);

    // The Monday after has negative mood marks.
    const Date monday = iso_weekday_index(peak->first) == 6 ? peak->first + std::chrono::days{1}
                                                            : peak->first + std::chrono::days{2};
    int negative = 0;
    for (const auto& e : s.schedule) {
        if (e.stream == events::StreamKind::mood && date_of(e.start) == monday && e.number_or("valence", 0) < 0) ++negative;
    }
    EXPECT_GE(negative, 3);
}

TEST(Scenario, OptionsOverrideDefaults) {
    sim::ScenarioOptions o;
    o.subject = "alice";
    o.horizon_days = 3;
    const auto s = sim::generate_scenario("commute_lunch", 1, o);
    EXPECT_EQ(s.subject, "alice");
    EXPECT_EQ(s.horizon_days, 3);
    for (const auto& e : s.schedule) EXPECT_EQ(e.subject, "alice");
    o.horizon_days = 0;
    EXPECT_TRUE(sim::generate_scenario("commute_lunch", 1, o).schedule.empty());
    o.horizon_days = -1;
    EXPECT_THROW(sim::generate_scenario("commute_lunch", 1, o), ValidationError);
}

TEST(Scenario, MoodValenceThresholds) {
    EXPECT_EQ(sim::mood_valence(0.5, 0), 1);
    EXPECT_EQ(sim::mood_valence(0.35, 0), 0);
    EXPECT_EQ(sim::mood_valence(-0.36, 0), -1);
    EXPECT_EQ(sim::mood_valence(0.2, 0.2), 1);
}

TEST(Scenario, ArmNames) {
    EXPECT_EQ(sim::parse_arm("placebo"), sim::Arm::placebo);
    EXPECT_EQ(sim::to_string(sim::Arm::active), "active");
    EXPECT_FALSE(sim::parse_arm("both").has_value());
}
