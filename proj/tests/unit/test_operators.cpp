#include <gtest/gtest.h>

#include "builders.hpp"
#include "lifeloop/error.hpp"
#include "lifeloop/events/operators.hpp"
#include "operators_oracle.hpp"

using namespace lifeloop;
using namespace lifeloop::testing;
using events::AllenRelation;
using events::CompoundEventDef;
using events::PartSelector;
using events::WithinWindow;

namespace {

events::Personicle personicle(std::vector<events::Event> evs) { return events::merge_streams(evs); }

CompoundEventDef meal_then_exercise(Duration window) {
    return {"post_meal_exercise",
            {{events::StreamKind::activity, "eating"}, {events::StreamKind::activity, "exercising"}},
            WithinWindow{window}};
}

}  // namespace

TEST(CoOccurrence, CountsOnlyPairsInsideTheWindow) {
    const auto p = personicle({activity("a1", "A", 0), activity("b1", "B", 5), activity("a2", "A", 20),
                               activity("b2", "B", 40)});
    const auto r = events::co_occurrence(p, "A", "B", minutes{10});
    EXPECT_EQ(r.count, 1u);
    // One ordered pair of distinct events has a gap in [0, 10] out of 4 * 3.
    EXPECT_DOUBLE_EQ(r.lift, 1.0 * 4 / (2 * 2 * (1.0 / 12)));
}

TEST(CoOccurrence, OrderMatters) {
    const auto p = personicle({activity("b1", "B", 0), activity("a1", "A", 5)});
    EXPECT_EQ(events::co_occurrence(p, "A", "B", minutes{10}).count, 0u);
    EXPECT_EQ(events::co_occurrence(p, "B", "A", minutes{10}).count, 1u);
}

TEST(CoOccurrence, SameCategoryNeedsDistinctEvents) {
    const auto p = personicle({activity("a1", "A", 0), activity("a2", "A", 0)});
    // Equal starts give both orders.
    EXPECT_EQ(events::co_occurrence(p, "A", "A", minutes{1}).count, 2u);
    const auto single = personicle({activity("a1", "A", 0)});
    EXPECT_EQ(events::co_occurrence(single, "A", "A", minutes{1}).count, 0u);
    EXPECT_EQ(events::co_occurrence(single, "A", "A", minutes{1}).lift, 0.0);
}

TEST(CoOccurrence, AbsentCategoryGivesZeroLift) {
    const auto p = personicle({activity("a1", "A", 0), activity("b1", "B", 5)});
    const auto r = events::co_occurrence(p, "A", "C", minutes{10});
    EXPECT_EQ(r.count, 0u);
    EXPECT_EQ(r.lift, 0.0);
}

TEST(CoOccurrence, NonPositiveWindowThrows) {
    const auto p = personicle({activity("a1", "A", 0)});
    EXPECT_THROW(events::co_occurrence(p, "A", "A", minutes{0}), ValidationError);
    EXPECT_THROW(events::co_occurrence(p, "A", "A", minutes{-5}), ValidationError);
}

TEST(CoOccurrence, MatchesBruteForce) {
    Rng rng = make_rng(21, 0);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_personicle(rng, {.max_events = 150});
        for (const auto w : {minutes{15}, minutes{60}, minutes{240}}) {
            const auto got = events::co_occurrence(p, "eating", "exercising", w);
            const auto want = oracle::co_occurrence(p, "eating", "exercising", w);
            ASSERT_EQ(got.count, want.count);
            ASSERT_NEAR(got.lift, want.lift, 1e-9 * std::max(1.0, want.lift));
        }
    }
}

TEST(Compound, MealThenExerciseWithinTwoHours) {
    const auto p = personicle({activity("m", "eating", 12 * 60, 12 * 60 + 30),
                               activity("x", "exercising", 13 * 60, 13 * 60 + 45)});
    const auto found = events::detect_compound_events(p, meal_then_exercise(hours{2}));
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].category, "post_meal_exercise");
    EXPECT_EQ(found[0].start, at_minute(12 * 60));
    EXPECT_EQ(found[0].end, at_minute(13 * 60 + 45));
    EXPECT_EQ(found[0].text("parts"), "m,x");
    EXPECT_TRUE(events::detect_compound_events(p, meal_then_exercise(minutes{30})).empty());
}

TEST(Compound, OrderIsRequired) {
    const auto p = personicle({activity("x", "exercising", 0, 30), activity("m", "eating", 60, 90)});
    EXPECT_TRUE(events::detect_compound_events(p, meal_then_exercise(hours{2})).empty());
}

TEST(Compound, PartsAreNotReused) {
    const auto p = personicle({activity("m1", "eating", 0), activity("m2", "eating", 10),
                               activity("x1", "exercising", 20), activity("x2", "exercising", 30),
                               activity("x3", "exercising", 40)});
    const auto found = events::detect_compound_events(p, meal_then_exercise(hours{1}));
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0].text("parts"), "m1,x1");
    EXPECT_EQ(found[1].text("parts"), "m2,x2");
}

TEST(Compound, AllenRelationBetweenParts) {
    CompoundEventDef def{"sleep_through_tv",
                         {{events::StreamKind::activity, "watching_tv"}, {events::StreamKind::activity, "sleeping"}},
                         AllenRelation::meets};
    const auto p = personicle({activity("tv", "watching_tv", 0, 60), activity("s", "sleeping", 60, 480),
                               activity("tv2", "watching_tv", 500, 520), activity("s2", "sleeping", 530, 600)});
    const auto found = events::detect_compound_events(p, def);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].text("parts"), "tv,s");
}

TEST(Compound, InvalidDefinitionThrows) {
    const auto p = personicle({activity("m", "eating", 0)});
    CompoundEventDef one_part{"x", {{events::StreamKind::activity, "eating"}}, WithinWindow{hours{1}}};
    EXPECT_THROW(events::detect_compound_events(p, one_part), ValidationError);
    EXPECT_THROW(events::detect_compound_events(p, meal_then_exercise(minutes{0})), ValidationError);
    auto unnamed = meal_then_exercise(hours{1});
    unnamed.name.clear();
    EXPECT_THROW(unnamed.validate(), ValidationError);
}

TEST(Compound, MatchesBruteForceWindowed) {
    Rng rng = make_rng(22, 0);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_personicle(rng, {.max_events = 80});
        for (const auto& def : {meal_then_exercise(hours{2}),
                                CompoundEventDef{"triple",
                                                 {{events::StreamKind::activity, "commuting"},
                                                  {events::StreamKind::activity, "eating"},
                                                  {events::StreamKind::activity, "commuting"}},
                                                 WithinWindow{hours{6}}}}) {
            const auto got = events::detect_compound_events(p, def);
            const auto want = oracle::compound_tuples(p, def);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t k = 0; k < got.size(); ++k) {
                std::string parts;
                for (auto idx : want[k]) parts += (parts.empty() ? "" : ",") + p[idx].id;
                EXPECT_EQ(got[k].text("parts"), parts);
            }
        }
    }
}

TEST(Compound, MatchesBruteForceAllen) {
    Rng rng = make_rng(23, 0);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_personicle(rng, {.max_events = 60, .span_minutes = 24 * 60});
        for (auto rel : {AllenRelation::before, AllenRelation::overlaps, AllenRelation::during, AllenRelation::meets}) {
            CompoundEventDef def{"rel",
                                 {{events::StreamKind::activity, "working"}, {events::StreamKind::activity, "eating"}},
                                 rel};
            const auto got = events::detect_compound_events(p, def);
            const auto want = oracle::compound_tuples(p, def);
            ASSERT_EQ(got.size(), want.size()) << events::to_string(rel);
        }
    }
}
