#include <gtest/gtest.h>

#include <sstream>

#include "builders.hpp"
#include "lifeloop/error.hpp"
#include "lifeloop/ingest/catalogs.hpp"
#include "lifeloop/ingest/event_log.hpp"
#include "lifeloop/ingest/vocabulary.hpp"

using namespace lifeloop;
using namespace lifeloop::testing;

namespace {

ingest::ParseReport parse(const std::string& text) {
    std::istringstream in(text);
    return ingest::parse_event_log(in);
}

}  // namespace

TEST(Timestamps, RoundTripAndRejects) {
    const auto t = parse_timestamp("2017-03-06T12:30:05Z");
    EXPECT_EQ(format_timestamp(t), "2017-03-06T12:30:05Z");
    EXPECT_EQ(iso_weekday_index(date_of(t)), 0u);
    EXPECT_FALSE(try_parse_timestamp("2017-03-06 12:30:05").has_value());
    EXPECT_FALSE(try_parse_timestamp("2017-02-30T00:00:00Z").has_value());
    EXPECT_FALSE(try_parse_timestamp("2017-03-06T24:00:00Z").has_value());
    EXPECT_THROW(parse_timestamp("yesterday"), ValidationError);
    EXPECT_EQ(format_date(*try_parse_date("2017-03-11")), "2017-03-11");
}

TEST(Vocabulary, SeventeenDistinctCategories) {
    const auto& v = ingest::activity_vocabulary();
    EXPECT_EQ(v.size(), 17u);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(ingest::activity_index(v[i]), i);
    EXPECT_TRUE(ingest::is_activity_category("exercising"));
    EXPECT_FALSE(ingest::is_activity_category("juggling"));
}

TEST(EventLog, ParsesEveryStream) {
    const auto r = parse(
        R"({"id":"a","stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","end":"2017-03-06T12:00:00Z","subject":"bruce"})"
        "\n"
        R"({"stream":"food","category":"meal","start":"2017-03-06T12:30:00Z","subject":"bruce","attrs":{"carbs_g":60,"dish_id":"poke_bowl"}})"
        "\n\n"
        R"({"stream":"mood","category":"mood","start":"2017-03-06T13:00:00Z","subject":"bruce","attrs":{"valence":1,"event":"L2"}})"
        "\n"
        R"({"stream":"medical","category":"medication","start":"2017-03-06T08:00:00Z","subject":"bruce"})"
        "\n"
        R"({"stream":"environment","category":"air","start":"2017-03-06T08:00:00Z","subject":"bruce","attrs":{"aqi":40}})"
        "\n");
    EXPECT_TRUE(r.rejects.empty()) << r.rejects.front().reason;
    ASSERT_EQ(r.events.size(), 5u);
    EXPECT_EQ(r.lines_read, 6u);
    EXPECT_EQ(r.blank_lines, 1u);
    EXPECT_EQ(r.events[1].id, "L2");
    EXPECT_EQ(r.events[1].number("carbs_g"), 60.0);
    EXPECT_EQ(r.events[1].text("dish_id"), "poke_bowl");
    EXPECT_EQ(r.events[0].end, parse_timestamp("2017-03-06T12:00:00Z"));
}

TEST(EventLog, RejectsAreCollectedPerLine) {
    const char* bad[] = {
        "not json",
        R"([1,2])",
        R"({"stream":"activity","category":"working","subject":"bruce"})",
        R"({"stream":"telepathy","category":"x","start":"2017-03-06T09:00:00Z","subject":"bruce"})",
        R"({"stream":"activity","category":"juggling","start":"2017-03-06T09:00:00Z","subject":"bruce"})",
        R"({"stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","end":"2017-03-06T08:00:00Z","subject":"bruce"})",
        R"({"stream":"food","category":"meal","start":"2017-03-06T09:00:00Z","subject":"bruce","attrs":{"carbs_g":-3}})",
        R"({"stream":"mood","category":"mood","start":"2017-03-06T09:00:00Z","subject":"bruce","attrs":{"valence":2}})",
        R"({"stream":"activity","category":"working","start":"2017-03-06 09:00","subject":"bruce"})",
        R"({"stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","subject":"bruce","colour":"red"})",
        R"({"stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","subject":""})",
        R"({"stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","subject":"bruce","attrs":{"x":[1]}})",
    };
    std::string text;
    for (const char* line : bad) text += std::string(line) + "\n";
    const auto r = parse(text);
    EXPECT_TRUE(r.events.empty());
    ASSERT_EQ(r.rejects.size(), std::size(bad));
    for (std::size_t i = 0; i < r.rejects.size(); ++i) {
        EXPECT_EQ(r.rejects[i].line, i + 1);
        EXPECT_FALSE(r.rejects[i].reason.empty());
    }
    EXPECT_EQ(r.lines_read, r.events.size() + r.rejects.size() + r.blank_lines);
}

TEST(EventLog, DuplicateIdRejected) {
    const auto r = parse(
        R"({"id":"x","stream":"activity","category":"working","start":"2017-03-06T09:00:00Z","subject":"bruce"})"
        "\n"
        R"({"id":"x","stream":"activity","category":"eating","start":"2017-03-06T10:00:00Z","subject":"bruce"})");
    EXPECT_EQ(r.events.size(), 1u);
    ASSERT_EQ(r.rejects.size(), 1u);
    EXPECT_EQ(r.rejects[0].line, 2u);
}

TEST(EventLog, MissingFileIsIoError) {
    EXPECT_THROW(ingest::parse_event_log(std::filesystem::path("/nonexistent/log.jsonl")), IoError);
}

TEST(EventLog, SerializeRoundTrip) {
    const std::vector<events::Event> evs = {activity("a", "working", 0, 60), food("f", 70, 55.5, 10, 12, "wrap"),
                                            mood("m", 80, -1, std::string("f"))};
    std::ostringstream out;
    ingest::write_event_log(out, evs);
    const auto r = parse(out.str());
    ASSERT_TRUE(r.rejects.empty());
    ASSERT_EQ(r.events.size(), evs.size());
    for (std::size_t i = 0; i < evs.size(); ++i) EXPECT_EQ(r.events[i], evs[i]);
    EXPECT_EQ(ingest::serialize_event(evs[0]), ingest::serialize_event(r.events[0]));
}

TEST(Records, FoodAttrsAndSummary) {
    const std::vector<events::Event> evs = {food("f1", 0, 40, 5, 10), activity("a", "eating", 5),
                                            food("f2", 30, 20, 1, 2), food("f3", 120, 99)};
    const auto s = ingest::nutrition_summary(evs, at_minute(0), at_minute(120));
    EXPECT_DOUBLE_EQ(s.carbs_g, 60);
    EXPECT_DOUBLE_EQ(s.sugar_g, 6);
    EXPECT_DOUBLE_EQ(s.fat_g, 12);
    EXPECT_TRUE(s.dish_id.empty());
    ingest::FoodAttrs neg;
    neg.fat_g = -1;
    EXPECT_THROW(neg.validate(), ValidationError);
}

TEST(Records, MoodMarksRoundTrip) {
    const std::vector<events::Event> evs = {mood("m1", 0, 1, std::string("x")), activity("a", "working", 1),
                                            mood("m2", 10, -1)};
    const auto marks = ingest::mood_marks(evs);
    ASSERT_EQ(marks.size(), 2u);
    EXPECT_EQ(marks[0], (ingest::MoodMark{1, at_minute(0), std::string("x")}));
    EXPECT_EQ(marks[1], (ingest::MoodMark{-1, at_minute(10), std::nullopt}));
}

TEST(Catalog, WindowParsingAndWrap) {
    const auto w = ingest::DailyWindow::parse("22:00-02:00");
    EXPECT_TRUE(w.contains(at_minute(23 * 60)));
    EXPECT_TRUE(w.contains(at_minute(60)));
    EXPECT_FALSE(w.contains(at_minute(12 * 60)));
    EXPECT_EQ(w.to_string(), "22:00-02:00");
    const auto lunch = ingest::DailyWindow::parse("11:00-14:30");
    EXPECT_TRUE(lunch.contains(at_minute(11 * 60)));
    EXPECT_FALSE(lunch.contains(at_minute(14 * 60 + 30)));
    EXPECT_THROW(ingest::DailyWindow::parse("11-14"), ValidationError);
    EXPECT_THROW(ingest::DailyWindow::parse("25:00-26:00"), ValidationError);
}

TEST(Catalog, ParseSortsAndRejects) {
    std::istringstream good(
        R"({"venue":"b","dish":"d2","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":10,"travel_minutes":3})"
        "\n"
        R"({"venue":"a","dish":"d1","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":20,"travel_minutes":4,"open":"11:00-14:00"})"
        "\n");
    const auto c = ingest::parse_resource_catalog(good);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.items()[0].venue_id, "a");
    EXPECT_EQ(c.find("d2")->venue_id, "b");
    EXPECT_EQ(c.find("d2", "a"), nullptr);

    const char* bad[] = {
        R"({"venue":"a","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":1,"travel_minutes":1})",
        R"({"venue":"a","dish":"d","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":-1,"travel_minutes":1})",
        R"({"venue":"a","dish":"d","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":"lots","travel_minutes":1})",
        R"({"venue":"a","dish":"d","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":1,"travel_minutes":1,"open":"noon"})",
        R"({"venue":"a","dish":"d","carbs_g":1,"travel_minutes":1})",
        "{oops",
    };
    for (const char* line : bad) {
        std::istringstream in(line);
        EXPECT_THROW(ingest::parse_resource_catalog(in), ValidationError) << line;
    }
    std::istringstream dup(R"({"venue":"a","dish":"d","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":1,"travel_minutes":1})"
                           "\n"
                           R"({"venue":"a","dish":"d","fat_g":1,"protein_g":1,"sugar_g":1,"kcal":100,"carbs_g":2,"travel_minutes":1})");
    EXPECT_THROW(ingest::parse_resource_catalog(dup), ValidationError);
}

TEST(Catalog, WriteParseRoundTrip) {
    const auto c = ingest::load_resource_catalog(LIFELOOP_TEST_DATA_DIR "/catalog.jsonl");
    EXPECT_GE(c.size(), 8u);
    std::stringstream buf;
    ingest::write_resource_catalog(buf, c);
    EXPECT_EQ(ingest::parse_resource_catalog(buf), c);
}

TEST(Environment, LoadSortsAndRejects) {
    const auto env = ingest::load_environment(LIFELOOP_TEST_DATA_DIR "/environment.jsonl");
    ASSERT_FALSE(env.empty());
    for (std::size_t i = 1; i < env.size(); ++i) EXPECT_LE(env[i - 1].at, env[i].at);
    std::istringstream bad(R"({"timestamp":"noon","aqi":1,"pollen":1})");
    EXPECT_THROW(ingest::parse_environment(bad), ValidationError);
    std::istringstream neg(R"({"timestamp":"2017-03-06T00:00:00Z","aqi":-1,"pollen":1})");
    EXPECT_THROW(ingest::parse_environment(neg), ValidationError);
    EXPECT_THROW(ingest::load_environment("/nonexistent/env.jsonl"), IoError);
}
