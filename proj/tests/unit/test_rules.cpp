#include <gtest/gtest.h>

#include <sstream>

#include "builders.hpp"
#include "lifeloop/error.hpp"
#include "lifeloop/predict/rules.hpp"
#include "rules_oracle.hpp"

using namespace lifeloop;
using namespace lifeloop::testing;
using predict::MiningParams;

namespace {

MiningParams params(std::size_t min_support = 1, std::size_t max_len = 3) {
    MiningParams p;
    p.consequent = "hyperglycemia";
    p.window = hours{4};
    p.horizon = hours{3};
    p.min_support = min_support;
    p.max_len = max_len;
    return p;
}

const predict::PatternRule* find(const std::vector<predict::PatternRule>& rules, std::vector<std::string> a) {
    for (const auto& r : rules) {
        if (r.antecedent == a) return &r;
    }
    return nullptr;
}

}  // namespace

TEST(Rules, NoConsequentGivesSmoothedConfidence) {
    std::vector<events::Event> evs;
    for (int d = 0; d < 3; ++d) evs.push_back(activity("e" + std::to_string(d), "eating", d * 24 * 60));
    const std::vector<events::Personicle> ps = {events::merge_streams(evs)};
    const auto rules = predict::mine_rules(ps, params());
    const auto* r = find(rules, {"eating"});
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->support, 3u);
    EXPECT_EQ(r->hits, 0u);
    EXPECT_DOUBLE_EQ(r->confidence, 1.0 / 5.0);
}

TEST(Rules, AlwaysFollowedGivesFiveSixths) {
    std::vector<events::Event> evs;
    for (int d = 0; d < 4; ++d) {
        evs.push_back(activity("e" + std::to_string(d), "eating", d * 24 * 60));
        evs.push_back(activity("h" + std::to_string(d), "hyperglycemia", d * 24 * 60 + 60));
    }
    const std::vector<events::Personicle> ps = {events::merge_streams(evs)};
    const auto rules = predict::mine_rules(ps, params(4));
    ASSERT_EQ(rules.size(), 1u);
    EXPECT_EQ(rules[0].antecedent, std::vector<std::string>{"eating"});
    EXPECT_EQ(rules[0].support, 4u);
    EXPECT_EQ(rules[0].hits, 4u);
    EXPECT_DOUBLE_EQ(rules[0].confidence, 5.0 / 6.0);
    // Base rate (4 + 1) / (4 + 2): every non-consequent position is followed.
    EXPECT_DOUBLE_EQ(rules[0].lift, 1.0);
}

TEST(Rules, SequenceBeatsItsParts) {
    // Pizza then TV predicts a spike; pizza alone or TV alone does not.
    std::vector<events::Event> evs;
    int id = 0;
    const auto add = [&](const char* cat, int minute) { evs.push_back(activity("x" + std::to_string(id++), cat, minute)); };
    for (int d = 0; d < 6; ++d) {
        const int base = d * 24 * 60;
        add("eating", base);
        add("watching_tv", base + 30);
        add("hyperglycemia", base + 90);
        add("eating", base + 600);
        add("working", base + 630);
        add("watching_tv", base + 900);
        add("relaxing", base + 930);
    }
    const std::vector<events::Personicle> ps = {events::merge_streams(evs)};
    const auto rules = predict::mine_rules(ps, params(3));
    ASSERT_FALSE(rules.empty());
    EXPECT_EQ(rules.front().antecedent, (std::vector<std::string>{"eating", "watching_tv"}));
    EXPECT_EQ(rules.front().hits, 6u);
    for (const auto& r : rules) {
        EXPECT_EQ(std::count(r.antecedent.begin(), r.antecedent.end(), "hyperglycemia"), 0);
    }
    const auto* tv = find(rules, {"watching_tv"});
    ASSERT_NE(tv, nullptr);
    EXPECT_LT(tv->lift, rules.front().lift);
}

TEST(Rules, SortedByLiftConfidenceThenAntecedent) {
    Rng rng = make_rng(51, 0);
    PersonicleShape shape;
    shape.max_events = 200;
    shape.categories.push_back("hyperglycemia");
    const std::vector<events::Personicle> ps = {random_personicle(rng, shape)};
    const auto rules = predict::mine_rules(ps, params(2));
    for (std::size_t i = 1; i < rules.size(); ++i) {
        const auto& a = rules[i - 1];
        const auto& b = rules[i];
        const bool ordered = a.lift > b.lift || (a.lift == b.lift && a.confidence > b.confidence) ||
                             (a.lift == b.lift && a.confidence == b.confidence && a.antecedent < b.antecedent);
        EXPECT_TRUE(ordered) << i;
    }
}

TEST(Rules, InvalidParamsThrow) {
    const std::vector<events::Personicle> none;
    auto p = params();
    p.max_len = 0;
    EXPECT_THROW(predict::mine_rules(none, p), ValidationError);
    p = params();
    p.max_len = 4;
    EXPECT_THROW(predict::mine_rules(none, p), ValidationError);
    p = params();
    p.window = Duration::zero();
    EXPECT_THROW(predict::mine_rules(none, p), ValidationError);
    p = params();
    p.horizon = -hours{1};
    EXPECT_THROW(predict::mine_rules(none, p), ValidationError);
}

TEST(Rules, MatchesExhaustiveEnumeration) {
    Rng rng = make_rng(52, 0);
    PersonicleShape shape;
    shape.max_events = 120;
    shape.categories = {"eating", "working", "watching_tv", "hyperglycemia"};
    shape.span_minutes = 3 * 24 * 60;
    for (int i = 0; i < 20; ++i) {
        const std::vector<events::Personicle> ps = {random_personicle(rng, shape), random_personicle(rng, shape)};
        for (std::size_t len = 1; len <= 3; ++len) {
            const auto p = params(2, len);
            const auto got = predict::mine_rules(ps, p);
            const auto want = oracle::enumerate_rules(ps, p);
            const double base = oracle::base_rate(want);
            std::size_t expected = 0;
            for (const auto& [ante, counts] : want.rules) {
                if (counts.support < p.min_support) continue;
                ++expected;
                const auto* r = find(got, ante);
                ASSERT_NE(r, nullptr);
                EXPECT_EQ(r->support, counts.support);
                EXPECT_EQ(r->hits, counts.hits);
                EXPECT_NEAR(r->confidence, oracle::confidence(counts), 1e-12);
                EXPECT_NEAR(r->lift, oracle::confidence(counts) / base, 1e-12);
            }
            EXPECT_EQ(got.size(), expected);
        }
    }
}

TEST(Rules, CsvHeader) {
    std::ostringstream out;
    predict::write_rules_csv(out, std::vector<predict::PatternRule>{});
    EXPECT_EQ(out.str(), "antecedent,window_s,consequent,support,hits,confidence,lift\n");
}
