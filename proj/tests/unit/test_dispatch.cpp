#include <gtest/gtest.h>

#include "builders.hpp"
#include "lifeloop/error.hpp"
#include "lifeloop/recommend/dispatch.hpp"

using namespace lifeloop;
using namespace lifeloop::testing;
using recommend::DispatchState;

namespace {

DispatchState state(double high, double low) {
    DispatchState s;
    s.theta_high = high;
    s.theta_low = low;
    return s;
}

}  // namespace

TEST(Dispatch, FiresAboveThresholdAfterGap) {
    auto s = state(30, 20);
    const Timestamp now = kEpoch + hours{200};
    s.last_alert = now - hours{100};
    const auto d = recommend::should_dispatch(s, 31, now);
    EXPECT_TRUE(d.dispatch);
    EXPECT_FALSE(d.state.armed);
    EXPECT_EQ(d.state.last_alert, now);
}

TEST(Dispatch, RespectsMinimumGap) {
    auto s = state(30, 20);
    const Timestamp now = kEpoch + hours{200};
    s.last_alert = now - hours{71};
    EXPECT_FALSE(recommend::should_dispatch(s, 31, now).dispatch);
    s.last_alert = now - hours{72};
    EXPECT_TRUE(recommend::should_dispatch(s, 31, now).dispatch);
}

TEST(Dispatch, StrictThreshold) {
    EXPECT_FALSE(recommend::should_dispatch(state(30, 20), 30, kEpoch).dispatch);
}

TEST(Dispatch, HysteresisNeedsRiskBelowLow) {
    auto s = state(30, 20);
    Timestamp t = kEpoch;
    auto d = recommend::should_dispatch(s, 35, t);
    ASSERT_TRUE(d.dispatch);
    s = d.state;
    // Hovering between the thresholds for weeks never re-arms.
    for (int day = 1; day < 30; ++day) {
        t += hours{24};
        d = recommend::should_dispatch(s, day % 2 ? 25 : 31, t);
        EXPECT_FALSE(d.dispatch);
        s = d.state;
    }
    t += hours{24};
    s = recommend::should_dispatch(s, 19, t).state;
    EXPECT_TRUE(s.armed);
    t += hours{24};
    EXPECT_TRUE(recommend::should_dispatch(s, 31, t).dispatch);
}

TEST(Dispatch, RateBoundUnderFuzz) {
    Rng rng = make_rng(81, 0);
    for (int run = 0; run < 200; ++run) {
        auto s = state(uniform(rng, 10, 30), 0);
        s.theta_low = uniform(rng, 0, s.theta_high - 1);
        s.min_gap = hours{uniform_int(rng, 1, 96)};
        Timestamp t = kEpoch;
        std::vector<Timestamp> alerts;
        for (int k = 0; k < 500; ++k) {
            t += minutes{uniform_int(rng, 1, 24 * 60)};
            const auto d = recommend::should_dispatch(s, uniform(rng, 0, 40), t);
            if (d.dispatch) alerts.push_back(t);
            s = d.state;
        }
        for (std::size_t i = 1; i < alerts.size(); ++i) ASSERT_GE(alerts[i] - alerts[i - 1], s.min_gap);
    }
}

TEST(Dispatch, Validate) {
    EXPECT_NO_THROW(DispatchState{}.validate());
    EXPECT_THROW(state(10, 10).validate(), ValidationError);
    EXPECT_THROW(state(10, -1).validate(), ValidationError);
    auto s = state(10, 5);
    s.min_gap = Duration::zero();
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Dispatch, TriggerKindNames) {
    EXPECT_EQ(recommend::to_string(recommend::TriggerKind::alert), "alert");
    EXPECT_EQ(recommend::to_string(recommend::TriggerKind::recommendation), "recommendation");
}
