#include <gtest/gtest.h>

#include "pe/repro.hpp"

using namespace pe;

TEST(EligibilityTime, WorkedValues) {
    EXPECT_EQ(eligibility_time(-10, 10, 5), Ratio(5));
    EXPECT_EQ(eligibility_time(5, 10, 12), Ratio(15));
    EXPECT_EQ(eligibility_time(9, 11, 19), Ratio(20));
    EXPECT_EQ(eligibility_time(19, 7, 27), Ratio(27));
}

TEST(EnforcerState, SequenceAcrossJobs) {
    EnforcerState st;
    EnforcerKey k{2, 2, SegmentPart::whole};
    EXPECT_EQ(st.previous(k, 10), Ratio(-10));
    auto peeked = st.peek(k, 10, 5);
    EXPECT_EQ(peeked.eligible, Ratio(5));
    EXPECT_EQ(st.previous(k, 10), Ratio(-10));  // peek stores nothing
    EXPECT_EQ(st.update(k, 10, 5).eligible, Ratio(5));
    auto d = st.update(k, 10, 12);
    EXPECT_EQ(d.floor, Ratio(15));
    EXPECT_EQ(d.busy_start, Ratio(12));
    EXPECT_EQ(d.eligible, Ratio(15));
    // Other segments and parts are independent.
    EXPECT_EQ(st.previous({2, 1, SegmentPart::whole}, 10), Ratio(-10));
    EXPECT_EQ(st.previous({2, 2, SegmentPart::remainder}, 10), Ratio(-10));
}

TEST(EnforcerState, FirstJobNeverDelayed) {
    for (int busy = 0; busy < 20; ++busy) {
        EnforcerState st;
        EXPECT_EQ(st.update({1, 1, SegmentPart::whole}, 7, busy).eligible, Ratio(busy));
    }
}

TEST(DynamicChunks, Mapping) {
    JobBehavior j1{1, 1, {1}, {1}, true};
    auto c1 = map_dynamic_chunks(j1);
    ASSERT_EQ(c1.size(), 1u);
    EXPECT_EQ(c1[0].exec, Ratio(1));
    EXPECT_EQ(c1[0].suspension_before, Ratio(1));
    EXPECT_EQ(c1[0].enforcer_index, 1);

    JobBehavior j2{1, 2, {0, 1}, {Ratio(1, 2), Ratio(1, 2)}, true};
    auto c2 = map_dynamic_chunks(j2);
    ASSERT_EQ(c2.size(), 2u);
    EXPECT_EQ(c2[0].exec, Ratio(1, 2));
    EXPECT_EQ(c2[0].enforcer_index, 1);
    EXPECT_EQ(c2[1].exec, Ratio(1, 2));
    EXPECT_EQ(c2[1].suspension_before, Ratio(1));
    EXPECT_EQ(c2[1].enforcer_index, 2);

    auto c3 = map_dynamic_chunks({1, 3, {0}, {1}, true});
    ASSERT_EQ(c3.size(), 1u);
    EXPECT_EQ(c3[0].enforcer_index, 1);

    EXPECT_THROW(map_dynamic_chunks({1, 1, {0}, {1}, false}), InputError);
    EXPECT_THROW(map_dynamic_chunks({1, 1, {0, 1}, {1}, true}), InputError);
}

TEST(Busy, TrackerBasics) {
    BusyTracker b;
    b.record(1, 0, 2, 1);
    b.record(1, 2, 4, 3);
    b.record(1, 4, 5, std::nullopt);
    b.record(1, 5, 7, 2);
    EXPECT_EQ(b.busy_start(1, 3, 4), Ratio(0));  // levels 1 and 3 ran throughout
    EXPECT_EQ(b.busy_start(1, 2, 4), Ratio(4));  // level 3 work is lower priority
    EXPECT_EQ(b.busy_start(1, 2, 3), Ratio(3));
    EXPECT_EQ(b.busy_start(1, 2, 7), Ratio(5));  // idle at 4
    EXPECT_EQ(b.busy_start(1, 2, 5), Ratio(5));  // interval start itself
    EXPECT_EQ(b.busy_start(1, 2, 6), Ratio(5));
    EXPECT_EQ(b.busy_start(2, 1, 3), Ratio(3));  // nothing recorded
}

TEST(Busy, FromSimulatedTraces) {
    auto f2 = builders::fig2_enforce().scenario;
    auto t2 = simulate(f2);
    EXPECT_EQ(busy_interval_start(t2.busy, *f2.find_task(2), 12), Ratio(12));
    EXPECT_EQ(busy_interval_start(t2.busy, *f2.find_task(2), 5), Ratio(5));
    EXPECT_EQ(busy_interval_start(t2.busy, *f2.find_task(2), 0), Ratio(0));

    auto s3 = builders::sec3_enforce().scenario;
    auto t3 = simulate(s3);
    EXPECT_EQ(busy_interval_start(t3.busy, *s3.find_task(2), 9), Ratio(9));
    EXPECT_EQ(busy_interval_start(t3.busy, *s3.find_task(2), 19), Ratio(19));
}

// Dispatch floor: no segment runs before its arrival or its eligibility time.
TEST(Enforcement, DispatchFloorOnBuiltins) {
    for (const auto& b : builtin_scenarios()) {
        if (b.scenario.config.enforcement == Enforcement::off) continue;
        auto trace = simulate(b.scenario);
        for (const auto& s : trace.segments) {
            if (!s.first_dispatch) continue;
            EXPECT_GE(*s.first_dispatch, s.arrival) << b.scenario.name;
            for (const auto& e : trace.eligibility)
                if (e.task == s.task && e.job == s.job && e.segment == s.segment && e.part == s.part &&
                    b.scenario.config.enforcement == Enforcement::on) {
                    EXPECT_GE(*s.first_dispatch, e.eligible) << b.scenario.name;
                }
        }
    }
}

TEST(Enforcement, EligibilityTimesSpacedByPeriod) {
    for (const auto& b : builtin_scenarios()) {
        auto trace = simulate(b.scenario);
        std::map<std::tuple<int, int, int>, Ratio> last;
        for (const auto& e : trace.eligibility) {
            auto key = std::tuple{e.task, e.segment, int(e.part)};
            auto it = last.find(key);
            if (it != last.end()) {
                EXPECT_GE(e.eligible - it->second, b.scenario.find_task(e.task)->period);
            }
            last[key] = e.eligible;
        }
    }
}
