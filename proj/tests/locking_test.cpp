#include <gtest/gtest.h>

#include "pe/repro.hpp"

using namespace pe;

namespace {

LockRequest req(int task, int priority, Ratio effective) {
    LockRequest r;
    r.resource = 1;
    r.task = task;
    r.job = 1;
    r.segment = 2;
    r.priority = priority;
    r.request = effective;
    r.effective = effective;
    r.cs_length = 2;
    return r;
}

}  // namespace

TEST(EffectiveTime, BySemantics) {
    EXPECT_EQ(request_effective_time(9, LockSemantics::at_eligibility, Ratio(10)), Ratio(10));
    EXPECT_EQ(request_effective_time(9, LockSemantics::at_eligibility, Ratio(5)), Ratio(9));
    EXPECT_EQ(request_effective_time(9, LockSemantics::at_eligibility, std::nullopt), Ratio(9));
    EXPECT_EQ(request_effective_time(Ratio(9) - Ratio(1, 100), LockSemantics::immediate, Ratio(11)),
              Ratio(9) - Ratio(1, 100));
    EXPECT_EQ(request_effective_time(1, LockSemantics::distributed, Ratio(5)), Ratio(1));
}

TEST(CsPlacement, BySemantics) {
    auto d = cs_execution_semantics(LockSemantics::distributed);
    EXPECT_TRUE(d.on_sync_processor);
    EXPECT_FALSE(d.gated_by_eligibility);
    auto x = cs_execution_semantics(LockSemantics::exempt_cs);
    EXPECT_FALSE(x.on_sync_processor);
    EXPECT_FALSE(x.gated_by_eligibility);
    EXPECT_FALSE(x.counts_toward_busy);
    auto i = cs_execution_semantics(LockSemantics::immediate);
    EXPECT_TRUE(i.gated_by_eligibility);
    EXPECT_TRUE(i.counts_toward_busy);
}

TEST(ResourceState, FifoGrantsEarliestEffective) {
    std::vector<LockRequest> log = {req(2, 2, 9), req(1, 1, Ratio(9) - Ratio(1, 100))};
    log[1].seq = 1;
    ResourceState r(1, QueuePolicy::fifo);
    r.enqueue(0);
    r.enqueue(1);
    auto g = r.grant_next(9, log);
    ASSERT_TRUE(g);
    EXPECT_EQ(log[*g].task, 1);
    EXPECT_FALSE(r.grant_next(9, log));  // held
    r.release(11, log);
    EXPECT_EQ(*log[1].release, Ratio(11));
    auto g2 = r.grant_next(11, log);
    ASSERT_TRUE(g2);
    EXPECT_EQ(log[*g2].task, 2);
}

TEST(ResourceState, PriorityQueueOrdering) {
    std::vector<LockRequest> log = {req(2, 2, 3), req(1, 1, 4)};
    log[1].seq = 1;
    ResourceState pq(1, QueuePolicy::priority);
    pq.enqueue(0);
    pq.enqueue(1);
    EXPECT_EQ(log[*pq.grant_next(5, log)].task, 1);

    ResourceState fifo(1, QueuePolicy::fifo);
    std::vector<LockRequest> log2 = log;
    log2[0].grant.reset();
    log2[1].grant.reset();
    fifo.enqueue(0);
    fifo.enqueue(1);
    EXPECT_EQ(log2[*fifo.grant_next(5, log2)].task, 2);
}

TEST(ResourceState, SimultaneousRequestsFavourPriority) {
    for (auto policy : {QueuePolicy::fifo, QueuePolicy::priority}) {
        std::vector<LockRequest> log = {req(2, 2, 1), req(1, 1, 1)};
        log[1].seq = 1;
        ResourceState r(1, policy);
        r.enqueue(0);
        r.enqueue(1);
        EXPECT_EQ(log[*r.grant_next(1, log)].task, 1);
    }
}

TEST(ResourceState, NotYetEffectiveIsNotGranted) {
    std::vector<LockRequest> log = {req(2, 2, 10)};
    ResourceState r(1, QueuePolicy::fifo);
    r.enqueue(0);
    EXPECT_FALSE(r.grant_next(9, log));
    EXPECT_TRUE(r.grant_next(10, log));
}

TEST(ResourceState, EmptyQueueOnRelease) {
    std::vector<LockRequest> log;
    ResourceState r(1, QueuePolicy::fifo);
    r.release(3, log);
    EXPECT_TRUE(r.free());
    EXPECT_FALSE(r.grant_next(3, log));
}

TEST(LockManager, SerializedModeRunsOneSectionAtATime) {
    LockManager m(QueuePolicy::fifo, true);
    LockRequest a = req(1, 1, 1);
    LockRequest b = req(2, 2, 1);
    b.resource = 2;
    m.issue(a);
    m.issue(b);
    auto g = m.grant_all(1);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(m.at(g[0]).task, 1);
    EXPECT_TRUE(m.grant_all(2).empty());
    m.release(1, 3);
    auto g2 = m.grant_all(3);
    ASSERT_EQ(g2.size(), 1u);
    EXPECT_EQ(m.at(g2[0]).task, 2);

    LockManager shared(QueuePolicy::fifo, false);
    shared.issue(a);
    shared.issue(b);
    EXPECT_EQ(shared.grant_all(1).size(), 2u);
}

TEST(LockEngine, UncontendedWithoutEnforcement) {
    Scenario sc;
    sc.tasks = {builders::task(1, 1, 10, {builders::seg(1), builders::cs_seg(3, 1, 2, 1)})};
    sc.config.horizon = 10;
    auto trace = simulate(sc);
    ASSERT_EQ(trace.locks.size(), 1u);
    const auto& l = trace.locks[0];
    EXPECT_EQ(l.request, Ratio(2));  // 1 unit of segment 1, then 1 unit before the request
    EXPECT_EQ(l.effective, l.request);
    EXPECT_EQ(*l.grant, l.request);
    EXPECT_EQ(*l.release, Ratio(4));
    EXPECT_EQ(*trace.jobs[0].completion, Ratio(4));
}

TEST(LockEngine, NoRequestsNoLockEvents) {
    auto trace = simulate(builders::fig2_enforce().scenario);
    EXPECT_TRUE(trace.locks.empty());
    for (const auto& e : trace.events) {
        EXPECT_NE(e.kind, EventKind::lock_request);
        EXPECT_NE(e.kind, EventKind::lock_grant);
        EXPECT_NE(e.kind, EventKind::lock_release);
    }
}

TEST(LockEngine, Fig5RequestEntersContentionAtEligibility) {
    auto trace = simulate(builders::fig5_lock_at_eligibility().scenario);
    const LockRequest* r = nullptr;
    for (const auto& l : trace.locks)
        if (l.task == 2 && l.job == 2) r = &l;
    ASSERT_TRUE(r);
    EXPECT_EQ(r->request, Ratio(9));
    EXPECT_EQ(r->effective, Ratio(10));
    EXPECT_EQ(*r->grant, Ratio(11));
    for (const auto& l : trace.locks)
        if (l.grant) {
            const auto* e = trace.find_eligibility(l.task, l.job, l.segment);
            ASSERT_TRUE(e);
            EXPECT_GE(*l.grant, e->eligible);
        }
}

TEST(LockEngine, Fig6LockHeldBeforeEligibility) {
    const Ratio eps(1, 100);
    auto trace = simulate(builders::fig6_lock_immediate(eps).scenario);
    const LockRequest* r = nullptr;
    for (const auto& l : trace.locks)
        if (l.task == 1 && l.job == 2) r = &l;
    ASSERT_TRUE(r);
    EXPECT_EQ(*r->grant, Ratio(9) - eps);
    const auto* e = trace.find_eligibility(1, 2, 2);
    EXPECT_EQ(e->eligible, Ratio(11) - eps);
    // No critical-section execution before eligibility.
    for (const auto& x : trace.exec)
        if (x.task == 1 && x.job == 2 && x.segment == 2) {
            EXPECT_GE(x.start, e->eligible);
        }
}

TEST(LockEngine, Fig7RemoteSection) {
    auto trace = simulate(builders::fig7_distributed().scenario);
    bool found = false;
    for (const auto& x : trace.exec)
        if (x.processor == 3 && x.task == 2 && x.job == 1 && x.segment == 2) {
            EXPECT_EQ(x.start, Ratio(3));
            EXPECT_EQ(x.end, Ratio(5));
            found = true;
        }
    EXPECT_TRUE(found);
    bool resumed = false;
    for (const auto& s : trace.segments)
        if (s.task == 2 && s.job == 1 && s.segment == 2 && s.part == SegmentPart::whole) {
            EXPECT_EQ(s.arrival, Ratio(5));
            resumed = true;
        }
    EXPECT_TRUE(resumed);
}

TEST(LockEngine, ExemptSectionsNeverDelayed) {
    for (auto sc : {builders::fig7_distributed().scenario, builders::fig8_exempt_cs().scenario}) {
        auto trace = simulate(sc);
        for (const auto& e : trace.eligibility) EXPECT_NE(e.part, SegmentPart::critical);
        for (const auto& ev : trace.events)
            if (ev.kind == EventKind::segment_eligible) {
                EXPECT_EQ(ev.detail.find("part=critical"), std::string::npos) << ev.detail;
            }
        // Each critical section starts executing the moment its lock is granted.
        for (const auto& l : trace.locks) {
            if (!l.grant) continue;
            Ratio first = trace.horizon;
            for (const auto& x : trace.exec)
                if (x.critical && x.task == l.task && x.job == l.job && x.segment == l.segment) first = min(first, x.start);
            EXPECT_EQ(first, *l.grant) << sc.name << " task " << l.task << " job " << l.job;
        }
    }
}
