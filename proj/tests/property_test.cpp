#include <gtest/gtest.h>

#include "pe/io.hpp"
#include "pe/repro.hpp"
#include "support/random_scenarios.hpp"

using namespace pe;
using namespace pe::testgen;

TEST(Property, EnforcerIsInvisibleWithoutSuspensions) {
    Rng rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        Scenario sc = plain_scenario(rng);
        sc.config.enforcement = Enforcement::off;
        std::string off = trace_to_json(simulate(sc)).dump();
        for (Enforcement e : {Enforcement::on, Enforcement::on_idle_eligible}) {
            sc.config.enforcement = e;
            ASSERT_EQ(trace_to_json(simulate(sc)).dump(), off) << "set " << i << "\n" << serialize_scenario(sc);
        }
    }
}

TEST(Property, MutualExclusionAndPriorityCompliance) {
    Rng rng(7321);
    for (int i = 0; i < 1000; ++i) {
        Scenario sc = lock_scenario(rng);
        ASSERT_TRUE(validate_scenario(sc).ok()) << validate_scenario(sc).summary();
        auto trace = simulate(sc);
        auto mx = mutual_exclusion_violation(trace);
        ASSERT_FALSE(mx) << *mx << "\n" << serialize_scenario(sc);
        auto pv = priority_violation(trace);
        ASSERT_FALSE(pv) << *pv << "\n" << serialize_scenario(sc);
    }
}

TEST(Property, BruteForceBoundsSporadicRuns) {
    Rng rng(99);
    int sets = 0;
    while (sets < 100) {
        auto tasks = special_case_set(rng);
        auto res = wcrt_bruteforce_special_case(tasks);
        // A job that misses carries its backlog into the next one, which the
        // single-job search does not cover.
        if (!res.schedulable) continue;
        ++sets;
        const TaskSpec& ss = tasks.back();
        const Ratio wcrt = *res.find(ss.id)->response;
        for (int run = 0; run < 20; ++run) {
            auto sc = scripted_run(rng, tasks, 6);
            auto trace = simulate(sc);
            for (const auto& j : trace.jobs) {
                if (j.task != ss.id) continue;
                if (j.completion) {
                    ASSERT_LE(*j.completion - j.release, wcrt) << serialize_scenario(sc);
                } else {
                    ASSERT_GT(j.release + wcrt, trace.horizon) << serialize_scenario(sc);
                }
            }
        }
    }
}

TEST(Property, ScenarioRoundTrip) {
    for (Ratio eps : {Ratio(1, 10), Ratio(1, 100), Ratio(1, 1000)}) {
        for (const auto& b : builtin_scenarios(eps)) {
            std::string text = serialize_scenario(b.scenario, b.assertions);
            auto doc = parse_scenario(text);
            ASSERT_EQ(doc.scenario, b.scenario) << b.scenario.name;
            ASSERT_EQ(doc.assertions, b.assertions) << b.scenario.name;
            ASSERT_EQ(serialize_scenario(doc.scenario, doc.assertions), text);
        }
    }
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Scenario sc = lock_scenario(rng);
        ASSERT_EQ(parse_scenario(serialize_scenario(sc)).scenario, sc);
    }
}

TEST(Property, Determinism) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Scenario sc = lock_scenario(rng);
        ASSERT_EQ(trace_to_json(simulate(sc)).dump(), trace_to_json(simulate(sc)).dump());
    }
    for (const auto& b : builtin_scenarios())
        EXPECT_EQ(events_to_jsonl(simulate(b.scenario)), events_to_jsonl(simulate(b.scenario)));
}

// Completed jobs executed exactly their actual demand, split across the
// application processor and, for remote sections, the sync processor.
TEST(Property, ExecutionConservation) {
    Rng rng(4242);
    for (int i = 0; i < 300; ++i) {
        Scenario sc = lock_scenario(rng);
        auto trace = simulate(sc);
        std::map<std::pair<int, int>, Ratio> executed;
        for (const auto& x : trace.exec) executed[{x.task, x.job}] += x.end - x.start;
        for (const auto& j : trace.jobs) {
            if (!j.completion) continue;
            const TaskSpec* t = sc.find_task(j.task);
            Ratio demand = t->total_wcet();
            for (const auto& b : sc.behaviors)
                if (b.task == j.task && b.job == j.job) {
                    demand = 0;
                    for (const auto& e : b.actual_exec) demand += e;
                }
            const Ratio ran = executed[{j.task, j.job}];
            ASSERT_EQ(ran, demand) << "task " << j.task << " job " << j.job << "\n"
                                                         << serialize_scenario(sc);
        }
    }
}

TEST(Property, Fig6MissIndependentOfEpsilon) {
    for (Ratio eps : {Ratio(1, 10), Ratio(1, 100), Ratio(1, 1000)}) {
        auto trace = simulate(builders::fig6_lock_immediate(eps).scenario);
        auto misses = trace.misses();
        ASSERT_EQ(misses.size(), 1u) << eps;
        EXPECT_EQ(misses[0]->task, 1);
        EXPECT_EQ(misses[0]->job, 3);
        EXPECT_EQ(misses[0]->time, Ratio(24));
    }
}
