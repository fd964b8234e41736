#include <gtest/gtest.h>

#include "pe/repro.hpp"

using namespace pe;

namespace {

void expect_all(const BuiltinScenario& b) {
    ScheduleTrace trace = simulate(b.scenario);
    CheckReport rep = check_trace(trace, b.assertions);
    for (const auto& r : rep.results)
        EXPECT_TRUE(r.passed) << b.scenario.name << ": " << r.description << " (observed " << r.observed << ")";
}

}  // namespace

TEST(EngineScenarios, Fig1) { expect_all(builders::fig1_no_enforce()); }
TEST(EngineScenarios, Fig2) { expect_all(builders::fig2_enforce()); }
TEST(EngineScenarios, DynamicIncompat) { expect_all(builders::dyn_incompat()); }
TEST(EngineScenarios, Sec3NoEnforce) { expect_all(builders::sec3_no_enforce()); }
TEST(EngineScenarios, Sec3Enforce) { expect_all(builders::sec3_enforce()); }
TEST(EngineScenarios, Sec3IdleVariant) { expect_all(builders::sec3_enforce_idle_variant()); }
TEST(EngineScenarios, Fig5) { expect_all(builders::fig5_lock_at_eligibility()); }
TEST(EngineScenarios, Fig6) { expect_all(builders::fig6_lock_immediate()); }
TEST(EngineScenarios, Fig7) { expect_all(builders::fig7_distributed()); }
TEST(EngineScenarios, Fig8) { expect_all(builders::fig8_exempt_cs()); }
