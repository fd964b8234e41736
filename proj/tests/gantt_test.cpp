#include <gtest/gtest.h>

#include "pe/gantt.hpp"
#include "pe/repro.hpp"

using namespace pe;

namespace {

const GanttRow* row(const std::vector<GanttRow>& rows, const std::string& label) {
    for (const auto& r : rows)
        if (r.label == label) return &r;
    return nullptr;
}

}  // namespace

TEST(Gantt, Fig1Rows) {
    auto trace = simulate(builders::fig1_no_enforce().scenario);
    auto rows = gantt_rows(trace, 1);
    const GanttRow* t3 = row(rows, "tau3@P1");
    ASSERT_TRUE(t3);
    // Read off the reproduced trace: released at 5, runs [11,12) and [14,16).
    EXPECT_EQ(t3->cells, ".....rrrrrr#rr##....");
    EXPECT_EQ(t3->markers, "     ^         !");
    const GanttRow* t2 = row(rows, "tau2@P1");
    EXPECT_EQ(t2->cells, "#ssssrrr###s##......");
}

TEST(Gantt, RenderIsDeterministicAndLabelled) {
    auto trace = simulate(builders::fig7_distributed().scenario);
    std::string a = render_gantt(trace, 1);
    EXPECT_EQ(a, render_gantt(simulate(builders::fig7_distributed().scenario), 1));
    EXPECT_NE(a.find("sync@P3  .1122......22...22........1122."), std::string::npos) << a;
    EXPECT_EQ(a.rfind("resolution 1, horizon 31\n", 0), 0u);
}

TEST(Gantt, EmptyTraceIsHeaderOnly) {
    ScheduleTrace empty;
    empty.horizon = 10;
    std::string out = render_gantt(empty, 1);
    EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 3);
    EXPECT_TRUE(gantt_rows(empty, 1).empty());
}

TEST(Gantt, EpsilonOffsetsVisibleAtFineResolution) {
    const Ratio eps(1, 100);
    auto trace = simulate(builders::fig6_lock_immediate(eps).scenario);
    auto coarse = gantt_rows(trace, 1);
    auto fine = gantt_rows(trace, eps);
    const GanttRow* c2 = row(coarse, "tau2@P2");
    const GanttRow* f2 = row(fine, "tau2@P2");
    ASSERT_TRUE(c2 && f2);
    EXPECT_EQ(c2->cells[0], '*');  // tau2 job 1 ends its first segment at 1 - eps
    EXPECT_EQ(f2->cells.size(), 2400u);
    EXPECT_EQ(f2->cells[98], '#');
    EXPECT_EQ(f2->cells[99], '=');  // critical section begins at 99/100
    EXPECT_EQ(f2->cells.find('*'), std::string::npos);
}

TEST(Gantt, RejectsNonPositiveResolution) {
    ScheduleTrace t;
    t.horizon = 1;
    EXPECT_THROW(render_gantt(t, 0), InputError);
}
