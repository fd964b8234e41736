#include <gtest/gtest.h>

#include "pe/io.hpp"

using namespace pe;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

const char* kMinimal = R"({
  "name": "tiny",
  "config": {"horizon": "10", "enforcement": "on"},
  "tasks": [
    {"id": 1, "priority": 1, "period": "5", "segments": [{"wcet": "1/3"}]}
  ]
})";

}  // namespace

TEST(ScenarioIo, RoundTripFig2) {
    auto b = builders::fig2_enforce();
    std::string text = serialize_scenario(b.scenario, b.assertions);
    auto doc = parse_scenario(text);
    EXPECT_EQ(doc.scenario, b.scenario);
    EXPECT_EQ(doc.assertions, b.assertions);
    EXPECT_EQ(serialize_scenario(doc.scenario, doc.assertions), text);
}

TEST(ScenarioIo, RoundTripAllBuiltins) {
    for (const auto& b : builtin_scenarios()) {
        auto doc = parse_scenario(serialize_scenario(b.scenario, b.assertions));
        EXPECT_EQ(doc.scenario, b.scenario) << b.scenario.name;
        EXPECT_EQ(doc.assertions, b.assertions) << b.scenario.name;
    }
}

TEST(ScenarioIo, DefaultsAndRationals) {
    auto doc = parse_scenario(kMinimal);
    const auto& t = doc.scenario.tasks.at(0);
    EXPECT_EQ(t.segments[0].wcet, Ratio(1, 3));
    EXPECT_EQ(t.deadline, Ratio(5));
    EXPECT_EQ(t.processor, 1);
    EXPECT_EQ(t.name, "tau1");
    EXPECT_EQ(doc.scenario.config.enforcement, Enforcement::on);
    EXPECT_EQ(doc.scenario.config.horizon, Ratio(10));
}

TEST(ScenarioIo, IntegersAcceptedAsRationals) {
    std::string text = kMinimal;
    text.replace(text.find("\"5\""), 3, "5");
    EXPECT_EQ(parse_scenario(text).scenario.tasks[0].period, Ratio(5));
}

TEST(ScenarioIo, UnknownLockSemanticsNamesValidValues) {
    std::string text = kMinimal;
    text.replace(text.find("\"enforcement\": \"on\""), 19, "\"lock_semantics\": \"eager\"");
    std::string msg = error_of(text);
    EXPECT_NE(msg.find("scenario.config.lock_semantics"), std::string::npos) << msg;
    for (const char* v : {"at-eligibility", "immediate", "exempt-cs", "distributed"})
        EXPECT_NE(msg.find(v), std::string::npos) << msg;
}

TEST(ScenarioIo, FieldPreciseErrors) {
    std::string bad_ratio = kMinimal;
    bad_ratio.replace(bad_ratio.find("\"1/3\""), 5, "\"1/0\"");
    EXPECT_NE(error_of(bad_ratio).find("scenario.tasks[0].segments[0].wcet"), std::string::npos) << error_of(bad_ratio);

    std::string typo = kMinimal;
    typo.replace(typo.find("\"period\""), 8, "\"perod\"");
    std::string msg = error_of(typo);
    EXPECT_NE(msg.find("scenario.tasks[0]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("perod"), std::string::npos) << msg;

    std::string missing = kMinimal;
    missing.replace(missing.find("\"horizon\": \"10\", "), 17, "");
    EXPECT_NE(error_of(missing).find("missing field \"horizon\""), std::string::npos) << error_of(missing);
}

TEST(ScenarioIo, MalformedJsonReportsLine) {
    std::string msg = error_of("{\n  \"name\": \"x\",\n  oops\n}");
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ScenarioIo, SemanticValidation) {
    std::string text = kMinimal;
    text.replace(text.find("\"1/3\""), 5, "\"0\"");
    EXPECT_NE(error_of(text).find("wcet must be positive"), std::string::npos);
}

TEST(TraceIo, JsonLinesAreStableAndOrdered) {
    auto t1 = simulate(builders::fig6_lock_immediate().scenario);
    auto t2 = simulate(builders::fig6_lock_immediate().scenario);
    std::string a = events_to_jsonl(t1);
    EXPECT_EQ(a, events_to_jsonl(t2));
    std::size_t lines = std::count(a.begin(), a.end(), '\n');
    EXPECT_EQ(lines, t1.events.size());
    auto first = Json::parse(a.substr(0, a.find('\n')));
    std::vector<std::string> keys;
    for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"time", "kind", "processor", "task", "job", "segment", "priority", "detail"}));
    EXPECT_EQ(first["time"], "0/1");
}

TEST(TraceIo, FullTraceDocument) {
    auto trace = simulate(builders::fig5_lock_at_eligibility().scenario);
    Json j = trace_to_json(trace);
    EXPECT_EQ(j["horizon"], "28/1");
    EXPECT_EQ(j["locks"].size(), trace.locks.size());
    bool miss = false;
    for (const auto& job : j["jobs"])
        if (job["missed"].get<bool>()) {
            EXPECT_EQ(job["deadline"], "28/1");
            miss = true;
        }
    EXPECT_TRUE(miss);
}

TEST(TraceIo, EligibilityTableIsOptIn) {
    auto trace = simulate(builders::fig2_enforce().scenario);
    EXPECT_FALSE(trace_to_json(trace).contains("eligibility"));
    Json full = trace_to_json(trace, {true});
    ASSERT_TRUE(full.contains("eligibility"));
    EXPECT_EQ(full["eligibility"].size(), trace.eligibility.size());
    std::vector<std::string> keys;
    for (auto it = full.begin(); it != full.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"horizon", "processors", "sync_processor", "jobs", "eligibility", "locks",
                                              "exec", "events"}));
}

TEST(ReportIo, AnalysisReport) {
    std::vector<TaskSpec> tasks = {builders::task(1, 1, 10, {builders::seg(2)}),
                                   builders::task(2, 2, 11, {builders::seg(1), builders::seg(1, 6)})};
    Json j = to_json(wcrt_bruteforce_special_case(tasks), "bruteforce");
    EXPECT_EQ(j["tasks"][1]["response"], "10/1");
    EXPECT_EQ(j["tasks"][1]["segments"][0]["wcrt"], "3/1");
    EXPECT_EQ(j["tasks"][1]["segments"][1]["latest_arrival"], "9/1");
    EXPECT_TRUE(j["search"]["grid_searched"].get<bool>());
}
