#pragma once

// JSON scenario files, trace export and analysis reports. Every time value is
// a "num/den" string; field order is fixed on output.

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pe/analysis.hpp"
#include "pe/repro.hpp"

namespace pe {

using Json = nlohmann::ordered_json;

namespace io_detail {

class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const { throw InputError(path_ + ": " + what); }

    const Json& json() const { return j_; }
    const std::string& path() const { return path_; }

    void expect_object(std::initializer_list<const char*> allowed) const {
        if (!j_.is_object()) fail("expected an object");
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!ok.count(it.key())) fail("unknown field \"" + it.key() + "\"");
    }

    bool has(const char* key) const { return j_.contains(key); }

    Reader at(const char* key) const {
        if (!j_.contains(key)) fail(std::string("missing field \"") + key + "\"");
        return Reader(j_.at(key), path_ + "." + key);
    }

    Reader at(std::size_t i) const { return Reader(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

    std::size_t size() const {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    Ratio ratio() const {
        if (j_.is_number_integer()) return Ratio(j_.get<std::int64_t>());
        if (!j_.is_string()) fail("expected a rational such as \"3/2\"");
        try {
            return Ratio::parse(j_.get<std::string>());
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    int integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }

    bool boolean() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }

    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    std::vector<Ratio> ratios() const {
        std::vector<Ratio> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).ratio());
        return out;
    }

    template <class F>
    auto parsed(F&& f) const -> decltype(f(std::string())) {
        std::string s = string();
        try {
            return f(s);
        } catch (const InputError& e) {
            fail(e.what());
        }
    }

private:
    const Json& j_;
    std::string path_;
};

inline Json ratios_json(const std::vector<Ratio>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Scenario

inline Json to_json(const TaskSpec& t) {
    Json j;
    j["id"] = t.id;
    j["name"] = t.name;
    j["priority"] = t.priority;
    j["processor"] = t.processor;
    j["period"] = t.period.str();
    j["deadline"] = t.deadline.str();
    j["jitter"] = t.jitter.str();
    if (const auto* p = std::get_if<PeriodicArrival>(&t.arrival)) {
        j["arrival"] = {{"kind", "periodic"}, {"offset", p->offset.str()}};
    } else {
        const auto& s = std::get<ScriptedArrival>(t.arrival);
        j["arrival"] = {{"kind", "scripted"}, {"releases", io_detail::ratios_json(s.releases)}};
    }
    Json segs = Json::array();
    for (const auto& s : t.segments) {
        Json js;
        js["wcet"] = s.wcet.str();
        js["max_susp_before"] = s.max_susp_before.str();
        if (s.request)
            js["request"] = {{"resource", s.request->resource},
                             {"cs_length", s.request->cs_length.str()},
                             {"offset", s.request->offset.str()}};
        segs.push_back(js);
    }
    j["segments"] = segs;
    return j;
}

inline Json to_json(const JobBehavior& b) {
    Json j;
    j["task"] = b.task;
    j["job"] = b.job;
    j["dynamic"] = b.dynamic;
    j["actual_susp"] = io_detail::ratios_json(b.actual_susp);
    j["actual_exec"] = io_detail::ratios_json(b.actual_exec);
    return j;
}

inline Json to_json(const SystemConfig& c) {
    Json j;
    j["processors"] = c.processors;
    j["enforcement"] = to_string(c.enforcement);
    j["lock_semantics"] = to_string(c.lock_semantics);
    if (c.sync_processor) j["sync_processor"] = *c.sync_processor;
    j["queue"] = to_string(c.queue);
    j["horizon"] = c.horizon.str();
    return j;
}

inline Json to_json(const Assertion& a) {
    Json j;
    j["kind"] = to_string(a.kind);
    j["task"] = a.task;
    j["job"] = a.job;
    j["segment"] = a.segment;
    j["processor"] = a.processor;
    j["value"] = a.value.str();
    j["until"] = a.until.str();
    j["flag"] = a.flag;
    return j;
}

inline Json to_json(const Scenario& sc, const std::vector<Assertion>& assertions = {}) {
    Json j;
    j["name"] = sc.name;
    j["description"] = sc.description;
    j["config"] = to_json(sc.config);
    Json tasks = Json::array();
    for (const auto& t : sc.tasks) tasks.push_back(to_json(t));
    j["tasks"] = tasks;
    Json beh = Json::array();
    for (const auto& b : sc.behaviors) beh.push_back(to_json(b));
    j["behaviors"] = beh;
    Json rel = Json::array();
    for (const auto& [task, r] : sc.releases) rel.push_back({{"task", task}, {"releases", io_detail::ratios_json(r)}});
    j["releases"] = rel;
    Json as = Json::array();
    for (const auto& a : assertions) as.push_back(to_json(a));
    j["assertions"] = as;
    return j;
}

namespace io_detail {

inline TaskSpec read_task(const Reader& r) {
    r.expect_object({"id", "name", "priority", "processor", "period", "deadline", "jitter", "arrival", "segments"});
    TaskSpec t;
    t.id = r.at("id").integer();
    t.name = r.has("name") ? r.at("name").string() : "tau" + std::to_string(t.id);
    t.priority = r.at("priority").integer();
    t.processor = r.has("processor") ? r.at("processor").integer() : 1;
    t.period = r.at("period").ratio();
    t.deadline = r.has("deadline") ? r.at("deadline").ratio() : t.period;
    t.jitter = r.has("jitter") ? r.at("jitter").ratio() : Ratio(0);
    if (r.has("arrival")) {
        Reader a = r.at("arrival");
        a.expect_object({"kind", "offset", "releases"});
        std::string kind = a.at("kind").string();
        if (kind == "periodic") {
            t.arrival = PeriodicArrival{a.has("offset") ? a.at("offset").ratio() : Ratio(0)};
        } else if (kind == "scripted") {
            t.arrival = ScriptedArrival{a.at("releases").ratios()};
        } else {
            a.at("kind").fail("unknown arrival kind \"" + kind + "\" (expected periodic, scripted)");
        }
    }
    Reader segs = r.at("segments");
    for (std::size_t i = 0; i < segs.size(); ++i) {
        Reader s = segs.at(i);
        s.expect_object({"wcet", "max_susp_before", "request"});
        Segment seg;
        seg.wcet = s.at("wcet").ratio();
        seg.max_susp_before = s.has("max_susp_before") ? s.at("max_susp_before").ratio() : Ratio(0);
        if (s.has("request")) {
            Reader q = s.at("request");
            q.expect_object({"resource", "cs_length", "offset"});
            seg.request = ResourceRequest{q.at("resource").integer(), q.at("cs_length").ratio(),
                                          q.has("offset") ? q.at("offset").ratio() : Ratio(0)};
        }
        t.segments.push_back(seg);
    }
    return t;
}

inline JobBehavior read_behavior(const Reader& r) {
    r.expect_object({"task", "job", "dynamic", "actual_susp", "actual_exec"});
    JobBehavior b;
    b.task = r.at("task").integer();
    b.job = r.at("job").integer();
    b.dynamic = r.has("dynamic") && r.at("dynamic").boolean();
    if (r.has("actual_susp")) b.actual_susp = r.at("actual_susp").ratios();
    if (r.has("actual_exec")) b.actual_exec = r.at("actual_exec").ratios();
    return b;
}

inline SystemConfig read_config(const Reader& r) {
    r.expect_object({"processors", "enforcement", "lock_semantics", "sync_processor", "queue", "horizon"});
    SystemConfig c;
    if (r.has("processors")) {
        Reader p = r.at("processors");
        c.processors.clear();
        for (std::size_t i = 0; i < p.size(); ++i) c.processors.push_back(p.at(i).integer());
    }
    if (r.has("enforcement")) c.enforcement = r.at("enforcement").parsed(parse_enforcement);
    if (r.has("lock_semantics")) c.lock_semantics = r.at("lock_semantics").parsed(parse_lock_semantics);
    if (r.has("sync_processor")) c.sync_processor = r.at("sync_processor").integer();
    if (r.has("queue")) c.queue = r.at("queue").parsed(parse_queue_policy);
    c.horizon = r.at("horizon").ratio();
    return c;
}

inline Assertion read_assertion(const Reader& r) {
    r.expect_object({"kind", "task", "job", "segment", "processor", "value", "until", "flag"});
    Assertion a;
    a.kind = r.at("kind").parsed(parse_assertion_kind);
    if (r.has("task")) a.task = r.at("task").integer();
    if (r.has("job")) a.job = r.at("job").integer();
    if (r.has("segment")) a.segment = r.at("segment").integer();
    if (r.has("processor")) a.processor = r.at("processor").integer();
    if (r.has("value")) a.value = r.at("value").ratio();
    if (r.has("until")) a.until = r.at("until").ratio();
    if (r.has("flag")) a.flag = r.at("flag").boolean();
    return a;
}

}  // namespace io_detail

struct ScenarioDocument {
    Scenario scenario;
    std::vector<Assertion> assertions;
};

/// Builds a scenario from parsed JSON. Errors name the offending field path.
/// The result is validated like any scenario handed to the engine.
inline ScenarioDocument scenario_from_json(const Json& j) {
    using io_detail::Reader;
    Reader r(j, "scenario");
    r.expect_object({"name", "description", "config", "tasks", "behaviors", "releases", "assertions"});
    ScenarioDocument doc;
    Scenario& sc = doc.scenario;
    if (r.has("name")) sc.name = r.at("name").string();
    if (r.has("description")) sc.description = r.at("description").string();
    sc.config = io_detail::read_config(r.at("config"));
    Reader tasks = r.at("tasks");
    for (std::size_t i = 0; i < tasks.size(); ++i) sc.tasks.push_back(io_detail::read_task(tasks.at(i)));
    if (r.has("behaviors")) {
        Reader b = r.at("behaviors");
        for (std::size_t i = 0; i < b.size(); ++i) sc.behaviors.push_back(io_detail::read_behavior(b.at(i)));
    }
    if (r.has("releases")) {
        Reader rel = r.at("releases");
        for (std::size_t i = 0; i < rel.size(); ++i) {
            Reader e = rel.at(i);
            e.expect_object({"task", "releases"});
            int task = e.at("task").integer();
            if (sc.releases.count(task)) e.at("task").fail("duplicate release override for task " + std::to_string(task));
            sc.releases[task] = e.at("releases").ratios();
        }
    }
    if (r.has("assertions")) {
        Reader a = r.at("assertions");
        for (std::size_t i = 0; i < a.size(); ++i) doc.assertions.push_back(io_detail::read_assertion(a.at(i)));
    }
    ValidationReport rep = validate_scenario(sc);
    if (!rep.ok()) throw InputError("scenario \"" + sc.name + "\" is invalid:\n" + rep.summary());
    return doc;
}

inline ScenarioDocument parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Report the line rather than the byte offset.
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
        throw InputError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    return scenario_from_json(j);
}

inline std::string serialize_scenario(const Scenario& sc, const std::vector<Assertion>& assertions = {}) {
    return to_json(sc, assertions).dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open \"" + path + "\"");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline ScenarioDocument load_scenario(const std::string& path) {
    try {
        return parse_scenario(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Trace

inline Json to_json(const Event& e) {
    Json j;
    j["time"] = e.time.str();
    j["kind"] = to_string(e.kind);
    j["processor"] = e.processor;
    j["task"] = e.task;
    j["job"] = e.job;
    j["segment"] = e.segment;
    j["priority"] = e.priority;
    j["detail"] = e.detail;
    return j;
}

inline const char* to_string(SegmentPart p) {
    switch (p) {
        case SegmentPart::whole: return "whole";
        case SegmentPart::critical: return "critical";
        case SegmentPart::remainder: return "remainder";
    }
    return "?";
}

struct TraceJsonOptions {
    bool eligibility = false;  // include the enforcer's eligibility table
};

inline Json trace_to_json(const ScheduleTrace& t, const TraceJsonOptions& options = {}) {
    auto opt = [](const std::optional<Ratio>& r) { return r ? Json(r->str()) : Json(nullptr); };
    Json j;
    j["horizon"] = t.horizon.str();
    j["processors"] = t.processors;
    j["sync_processor"] = t.sync_processor ? Json(*t.sync_processor) : Json(nullptr);
    Json jobs = Json::array();
    for (const auto& r : t.jobs)
        jobs.push_back({{"task", r.task},
                        {"job", r.job},
                        {"processor", r.processor},
                        {"release", r.release.str()},
                        {"deadline", r.absolute_deadline.str()},
                        {"completion", opt(r.completion)},
                        {"missed", r.missed}});
    j["jobs"] = jobs;
    if (options.eligibility) {
        Json el = Json::array();
        for (const auto& e : t.eligibility)
            el.push_back({{"task", e.task},
                          {"job", e.job},
                          {"segment", e.segment},
                          {"part", to_string(e.part)},
                          {"arrival", e.arrival.str()},
                          {"floor", e.floor.str()},
                          {"busy_start", e.busy_start.str()},
                          {"eligible", e.eligible.str()}});
        j["eligibility"] = el;
    }
    Json locks = Json::array();
    for (const auto& l : t.locks)
        locks.push_back({{"resource", l.resource},
                         {"task", l.task},
                         {"job", l.job},
                         {"segment", l.segment},
                         {"request", l.request.str()},
                         {"effective", l.effective.str()},
                         {"grant", opt(l.grant)},
                         {"release", opt(l.release)},
                         {"cs_length", l.cs_length.str()}});
    j["locks"] = locks;
    Json exec = Json::array();
    for (const auto& x : t.exec)
        exec.push_back({{"processor", x.processor},
                        {"task", x.task},
                        {"job", x.job},
                        {"segment", x.segment},
                        {"start", x.start.str()},
                        {"end", x.end.str()},
                        {"critical", x.critical}});
    j["exec"] = exec;
    Json ev = Json::array();
    for (const auto& e : t.events) ev.push_back(to_json(e));
    j["events"] = ev;
    return j;
}

/// One JSON object per line, in trace order.
inline std::string events_to_jsonl(const ScheduleTrace& t) {
    std::string out;
    for (const auto& e : t.events) out += to_json(e).dump() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Analysis report

inline Json to_json(const AnalysisResult& r, const std::string& analysis) {
    Json j;
    j["analysis"] = analysis;
    j["schedulable"] = r.schedulable;
    Json tasks = Json::array();
    for (const auto& t : r.tasks) {
        Json jt;
        jt["id"] = t.id;
        jt["name"] = t.name;
        jt["deadline"] = t.deadline.str();
        jt["response"] = t.response ? Json(t.response->str()) : Json(nullptr);
        jt["schedulable"] = t.schedulable;
        Json segs = Json::array();
        for (const auto& s : t.segments)
            segs.push_back({{"wcrt", s.wcrt.str()}, {"latest_arrival", s.latest_arrival.str()}});
        jt["segments"] = segs;
        tasks.push_back(jt);
    }
    j["tasks"] = tasks;
    if (r.search) {
        const auto& s = *r.search;
        j["search"] = {{"candidate_runs", s.candidate_runs},
                       {"candidate_wcrt", s.candidate_wcrt ? Json(s.candidate_wcrt->str()) : Json(nullptr)},
                       {"grid_searched", s.grid_searched},
                       {"grid_step", s.grid_step.str()},
                       {"grid_states", s.grid_states},
                       {"grid_wcrt", s.grid_wcrt ? Json(s.grid_wcrt->str()) : Json(nullptr)}};
    }
    return j;
}

inline Json to_json(const CheckReport& rep, const std::string& scenario) {
    Json j;
    j["scenario"] = scenario;
    j["passed"] = rep.passed();
    Json rs = Json::array();
    for (const auto& r : rep.results)
        rs.push_back({{"assertion", r.description}, {"passed", r.passed}, {"observed", r.observed}});
    j["results"] = rs;
    return j;
}

}  // namespace pe
