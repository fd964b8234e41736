#pragma once

// Built-in counterexample scenarios and a small assertion harness that checks
// a trace against expected instants.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pe/engine.hpp"

namespace pe {

struct Assertion {
    enum class Kind {
        deadline_miss_at,        // task, job, value = miss time
        no_misses,               // flag
        dispatch_at,             // task, job, segment, value = first execution instant
        eligibility_equals,      // task, job, segment, value = ET
        response_time_equals,    // task, job, value
        lock_grant_at,           // task, job, segment, value = grant time
        segment_arrival_at,      // task, job, segment, value = arrival
        processor_idle_at,       // processor, value = instant with no job running
        processor_busy_between,  // processor, value = from, until = to
    };
    Kind kind = Kind::no_misses;
    int task = 0;
    int job = 0;
    int segment = 0;
    int processor = 0;
    Ratio value;
    Ratio until;
    bool flag = true;

    friend bool operator==(const Assertion&, const Assertion&) = default;
};

inline const char* to_string(Assertion::Kind k) {
    using K = Assertion::Kind;
    switch (k) {
        case K::deadline_miss_at: return "deadline_miss_at";
        case K::no_misses: return "no_misses";
        case K::dispatch_at: return "dispatch_at";
        case K::eligibility_equals: return "eligibility_equals";
        case K::response_time_equals: return "response_time_equals";
        case K::lock_grant_at: return "lock_grant_at";
        case K::segment_arrival_at: return "segment_arrival_at";
        case K::processor_idle_at: return "processor_idle_at";
        case K::processor_busy_between: return "processor_busy_between";
    }
    return "?";
}

inline Assertion::Kind parse_assertion_kind(const std::string& s) {
    using K = Assertion::Kind;
    for (K k : {K::deadline_miss_at, K::no_misses, K::dispatch_at, K::eligibility_equals, K::response_time_equals,
                K::lock_grant_at, K::segment_arrival_at, K::processor_idle_at, K::processor_busy_between})
        if (s == to_string(k)) return k;
    throw InputError("unknown assertion kind \"" + s + "\"");
}

struct AssertionResult {
    Assertion assertion;
    bool passed = false;
    std::string description;
    std::string observed;
};

struct CheckReport {
    std::vector<AssertionResult> results;
    bool passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

namespace detail {

inline std::string subject(const Assertion& a) {
    std::string s = "task " + std::to_string(a.task) + " job " + std::to_string(a.job);
    if (a.segment) s += " segment " + std::to_string(a.segment);
    return s;
}

inline AssertionResult evaluate(const ScheduleTrace& trace, const Assertion& a) {
    using K = Assertion::Kind;
    AssertionResult r{a, false, {}, {}};
    auto opt_str = [](const std::optional<Ratio>& v) { return v ? v->str() : std::string("none"); };
    switch (a.kind) {
        case K::deadline_miss_at: {
            r.description = "deadline miss of " + subject(a) + " at " + a.value.str();
            const JobRecord* j = trace.find_job(a.task, a.job);
            if (!j) {
                r.observed = "no such job in trace";
                break;
            }
            r.observed = j->missed ? "missed at " + j->absolute_deadline.str() : "no miss";
            r.passed = j->missed && j->absolute_deadline == a.value;
            break;
        }
        case K::no_misses: {
            r.description = "no deadline misses";
            auto m = trace.misses();
            r.observed = std::to_string(m.size()) + " misses";
            if (!m.empty())
                r.observed += " (first: task " + std::to_string(m.front()->task) + " at " + m.front()->time.str() + ")";
            r.passed = m.empty();
            break;
        }
        case K::dispatch_at: {
            r.description = "first execution of " + subject(a) + " at " + a.value.str();
            std::optional<Ratio> first;
            bool found = false;
            for (const auto& s : trace.segments) {
                if (s.task != a.task || s.job != a.job || s.segment != a.segment) continue;
                found = true;
                if (s.first_dispatch && (!first || *s.first_dispatch < *first)) first = s.first_dispatch;
            }
            r.observed = found ? opt_str(first) : "no such segment in trace";
            r.passed = first && *first == a.value;
            break;
        }
        case K::eligibility_equals: {
            r.description = "eligibility time of " + subject(a) + " = " + a.value.str();
            const EligibilityRecord* e = trace.find_eligibility(a.task, a.job, a.segment);
            r.observed = e ? e->eligible.str() : "no eligibility record";
            r.passed = e && e->eligible == a.value;
            break;
        }
        case K::response_time_equals: {
            r.description = "response time of " + subject(a) + " = " + a.value.str();
            const JobRecord* j = trace.find_job(a.task, a.job);
            if (!j) {
                r.observed = "no such job in trace";
                break;
            }
            std::optional<Ratio> resp;
            if (j->completion) resp = *j->completion - j->release;
            r.observed = resp ? resp->str() : "incomplete";
            r.passed = resp && *resp == a.value;
            break;
        }
        case K::lock_grant_at: {
            r.description = "lock grant to " + subject(a) + " at " + a.value.str();
            std::optional<Ratio> grant;
            bool found = false;
            for (const auto& l : trace.locks)
                if (l.task == a.task && l.job == a.job && l.segment == a.segment) {
                    found = true;
                    grant = l.grant;
                    break;
                }
            r.observed = found ? opt_str(grant) : "no such request";
            r.passed = grant && *grant == a.value;
            break;
        }
        case K::segment_arrival_at: {
            r.description = "arrival of " + subject(a) + " at " + a.value.str();
            std::optional<Ratio> arrival;
            for (const auto& s : trace.segments)
                if (s.task == a.task && s.job == a.job && s.segment == a.segment) {
                    arrival = s.arrival;
                    break;
                }
            r.observed = opt_str(arrival);
            r.passed = arrival && *arrival == a.value;
            break;
        }
        case K::processor_idle_at: {
            r.description = "processor " + std::to_string(a.processor) + " idle at " + a.value.str();
            const ExecInterval* running = nullptr;
            for (const auto& e : trace.exec)
                if (e.processor == a.processor && e.start <= a.value && a.value < e.end) running = &e;
            r.observed = running ? "running task " + std::to_string(running->task) : "idle";
            r.passed = running == nullptr;
            break;
        }
        case K::processor_busy_between: {
            r.description = "processor " + std::to_string(a.processor) + " busy over [" + a.value.str() + ", " +
                            a.until.str() + ")";
            Ratio cursor = a.value;
            bool progress = true;
            while (cursor < a.until && progress) {
                progress = false;
                for (const auto& e : trace.exec)
                    if (e.processor == a.processor && e.start <= cursor && cursor < e.end) {
                        cursor = e.end;
                        progress = true;
                    }
            }
            r.passed = !(cursor < a.until);
            r.observed = r.passed ? "busy" : "idle at " + cursor.str();
            break;
        }
    }
    return r;
}

}  // namespace detail

inline CheckReport check_trace(const ScheduleTrace& trace, const std::vector<Assertion>& assertions) {
    CheckReport rep;
    for (const auto& a : assertions) rep.results.push_back(detail::evaluate(trace, a));
    return rep;
}

// ---------------------------------------------------------------------------
// Built-in scenarios

struct BuiltinScenario {
    Scenario scenario;
    std::vector<Assertion> assertions;
};

namespace builders {

using K = Assertion::Kind;

inline Segment seg(Ratio wcet, Ratio susp_before = 0) { return Segment{wcet, susp_before, std::nullopt}; }

inline Segment cs_seg(Ratio wcet, int resource, Ratio cs_length, Ratio offset = 0, Ratio susp_before = 0) {
    return Segment{wcet, susp_before, ResourceRequest{resource, cs_length, offset}};
}

inline TaskSpec task(int id, int priority, Ratio period, std::vector<Segment> segments, int processor = 1,
                     ArrivalKind arrival = PeriodicArrival{}) {
    TaskSpec t;
    t.id = id;
    t.name = "tau" + std::to_string(id);
    t.priority = priority;
    t.period = period;
    t.deadline = period;
    t.segments = std::move(segments);
    t.processor = processor;
    t.arrival = std::move(arrival);
    return t;
}

inline Assertion make(K kind, int task, int job, int segment, int processor = 0, Ratio value = 0, Ratio until = 0) {
    Assertion a;
    a.kind = kind;
    a.task = task;
    a.job = job;
    a.segment = segment;
    a.processor = processor;
    a.value = value;
    a.until = until;
    return a;
}

inline Assertion miss(int task, int job, Ratio at) { return make(K::deadline_miss_at, task, job, 0, 0, at); }
inline Assertion no_misses() { return make(K::no_misses, 0, 0, 0); }
inline Assertion et(int task, int job, int segment, Ratio v) { return make(K::eligibility_equals, task, job, segment, 0, v); }
inline Assertion dispatch(int task, int job, int segment, Ratio v) { return make(K::dispatch_at, task, job, segment, 0, v); }
inline Assertion response(int task, int job, Ratio v) { return make(K::response_time_equals, task, job, 0, 0, v); }
inline Assertion grant(int task, int job, int segment, Ratio v) { return make(K::lock_grant_at, task, job, segment, 0, v); }
inline Assertion arrival(int task, int job, int segment, Ratio v) {
    return make(K::segment_arrival_at, task, job, segment, 0, v);
}
inline Assertion idle_at(int processor, Ratio v) { return make(K::processor_idle_at, 0, 0, 0, processor, v); }
inline Assertion busy_over(int processor, Ratio from, Ratio to) {
    return make(K::processor_busy_between, 0, 0, 0, processor, from, to);
}

// Three tasks with T = 10 on one processor; tau2 = (1, S=4, 2). tau1 and tau3
// release once at t = 5, when tau2's first job resumes. tau2's second job
// suspends for one unit only.
inline Scenario back_to_back_base() {
    Scenario sc;
    sc.tasks = {
        task(1, 1, 10, {seg(3)}, 1, ScriptedArrival{{5}}),
        task(2, 2, 10, {seg(1), seg(2, 4)}),
        task(3, 3, 10, {seg(3)}, 1, ScriptedArrival{{5}}),
    };
    sc.behaviors = {
        {2, 1, {4}, {1, 2}, false},
        {2, 2, {1}, {1, 2}, false},
    };
    sc.config.horizon = 20;
    return sc;
}

inline BuiltinScenario fig1_no_enforce() {
    Scenario sc = back_to_back_base();
    sc.name = "fig1_no_enforce";
    sc.description = "back-to-back execution of tau2 without enforcement; tau3 misses at 15";
    sc.config.enforcement = Enforcement::off;
    return {sc, {dispatch(2, 1, 2, 8), arrival(2, 2, 2, 12), dispatch(2, 2, 2, 12), miss(3, 1, 15)}};
}

inline BuiltinScenario fig2_enforce() {
    Scenario sc = back_to_back_base();
    sc.name = "fig2_enforce";
    sc.description = "same task set with the period enforcer; tau2's second segment waits until 15";
    sc.config.enforcement = Enforcement::on;
    return {sc, {no_misses(), et(2, 1, 2, 5), et(2, 2, 2, 15), dispatch(2, 2, 2, 15), response(3, 1, 9)}};
}

// One task, C = 1, S = 1, T = D = 2, dynamic suspension model.
inline BuiltinScenario dyn_incompat() {
    Scenario sc;
    sc.name = "dyn_incompat";
    sc.description = "dynamic self-suspension pattern defeats the enforcer; job 2 starts at 3 and misses at 4";
    TaskSpec t = task(1, 1, 2, {seg(1)});
    t.jitter = 1;  // total suspension budget S = 1
    sc.tasks = {t};
    sc.behaviors = {
        {1, 1, {1}, {1}, true},
        {1, 2, {0, 1}, {Ratio(1, 2), Ratio(1, 2)}, true},
    };
    sc.config.enforcement = Enforcement::on;
    sc.config.horizon = 4;
    return {sc, {et(1, 2, 1, 3), dispatch(1, 2, 1, 3), miss(1, 2, 4)}};
}

// tau1 = (C=2, T=D=10); tau2 = (1, S=6, 1), T = D = 11.
inline Scenario enforcement_miss_base() {
    Scenario sc;
    sc.tasks = {
        task(1, 1, 10, {seg(2)}),
        task(2, 2, 11, {seg(1), seg(1, 6)}),
    };
    return sc;
}

inline BuiltinScenario sec3_no_enforce() {
    Scenario sc = enforcement_miss_base();
    sc.name = "sec3_no_enforce";
    sc.description = "schedulable without enforcement; worst response of tau2 is 10";
    sc.config.enforcement = Enforcement::off;
    sc.config.horizon = 22;
    return {sc, {no_misses(), response(2, 1, 10), response(2, 2, 9)}};
}

inline BuiltinScenario sec3_enforce() {
    Scenario sc = enforcement_miss_base();
    sc.name = "sec3_enforce";
    sc.description = "enforcement idles the processor at 19 and tau2 misses at 22";
    sc.config.enforcement = Enforcement::on;
    sc.config.horizon = 23;
    return {sc,
            {et(2, 1, 1, 0), et(2, 1, 2, 9), et(2, 2, 1, 11), et(2, 2, 2, 20), idle_at(1, 19), dispatch(2, 2, 2, 22),
             miss(2, 2, 22), response(2, 2, 12)}};
}

inline BuiltinScenario sec3_enforce_idle_variant() {
    Scenario sc = enforcement_miss_base();
    sc.name = "sec3_enforce_idle_variant";
    sc.description = "idle-eligibility rule plus tau3 (C=13, T=D=100); processor never idles and tau2 still misses";
    TaskSpec t3 = task(3, 3, 100, {seg(13)});
    sc.tasks.push_back(t3);
    sc.config.enforcement = Enforcement::on_idle_eligible;
    sc.config.horizon = 23;
    return {sc, {busy_over(1, 0, 23), dispatch(3, 1, 1, 3), et(2, 2, 2, 20), miss(2, 2, 22)}};
}

// Two processors, one resource. tau1 on P1: C=1 then a 3-unit segment that
// opens with a 2-unit critical section, T=D=8. tau2 on P2: C=2 then a 2-unit
// segment opening with a 1-unit critical section, T=D=7.
inline BuiltinScenario fig5_lock_at_eligibility() {
    Scenario sc;
    sc.name = "fig5_lock_at_eligibility";
    sc.description = "lock requests enter contention at eligibility; tau2's eligibility drifts to a miss at 28";
    sc.tasks = {
        task(1, 1, 8, {seg(1), cs_seg(3, 1, 2)}, 1),
        task(2, 2, 7, {seg(2), cs_seg(2, 1, 1)}, 2),
    };
    sc.config.processors = {1, 2};
    sc.config.enforcement = Enforcement::on;
    sc.config.lock_semantics = LockSemantics::at_eligibility;
    sc.config.horizon = 28;
    return {sc,
            {et(2, 1, 2, 3), et(2, 2, 2, 11), et(2, 3, 2, 19), et(2, 4, 2, 27), grant(1, 2, 2, 9), grant(2, 2, 2, 11),
             grant(2, 4, 2, 27), miss(2, 4, 28)}};
}

// Two identical tasks on two processors, T=D=8, segments (1, 3) where the
// second opens with a 2-unit critical section. Even jobs of tau1 and odd jobs
// of tau2 run their first segment for 1 - eps only.
inline BuiltinScenario fig6_lock_immediate(Ratio eps = Ratio(1, 100)) {
    if (!(Ratio(0) < eps && eps < Ratio(1))) throw InputError("epsilon must lie in (0, 1)");
    Scenario sc;
    sc.name = "fig6_lock_immediate";
    sc.description = "lock requests take effect immediately; held-but-ineligible locks grow until tau1 misses at 24";
    sc.tasks = {
        task(1, 1, 8, {seg(1), cs_seg(3, 1, 2)}, 1),
        task(2, 2, 8, {seg(1), cs_seg(3, 1, 2)}, 2),
    };
    const Ratio short_seg = Ratio(1) - eps;
    sc.behaviors = {
        {1, 2, {0}, {short_seg, 3}, false},
        {2, 1, {0}, {short_seg, 3}, false},
        {2, 3, {0}, {short_seg, 3}, false},
    };
    sc.config.processors = {1, 2};
    sc.config.enforcement = Enforcement::on;
    sc.config.lock_semantics = LockSemantics::immediate;
    sc.config.horizon = 24;
    return {sc,
            {grant(2, 1, 2, short_seg), et(1, 1, 2, Ratio(3) - eps), et(2, 1, 2, 0), grant(1, 2, 2, Ratio(9) - eps),
             et(1, 2, 2, Ratio(11) - eps), dispatch(1, 2, 2, Ratio(11) - eps), grant(2, 2, 2, Ratio(13) - eps),
             et(2, 2, 2, Ratio(13) - eps), grant(2, 3, 2, Ratio(17) - eps), et(2, 3, 2, Ratio(21) - eps),
             grant(1, 3, 2, Ratio(23) - eps), miss(1, 3, 24)}};
}

// tau1 on P1: segments (1, 1), T=D=25; tau2 on P2: segments (1, 6, 1), T=D=15.
// Each segment after the first opens with a 2-unit critical section on one
// shared resource (included in the segment's wcet).
inline Scenario remote_cs_base() {
    Scenario sc;
    sc.tasks = {
        task(1, 1, 25, {seg(1), cs_seg(3, 1, 2)}, 1),
        task(2, 2, 15, {seg(1), cs_seg(8, 1, 2), cs_seg(3, 1, 2)}, 2),
    };
    sc.config.processors = {1, 2};
    sc.config.enforcement = Enforcement::on;
    sc.config.horizon = 31;
    return sc;
}

inline BuiltinScenario fig7_distributed() {
    Scenario sc = remote_cs_base();
    sc.name = "fig7_distributed";
    sc.description = "critical sections as remote calls on a sync processor; enforcement delays tau2 at 18, miss at 30";
    sc.config.lock_semantics = LockSemantics::distributed;
    sc.config.sync_processor = 3;
    return {sc,
            {et(2, 1, 2, 5), response(2, 1, 14), arrival(2, 2, 2, 18), et(2, 2, 2, 20), grant(2, 2, 3, 28),
             response(2, 2, 16), miss(2, 2, 30)}};
}

inline BuiltinScenario fig8_exempt_cs() {
    Scenario sc = remote_cs_base();
    sc.name = "fig8_exempt_cs";
    sc.description = "local critical sections exempt from enforcement; same timing as the distributed case, miss at 30";
    sc.config.lock_semantics = LockSemantics::exempt_cs;
    return {sc, {et(2, 1, 2, 5), response(2, 1, 14), et(2, 2, 2, 20), grant(2, 2, 3, 28), miss(2, 2, 30)}};
}

}  // namespace builders

inline std::vector<BuiltinScenario> builtin_scenarios(Ratio epsilon = Ratio(1, 100)) {
    using namespace builders;
    return {fig1_no_enforce(),
            fig2_enforce(),
            dyn_incompat(),
            sec3_no_enforce(),
            sec3_enforce(),
            sec3_enforce_idle_variant(),
            fig5_lock_at_eligibility(),
            fig6_lock_immediate(epsilon),
            fig7_distributed(),
            fig8_exempt_cs()};
}

inline std::optional<BuiltinScenario> find_builtin(const std::string& name, Ratio epsilon = Ratio(1, 100)) {
    for (auto& b : builtin_scenarios(epsilon))
        if (b.scenario.name == name) return b;
    return std::nullopt;
}

}  // namespace pe
