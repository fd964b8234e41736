#pragma once

// Schedule trace: the ordered event log plus structured records the engine
// keeps alongside it (execution intervals, job states, eligibility decisions,
// lock requests) so checks do not have to re-parse events.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pe/busy.hpp"
#include "pe/enforcer.hpp"
#include "pe/locking.hpp"

namespace pe {

// Declaration order is the tie-break rank for events at the same instant.
enum class EventKind {
    segment_complete,
    job_complete,
    lock_release,
    deadline_miss,
    job_release,
    suspend_begin,
    segment_arrival,
    lock_request,
    lock_grant,
    segment_eligible,
    preempt,
    dispatch,
    processor_idle,
};

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::segment_complete: return "segment_complete";
        case EventKind::job_complete: return "job_complete";
        case EventKind::lock_release: return "lock_release";
        case EventKind::deadline_miss: return "deadline_miss";
        case EventKind::job_release: return "job_release";
        case EventKind::suspend_begin: return "suspend_begin";
        case EventKind::segment_arrival: return "segment_arrival";
        case EventKind::lock_request: return "lock_request";
        case EventKind::lock_grant: return "lock_grant";
        case EventKind::segment_eligible: return "segment_eligible";
        case EventKind::preempt: return "preempt";
        case EventKind::dispatch: return "dispatch";
        case EventKind::processor_idle: return "processor_idle";
    }
    return "?";
}

struct Event {
    Ratio time;
    EventKind kind = EventKind::dispatch;
    int task = 0;  // 0 for processor-level events
    int job = 0;
    int segment = 0;
    int processor = 0;
    int priority = 0;
    std::string detail;
};

/// Tie-break key: (time, processor, kind rank, priority); stable otherwise.
inline void sort_events(std::vector<Event>& events) {
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.processor != b.processor) return a.processor < b.processor;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.priority < b.priority;
    });
}

struct ExecInterval {
    int processor = 0;
    int task = 0;
    int job = 0;
    int segment = 0;
    Ratio start;
    Ratio end;
    bool critical = false;  // inside a critical section
};

/// What a job was doing over an interval; drives Gantt rendering and the
/// priority-compliance check.
enum class JobState { running, ready, enforcer_wait, blocked, suspended };

struct StateInterval {
    int processor = 0;
    int task = 0;
    int job = 0;
    int priority = 0;
    JobState state = JobState::suspended;
    bool critical = false;
    Ratio start;
    Ratio end;
};

struct EligibilityRecord {
    int task = 0;
    int job = 0;
    int segment = 0;
    SegmentPart part = SegmentPart::whole;
    Ratio arrival;
    Ratio floor;
    Ratio busy_start;
    Ratio eligible;
};

struct SegmentRecord {
    int task = 0;
    int job = 0;
    int segment = 0;
    SegmentPart part = SegmentPart::whole;
    Ratio arrival;
    std::optional<Ratio> first_dispatch;
    std::optional<Ratio> completion;
};

struct JobRecord {
    int task = 0;
    int job = 0;
    int processor = 0;
    Ratio release;
    Ratio absolute_deadline;
    std::optional<Ratio> completion;
    bool missed = false;
};

struct ScheduleTrace {
    Ratio horizon;
    std::vector<int> processors;
    std::optional<int> sync_processor;
    std::vector<Event> events;
    std::vector<ExecInterval> exec;
    std::vector<StateInterval> states;
    std::vector<EligibilityRecord> eligibility;
    std::vector<SegmentRecord> segments;
    std::vector<JobRecord> jobs;
    std::vector<LockRequest> locks;
    BusyTracker busy;  // execution history as the enforcer saw it

    const JobRecord* find_job(int task, int job) const {
        for (const auto& j : jobs)
            if (j.task == task && j.job == job) return &j;
        return nullptr;
    }

    /// First eligibility record for (task, job, segment).
    const EligibilityRecord* find_eligibility(int task, int job, int segment) const {
        for (const auto& e : eligibility)
            if (e.task == task && e.job == job && e.segment == segment) return &e;
        return nullptr;
    }

    std::vector<const Event*> misses() const {
        std::vector<const Event*> out;
        for (const auto& e : events)
            if (e.kind == EventKind::deadline_miss) out.push_back(&e);
        return out;
    }
};

// ---------------------------------------------------------------------------

struct JobResponse {
    int task = 0;
    int job = 0;
    Ratio release;
    std::optional<Ratio> response;  // nullopt: incomplete at the horizon
    bool missed = false;
};

struct ResponseSummary {
    std::vector<JobResponse> jobs;
    std::map<int, Ratio> max_response;  // over completed jobs, per task
    std::map<int, int> incomplete;      // count per task

    std::optional<Ratio> max_for(int task) const {
        auto it = max_response.find(task);
        if (it == max_response.end()) return std::nullopt;
        return it->second;
    }
};

inline ResponseSummary response_times(const ScheduleTrace& trace) {
    ResponseSummary s;
    for (const auto& j : trace.jobs) {
        JobResponse r{j.task, j.job, j.release, std::nullopt, j.missed};
        if (j.completion) {
            r.response = *j.completion - j.release;
            auto [it, fresh] = s.max_response.emplace(j.task, *r.response);
            if (!fresh) it->second = max(it->second, *r.response);
        } else {
            ++s.incomplete[j.task];
        }
        s.jobs.push_back(r);
    }
    return s;
}

}  // namespace pe
