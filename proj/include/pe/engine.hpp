#pragma once

// Deterministic discrete-event simulator for partitioned preemptive
// fixed-priority scheduling of segmented self-suspending tasks, with optional
// period enforcement and suspension-based locks.
//
// Each job is compiled into a small program of operations (suspend, arrive,
// request, exec, unlock, remote_cs, segment_end). At every event instant the
// engine runs all programs forward to a fixpoint (releases, completions,
// arrivals, lock requests and grants), then picks the highest-priority
// dispatchable job per processor and advances time to the next instant at
// which anything can change.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pe/busy.hpp"
#include "pe/enforcer.hpp"
#include "pe/locking.hpp"
#include "pe/model.hpp"
#include "pe/trace.hpp"

namespace pe {

/// Checks a full scenario: task set, configuration and every job behaviour.
inline ValidationReport validate_scenario(const Scenario& sc) {
    ValidationReport rep = validate_taskset(sc.tasks);
    auto error = [&](int task, std::string msg) {
        rep.issues.push_back({ValidationIssue::Severity::error, task, std::move(msg)});
    };
    const auto& cfg = sc.config;
    if (cfg.horizon <= Ratio(0)) error(0, "horizon must be positive");
    if (cfg.processors.empty()) error(0, "no processors configured");
    if (cfg.lock_semantics == LockSemantics::distributed) {
        if (!cfg.sync_processor)
            error(0, "distributed lock semantics require a sync_processor");
        else if (std::find(cfg.processors.begin(), cfg.processors.end(), *cfg.sync_processor) !=
                 cfg.processors.end())
            error(0, "sync_processor must differ from the application processors");
    }
    for (const auto& t : sc.tasks)
        if (std::find(cfg.processors.begin(), cfg.processors.end(), t.processor) == cfg.processors.end())
            error(t.id, "assigned to unknown processor " + std::to_string(t.processor));
    for (const auto& [id, list] : sc.releases) {
        const TaskSpec* t = sc.find_task(id);
        if (!t) {
            error(id, "release list for unknown task");
            continue;
        }
        for (std::size_t j = 1; j < list.size(); ++j)
            if (list[j] - list[j - 1] < t->period) error(id, "scripted releases closer than the period");
    }

    std::set<std::pair<int, int>> seen;
    for (const auto& b : sc.behaviors) {
        const TaskSpec* t = sc.find_task(b.task);
        std::string who = "behaviour of job " + std::to_string(b.job) + ": ";
        if (!t) {
            error(b.task, who + "unknown task");
            continue;
        }
        if (b.job < 1) error(b.task, who + "job index must be >= 1");
        if (!seen.insert({b.task, b.job}).second) error(b.task, who + "duplicate behaviour");
        for (const auto& e : b.actual_exec)
            if (e <= Ratio(0)) error(b.task, who + "actual_exec entries must be positive");
        for (const auto& s : b.actual_susp)
            if (s < Ratio(0)) error(b.task, who + "actual_susp entries must be non-negative");
        if (b.dynamic) {
            if (t->uses_resources()) error(b.task, who + "dynamic behaviour on a task that uses resources");
            if (b.actual_exec.empty() || b.actual_susp.size() != b.actual_exec.size())
                error(b.task, who + "dynamic behaviour needs one actual_susp entry per actual_exec chunk");
            Ratio ce, cs;
            for (const auto& e : b.actual_exec) ce += e;
            for (const auto& s : b.actual_susp) cs += s;
            if (ce > t->total_wcet()) error(b.task, who + "actual_exec total exceeds C_i");
            if (cs > t->total_suspension()) error(b.task, who + "actual_susp total exceeds S_i");
            continue;
        }
        std::size_t m = t->segments.size();
        if (b.actual_exec.size() != m) {
            error(b.task, who + "actual_exec needs " + std::to_string(m) + " entries");
            continue;
        }
        if (b.actual_susp.size() != m - 1 && b.actual_susp.size() != m) {
            error(b.task, who + "actual_susp needs " + std::to_string(m - 1) + " or " + std::to_string(m) +
                              " entries");
            continue;
        }
        for (std::size_t k = 0; k < m; ++k) {
            const auto& seg = t->segments[k];
            const Ratio& e = b.actual_exec[k];
            if (e > seg.wcet)
                error(b.task, who + "actual_exec[" + std::to_string(k) + "] exceeds segment wcet");
            if (seg.request && e < seg.request->offset + seg.request->cs_length)
                error(b.task, who + "actual_exec[" + std::to_string(k) +
                                  "] shorter than the critical section it contains");
        }
        std::size_t shift = b.actual_susp.size() == m ? 0 : 1;
        for (std::size_t i = 0; i < b.actual_susp.size(); ++i) {
            std::size_t seg_index = i + shift;  // suspension ahead of segment seg_index (0-based)
            Ratio bound = seg_index == 0 ? t->jitter : t->segments[seg_index].max_susp_before;
            if (b.actual_susp[i] > bound)
                error(b.task, who + "actual_susp[" + std::to_string(i) + "] exceeds the declared maximum");
        }
    }
    return rep;
}

namespace detail {

enum class OpKind { suspend, arrive, request, exec, unlock, remote_cs, segment_end };

struct Op {
    OpKind kind = OpKind::exec;
    Ratio amount;
    int segment = 0;
    SegmentPart part = SegmentPart::whole;
    bool enforced = false;              // arrive: apply the eligibility rule
    bool defer_to_eligibility = false;  // request: enters contention at eligibility
    bool critical = false;              // exec inside a critical section
    bool exempt = false;                // exec does not count toward busy intervals
    int resource = 0;
};

struct Job {
    const TaskSpec* task = nullptr;
    int index = 0;
    std::size_t record = 0;  // into trace.jobs
    std::vector<Op> ops;
    std::size_t pc = 0;
    bool active = false;
    bool done = false;

    bool op_started = false;
    Ratio remaining;
    Ratio wake;
    std::optional<std::size_t> lock;
    bool granted = false;

    std::optional<Ratio> gate;
    bool gate_lifted = false;
    bool gate_announced = false;
    std::string gate_detail;
    std::optional<std::size_t> segment_record;

    const Op* op() const { return pc < ops.size() ? &ops[pc] : nullptr; }
    bool executing() const {
        const Op* o = op();
        return o && o->kind == OpKind::exec && op_started && remaining > Ratio(0);
    }
    bool eligible_at(const Ratio& t) const { return !gate || *gate <= t || gate_lifted; }
};

inline std::vector<Op> compile_job(const TaskSpec& task, const JobBehavior* behavior, const SystemConfig& cfg) {
    std::vector<Op> ops;
    bool enforced = cfg.enforcement != Enforcement::off;
    auto push = [&](Op op) { ops.push_back(op); };

    if (behavior && behavior->dynamic) {
        for (const auto& chunk : map_dynamic_chunks(*behavior)) {
            push({OpKind::suspend, chunk.suspension_before, chunk.enforcer_index});
            push({OpKind::arrive, {}, chunk.enforcer_index, SegmentPart::whole, enforced});
            push({OpKind::exec, chunk.exec, chunk.enforcer_index});
            push({OpKind::segment_end, {}, chunk.enforcer_index});
        }
        return ops;
    }

    const std::size_t m = task.segments.size();
    std::vector<Ratio> susp(m), exec(m);
    for (std::size_t k = 0; k < m; ++k) {
        susp[k] = k == 0 ? task.jitter : task.segments[k].max_susp_before;
        exec[k] = task.segments[k].wcet;
    }
    if (behavior) {
        exec = behavior->actual_exec;
        if (behavior->actual_susp.size() == m) {
            susp = behavior->actual_susp;
        } else {
            susp[0] = Ratio(0);
            for (std::size_t k = 1; k < m; ++k) susp[k] = behavior->actual_susp[k - 1];
        }
    }

    for (std::size_t k0 = 0; k0 < m; ++k0) {
        const int k = static_cast<int>(k0) + 1;
        const Segment& seg = task.segments[k0];
        push({OpKind::suspend, susp[k0], k});
        if (!seg.request) {
            push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
            push({OpKind::exec, exec[k0], k});
            push({OpKind::segment_end, {}, k});
            continue;
        }
        const auto& req = *seg.request;
        const Ratio post = exec[k0] - req.offset - req.cs_length;
        const bool leading = req.offset == Ratio(0);
        Op request{OpKind::request, {}, k};
        request.resource = req.resource;
        Op cs{OpKind::exec, req.cs_length, k};
        cs.critical = true;
        Op unlock{OpKind::unlock, {}, k};
        unlock.resource = req.resource;

        switch (cfg.lock_semantics) {
            case LockSemantics::at_eligibility:
            case LockSemantics::immediate:
                if (leading) {
                    request.defer_to_eligibility = cfg.lock_semantics == LockSemantics::at_eligibility && enforced;
                    push(request);
                    push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
                } else {
                    push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
                    push({OpKind::exec, req.offset, k});
                    push(request);
                }
                push(cs);
                push(unlock);
                push({OpKind::exec, post, k});
                break;
            case LockSemantics::exempt_cs: {
                if (!leading) {
                    push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
                    push({OpKind::exec, req.offset, k});
                }
                push(request);
                push({OpKind::arrive, {}, k, SegmentPart::critical, false});
                cs.exempt = true;
                push(cs);
                push(unlock);
                if (seg.wcet - req.offset - req.cs_length > Ratio(0)) {
                    push({OpKind::arrive, {}, k, SegmentPart::remainder, enforced});
                    push({OpKind::exec, post, k});
                }
                break;
            }
            case LockSemantics::distributed: {
                Op remote{OpKind::remote_cs, req.cs_length, k};
                remote.resource = req.resource;
                if (leading) {
                    push(remote);
                    push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
                } else {
                    push({OpKind::arrive, {}, k, SegmentPart::whole, enforced});
                    push({OpKind::exec, req.offset, k});
                    push(remote);
                }
                push({OpKind::exec, post, k});
                break;
            }
        }
        push({OpKind::segment_end, {}, k});
    }
    return ops;
}

class Engine {
public:
    explicit Engine(const Scenario& sc)
        : sc_(sc),
          cfg_(sc.config),
          locks_(cfg_.queue, cfg_.lock_semantics == LockSemantics::distributed) {
        for (const auto& b : sc.behaviors) behaviors_[{b.task, b.job}] = &b;
        for (const auto& t : sc.tasks) {
            TaskRun run;
            run.spec = &t;
            auto it = sc.releases.find(t.id);
            run.releases = expand_arrivals(t, cfg_.horizon, it == sc.releases.end() ? nullptr : &it->second);
            runs_.push_back(std::move(run));
        }
        std::sort(runs_.begin(), runs_.end(), [](const TaskRun& a, const TaskRun& b) {
            if (a.spec->priority != b.spec->priority) return a.spec->priority < b.spec->priority;
            return a.spec->id < b.spec->id;
        });
        trace_.horizon = cfg_.horizon;
        trace_.processors = cfg_.processors;
        if (cfg_.lock_semantics == LockSemantics::distributed) trace_.sync_processor = cfg_.sync_processor;
        for (int p : cfg_.processors) running_[p] = std::nullopt;
    }

    ScheduleTrace run() {
        Ratio t(0);
        while (true) {
            settle(t);
            check_deadlines(t);
            if (t >= cfg_.horizon) break;
            dispatch(t);
            Ratio next = next_instant(t);
            advance(t, next);
            t = next;
        }
        close_states();
        trace_.locks = locks_.log();
        trace_.busy = busy_;
        sort_events(trace_.events);
        return std::move(trace_);
    }

private:
    struct TaskRun {
        const TaskSpec* spec = nullptr;
        std::vector<Ratio> releases;
        std::size_t next_release = 0;
        std::deque<std::size_t> pending;  // released, not yet started
        std::optional<std::size_t> active;
        int released = 0;
    };

    void emit(const Ratio& t, EventKind kind, const Job* job, int segment, std::string detail = {},
              std::optional<int> processor = std::nullopt) {
        Event e;
        e.time = t;
        e.kind = kind;
        if (job) {
            e.task = job->task->id;
            e.job = job->index;
            e.priority = job->task->priority;
            e.processor = job->task->processor;
        }
        if (processor) e.processor = *processor;
        e.segment = segment;
        e.detail = std::move(detail);
        trace_.events.push_back(std::move(e));
    }

    // --- instant processing -------------------------------------------------

    void settle(const Ratio& t) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& run : runs_) changed |= release_jobs(run, t);
            for (auto& run : runs_) changed |= activate(run, t);
            for (auto& run : runs_)
                if (run.active) changed |= step_job(run, jobs_[*run.active], t);
            for (std::size_t idx : locks_.grant_all(t)) {
                changed = true;
                on_grant(idx, t);
            }
        }
    }

    bool release_jobs(TaskRun& run, const Ratio& t) {
        bool changed = false;
        while (run.next_release < run.releases.size() && run.releases[run.next_release] <= t) {
            const Ratio r = run.releases[run.next_release++];
            Job job;
            job.task = run.spec;
            job.index = ++run.released;
            auto bit = behaviors_.find({run.spec->id, job.index});
            job.ops = compile_job(*run.spec, bit == behaviors_.end() ? nullptr : bit->second, cfg_);
            JobRecord rec{run.spec->id, job.index, run.spec->processor, r, r + run.spec->deadline, std::nullopt, false};
            trace_.jobs.push_back(rec);
            job.record = trace_.jobs.size() - 1;
            jobs_.push_back(std::move(job));
            run.pending.push_back(jobs_.size() - 1);
            emit(r, EventKind::job_release, &jobs_.back(), 0);
            changed = true;
        }
        return changed;
    }

    bool activate(TaskRun& run, const Ratio& t) {
        if (run.active || run.pending.empty()) return false;
        run.active = run.pending.front();
        run.pending.pop_front();
        jobs_[*run.active].active = true;
        (void)t;
        return true;
    }

    bool step_job(TaskRun& run, Job& job, const Ratio& t) {
        bool progressed = false;
        while (const Op* op = job.op()) {
            bool advance_pc = false;
            switch (op->kind) {
                case OpKind::suspend:
                    if (!job.op_started) {
                        job.op_started = true;
                        job.wake = t + op->amount;
                        if (op->amount > Ratio(0)) emit(t, EventKind::suspend_begin, &job, op->segment, "until=" + job.wake.str());
                        progressed = true;
                    }
                    advance_pc = job.wake <= t;
                    break;
                case OpKind::arrive:
                    on_arrive(job, *op, t);
                    advance_pc = true;
                    break;
                case OpKind::request:
                case OpKind::remote_cs:
                    if (!job.op_started) {
                        job.op_started = true;
                        issue_request(job, *op, t);
                        progressed = true;
                    }
                    if (op->kind == OpKind::request) {
                        advance_pc = job.granted;
                    } else if (job.granted && job.wake <= t) {
                        locks_.release(op->resource, t);
                        emit(t, EventKind::lock_release, &job, op->segment, "resource=" + std::to_string(op->resource),
                             cfg_.sync_processor);
                        advance_pc = true;
                    }
                    break;
                case OpKind::exec:
                    if (!job.op_started) {
                        job.op_started = true;
                        job.remaining = op->amount;
                        progressed = true;
                    }
                    advance_pc = job.remaining <= Ratio(0);
                    if (advance_pc && job.segment_record) trace_.segments[*job.segment_record].completion = t;
                    break;
                case OpKind::unlock:
                    locks_.release(op->resource, t);
                    emit(t, EventKind::lock_release, &job, op->segment, "resource=" + std::to_string(op->resource));
                    advance_pc = true;
                    break;
                case OpKind::segment_end:
                    emit(t, EventKind::segment_complete, &job, op->segment);
                    advance_pc = true;
                    break;
            }
            if (!advance_pc) break;
            ++job.pc;
            job.op_started = false;
            job.granted = false;
            job.lock.reset();
            progressed = true;
        }
        if (!job.op() && !job.done) {
            job.done = true;
            job.active = false;
            auto& rec = trace_.jobs[job.record];
            rec.completion = t;
            emit(t, EventKind::job_complete, &job, 0);
            run.active.reset();
            progressed = true;
        }
        return progressed;
    }

    void on_arrive(Job& job, const Op& op, const Ratio& t) {
        const TaskSpec& task = *job.task;
        trace_.segments.push_back({task.id, job.index, op.segment, op.part, t, std::nullopt, std::nullopt});
        job.segment_record = trace_.segments.size() - 1;
        emit(t, EventKind::segment_arrival, &job, op.segment);
        job.gate.reset();
        job.gate_lifted = false;
        job.gate_announced = false;
        if (!op.enforced) return;
        Ratio busy = busy_.busy_start(task.processor, task.priority, t);
        EligibilityDecision d = enforcer_.update({task.id, op.segment, op.part}, task.period, busy);
        trace_.eligibility.push_back({task.id, job.index, op.segment, op.part, t, d.floor, d.busy_start, d.eligible});
        job.gate = d.eligible;
        job.gate_detail = "floor=" + d.floor.str() + " busy=" + d.busy_start.str() + " et=" + d.eligible.str();
        if (op.part != SegmentPart::whole)
            job.gate_detail += op.part == SegmentPart::critical ? " part=critical" : " part=remainder";
        job.gate_announced = d.eligible <= t;
    }

    void issue_request(Job& job, const Op& op, const Ratio& t) {
        const TaskSpec& task = *job.task;
        std::optional<Ratio> tentative;
        if (op.defer_to_eligibility) {
            Ratio busy = busy_.busy_start(task.processor, task.priority, t);
            tentative = enforcer_.peek({task.id, op.segment, SegmentPart::whole}, task.period, busy).eligible;
        }
        LockRequest req;
        req.resource = op.resource;
        req.task = task.id;
        req.job = job.index;
        req.segment = op.segment;
        req.priority = task.priority;
        req.request = t;
        req.effective = request_effective_time(t, cfg_.lock_semantics, tentative);
        req.cs_length = op.kind == OpKind::remote_cs ? op.amount : task.segments[op.segment - 1].request->cs_length;
        job.lock = locks_.issue(req);
        emit(t, EventKind::lock_request, &job, op.segment,
             "resource=" + std::to_string(op.resource) + " effective=" + req.effective.str());
    }

    void on_grant(std::size_t idx, const Ratio& t) {
        const LockRequest& req = locks_.at(idx);
        for (auto& run : runs_) {
            if (!run.active) continue;
            Job& job = jobs_[*run.active];
            if (job.lock != idx) continue;
            job.granted = true;
            const Op& op = *job.op();
            std::optional<int> proc;
            if (op.kind == OpKind::remote_cs) {
                job.wake = t + op.amount;
                proc = cfg_.sync_processor;
                trace_.exec.push_back({*cfg_.sync_processor, req.task, req.job, req.segment, t, job.wake, true});
            }
            emit(t, EventKind::lock_grant, &job, req.segment, "resource=" + std::to_string(req.resource), proc);
            return;
        }
    }

    void check_deadlines(const Ratio& t) {
        for (auto& job : jobs_) {
            auto& rec = trace_.jobs[job.record];
            if (rec.missed || rec.completion || rec.absolute_deadline != t) continue;
            rec.missed = true;
            emit(t, EventKind::deadline_miss, &job, 0);
        }
    }

    // --- dispatch and time advance -----------------------------------------

    void dispatch(const Ratio& t) {
        for (int p : cfg_.processors) {
            std::optional<std::size_t> chosen;
            std::optional<std::size_t> gated;
            for (auto& run : runs_) {  // priority order
                if (!run.active || run.spec->processor != p) continue;
                Job& job = jobs_[*run.active];
                if (!job.executing()) continue;
                if (job.eligible_at(t)) {
                    if (!chosen) chosen = *run.active;
                } else if (!gated) {
                    gated = *run.active;
                }
            }
            if (!chosen && gated && cfg_.enforcement == Enforcement::on_idle_eligible) {
                Job& job = jobs_[*gated];
                job.gate_lifted = true;
                job.gate_announced = true;
                emit(t, EventKind::segment_eligible, &job, job.op()->segment, job.gate_detail + " idle-eligible");
                chosen = gated;
            }
            // Announce eligibility reached at t for delayed segments.
            for (auto& run : runs_) {
                if (!run.active || run.spec->processor != p) continue;
                Job& job = jobs_[*run.active];
                if (job.gate && !job.gate_announced && *job.gate <= t) {
                    job.gate_announced = true;
                    emit(t, EventKind::segment_eligible, &job, current_segment(job), job.gate_detail);
                }
            }
            auto& prev = running_[p];
            if (!prev_initialized_ || prev != chosen) {
                if (prev_initialized_ && prev && jobs_[*prev].executing() && jobs_[*prev].active)
                    emit(t, EventKind::preempt, &jobs_[*prev], jobs_[*prev].op()->segment);
                if (chosen)
                    emit(t, EventKind::dispatch, &jobs_[*chosen], jobs_[*chosen].op()->segment);
                else
                    emit(t, EventKind::processor_idle, nullptr, 0, {}, p);
            }
            prev = chosen;
        }
        prev_initialized_ = true;
    }

    static int current_segment(const Job& job) {
        const Op* op = job.op();
        return op ? op->segment : 0;
    }

    Ratio next_instant(const Ratio& t) const {
        Ratio next = cfg_.horizon;
        auto consider = [&](const Ratio& r) {
            if (r > t && r < next) next = r;
        };
        for (const auto& run : runs_) {
            if (run.next_release < run.releases.size()) consider(run.releases[run.next_release]);
            if (!run.active) continue;
            const Job& job = jobs_[*run.active];
            const Op* op = job.op();
            if (!op) continue;
            if (op->kind == OpKind::suspend || (op->kind == OpKind::remote_cs && job.granted)) consider(job.wake);
            if (job.executing() && job.gate && !job.gate_lifted) consider(*job.gate);
        }
        for (const auto& [p, r] : running_)
            if (r) consider(t + jobs_[*r].remaining);
        if (auto e = locks_.next_effective_after(t)) consider(*e);
        for (const auto& job : jobs_) {
            const auto& rec = trace_.jobs[job.record];
            if (!rec.completion && !rec.missed) consider(rec.absolute_deadline);
        }
        return next;
    }

    void advance(const Ratio& from, const Ratio& to) {
        record_states(from, to);
        for (int p : cfg_.processors) {
            const auto& r = running_[p];
            if (!r) {
                busy_.record(p, from, to, std::nullopt);
                continue;
            }
            Job& job = jobs_[*r];
            const Op& op = *job.op();
            job.remaining -= to - from;
            busy_.record(p, from, to, op.exempt ? std::nullopt : std::optional<int>(job.task->priority));
            auto& seg = trace_.segments[*job.segment_record];
            if (!seg.first_dispatch) seg.first_dispatch = from;
            bool merged = false;
            for (auto it = trace_.exec.rbegin(); it != trace_.exec.rend(); ++it) {
                if (it->processor != p) continue;
                if (it->task == job.task->id && it->job == job.index && it->segment == op.segment &&
                    it->critical == op.critical && it->end == from) {
                    it->end = to;
                    merged = true;
                }
                break;
            }
            if (!merged) trace_.exec.push_back({p, job.task->id, job.index, op.segment, from, to, op.critical});
        }
    }

    void record_states(const Ratio& from, const Ratio& to) {
        for (const auto& run : runs_) {
            if (!run.active) continue;
            const Job& job = jobs_[*run.active];
            const Op* op = job.op();
            if (!op) continue;
            JobState st = JobState::suspended;
            bool critical = false;
            auto r = running_[job.task->processor];
            if (r && *r == *run.active) {
                st = JobState::running;
                critical = op->critical;
            } else if (job.executing()) {
                st = job.eligible_at(from) ? JobState::ready : JobState::enforcer_wait;
                critical = op->critical;
            } else if ((op->kind == OpKind::request || op->kind == OpKind::remote_cs) && !job.granted) {
                st = JobState::blocked;
            }
            auto key = std::pair{job.task->id, job.index};
            auto it = open_states_.find(key);
            if (it != open_states_.end()) {
                auto& last = trace_.states[it->second];
                if (last.state == st && last.critical == critical && last.end == from) {
                    last.end = to;
                    continue;
                }
            }
            trace_.states.push_back({job.task->processor, job.task->id, job.index, job.task->priority, st, critical,
                                     from, to});
            open_states_[key] = trace_.states.size() - 1;
        }
    }

    void close_states() {
        std::stable_sort(trace_.states.begin(), trace_.states.end(), [](const StateInterval& a, const StateInterval& b) {
            if (a.task != b.task) return a.task < b.task;
            return a.start < b.start;
        });
    }

    const Scenario& sc_;
    SystemConfig cfg_;
    LockManager locks_;
    BusyTracker busy_;
    EnforcerState enforcer_;
    std::map<std::pair<int, int>, const JobBehavior*> behaviors_;
    std::vector<TaskRun> runs_;
    std::vector<Job> jobs_;
    std::map<int, std::optional<std::size_t>> running_;
    bool prev_initialized_ = false;
    std::map<std::pair<int, int>, std::size_t> open_states_;
    ScheduleTrace trace_;
};

}  // namespace detail

/// Runs the scenario to its horizon. Throws InputError if validation fails.
inline ScheduleTrace simulate(const Scenario& scenario) {
    ValidationReport rep = validate_scenario(scenario);
    if (!rep.ok()) throw InputError("invalid scenario \"" + scenario.name + "\":\n" + rep.summary());
    return detail::Engine(scenario).run();
}

/// busy(tau_i, t) from the execution history of a (possibly finished) run.
inline Ratio busy_interval_start(const BusyTracker& tracker, const TaskSpec& task, const Ratio& t) {
    return tracker.busy_start(task.processor, task.priority, t);
}

}  // namespace pe
