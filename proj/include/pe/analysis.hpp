#pragma once

// Schedulability analyses for fixed-priority uniprocessor scheduling:
// response-time analysis with release jitter, the segmented-to-deferrable
// transformation, an exhaustive WCRT search for the case of a single
// lowest-priority self-suspending task, and a simple lock-blocking bound.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <string>
#include <vector>

#include "pe/engine.hpp"

namespace pe {

/// A task with one suspension (deferral) followed by one computation segment,
/// analysed as a sporadic task with release jitter.
struct DeferrableTask {
    int id = 0;
    std::string name;
    int origin = 0;  // id of the task this was split from; equal origins never interfere
    int priority = 0;
    int processor = 1;
    Ratio wcet;
    Ratio jitter;
    Ratio period;
    Ratio deadline;

    friend bool operator==(const DeferrableTask&, const DeferrableTask&) = default;
};

struct SegmentBound {
    Ratio wcrt;            // W^j, completion offset from the job's release
    Ratio latest_arrival;  // rho^j = W^{j-1} + S^{j-1}
};

struct TaskResult {
    int id = 0;
    std::string name;
    Ratio deadline;
    std::optional<Ratio> response;  // nullopt: no bound (diverged)
    bool schedulable = false;
    std::vector<SegmentBound> segments;
};

/// How the special-case WCRT was obtained. The candidate search runs periodic
/// hp patterns aligned to segment arrivals; the grid search covers every
/// sporadic pattern on the grid. Both only produce legal schedules, so the
/// larger value is reported.
struct SearchReport {
    std::size_t candidate_runs = 0;
    std::optional<Ratio> candidate_wcrt;
    bool grid_searched = false;
    Ratio grid_step;
    std::size_t grid_states = 0;
    std::optional<Ratio> grid_wcrt;
};

struct AnalysisResult {
    std::vector<TaskResult> tasks;
    bool schedulable = true;
    std::optional<SearchReport> search;  // set by the exhaustive search only

    const TaskResult* find(int id) const {
        for (const auto& t : tasks)
            if (t.id == id) return &t;
        return nullptr;
    }
};

class AnalysisError : public InputError {
public:
    using InputError::InputError;
};

inline DeferrableTask as_deferrable(const TaskSpec& t) {
    if (t.segments.size() != 1)
        throw AnalysisError("task " + std::to_string(t.id) + " has " + std::to_string(t.segments.size()) +
                            " segments; transform it first");
    return {t.id, t.name, t.id, t.priority, t.processor, t.total_wcet(), t.jitter, t.period, t.deadline};
}

namespace detail {

inline std::vector<const DeferrableTask*> interferers(const std::vector<DeferrableTask>& tasks,
                                                      const DeferrableTask& t) {
    std::vector<const DeferrableTask*> hp;
    for (const auto& h : tasks)
        if (h.processor == t.processor && h.origin != t.origin && h.priority < t.priority) hp.push_back(&h);
    return hp;
}

inline Ratio interference(const std::vector<const DeferrableTask*>& hp, const Ratio& w) {
    Ratio sum;
    for (const auto* h : hp) sum += Ratio((w + h->jitter) / h->period).ceil() * h->wcet;
    return sum;
}

}  // namespace detail

/// Response-time analysis with release jitter. R = w + J with
/// w = C + sum over higher priority h of ceil((w + J_h) / T_h) * C_h.
/// The least fixed point is reported even when it exceeds the deadline; only a
/// saturated processor (higher-priority utilization >= 1) yields no bound.
inline Ratio rta_start_value(const DeferrableTask& t) { return t.wcet; }

inline std::optional<Ratio> rta_response(const std::vector<DeferrableTask>& tasks, const DeferrableTask& t,
                                         std::optional<Ratio> start = std::nullopt) {
    auto hp = detail::interferers(tasks, t);
    Ratio util;
    for (const auto* h : hp) util += h->wcet / h->period;
    if (util >= Ratio(1)) return std::nullopt;
    Ratio w = start ? *start : rta_start_value(t);
    for (;;) {
        Ratio next = t.wcet + detail::interference(hp, w);
        if (next == w) return w + t.jitter;
        w = next;
    }
}

inline AnalysisResult rta_jitter(const std::vector<DeferrableTask>& tasks) {
    std::set<std::pair<int, int>> ids;
    std::map<std::pair<int, int>, int> prio_origin;
    for (const auto& t : tasks) {
        if (!(t.wcet > Ratio(0))) throw AnalysisError(t.name + ": wcet must be positive");
        if (t.jitter < Ratio(0)) throw AnalysisError(t.name + ": jitter must be non-negative");
        if (!(t.period > Ratio(0))) throw AnalysisError(t.name + ": period must be positive");
        if (t.deadline > t.period) throw AnalysisError(t.name + ": deadline exceeds period (constrained deadlines only)");
        if (!ids.insert({t.id, t.processor}).second) throw AnalysisError("duplicate task id " + std::to_string(t.id));
        auto [it, fresh] = prio_origin.emplace(std::pair{t.processor, t.priority}, t.origin);
        if (!fresh && it->second != t.origin)
            throw AnalysisError("priority " + std::to_string(t.priority) + " is shared by unrelated tasks");
    }
    AnalysisResult res;
    for (const auto& t : tasks) {
        TaskResult r;
        r.id = t.id;
        r.name = t.name;
        r.deadline = t.deadline;
        r.response = rta_response(tasks, t);
        r.schedulable = r.response && *r.response <= t.deadline;
        r.segments.push_back({r.response.value_or(Ratio(0)), t.jitter});
        res.schedulable = res.schedulable && r.schedulable;
        res.tasks.push_back(std::move(r));
    }
    return res;
}

/// Splits a segmented task into one deferrable task per segment. Segment j
/// keeps C^j and gets jitter rho^j = W^{j-1} + S^{j-1}; the first segment uses
/// the task's own jitter. All parts share the original relative deadline.
inline std::vector<DeferrableTask> transform_to_deferrable(const TaskSpec& task, const std::vector<Ratio>& wcrt_bounds) {
    const std::size_t m = task.segments.size();
    if (wcrt_bounds.size() + 1 < m)
        throw AnalysisError("task " + std::to_string(task.id) + ": need " + std::to_string(m - 1) +
                            " segment bounds, got " + std::to_string(wcrt_bounds.size()));
    std::vector<DeferrableTask> out;
    for (std::size_t j = 0; j < m; ++j) {
        DeferrableTask d;
        d.id = task.id * 100 + static_cast<int>(j) + 1;
        d.name = task.name + "^" + std::to_string(j + 1);
        d.origin = task.id;
        d.priority = task.priority;
        d.processor = task.processor;
        d.wcet = task.segments[j].wcet;
        d.jitter = j == 0 ? task.jitter : wcrt_bounds[j - 1] + task.segments[j].max_susp_before;
        d.period = task.period;
        d.deadline = task.deadline;
        out.push_back(d);
    }
    return out;
}

/// RTA over a segmented task set. Tasks are split in priority order; each
/// segment's RTA bound becomes W^j for the jitter of the next segment.
inline AnalysisResult rta_segmented(const std::vector<TaskSpec>& tasks) {
    std::vector<const TaskSpec*> order;
    for (const auto& t : tasks) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](const TaskSpec* a, const TaskSpec* b) { return a->priority < b->priority; });

    std::vector<DeferrableTask> all;
    for (const auto& t : tasks)
        for (const auto& part : transform_to_deferrable(t, std::vector<Ratio>(t.segments.size())))
            all.push_back(part);
    rta_jitter(all);  // input validation only

    std::vector<DeferrableTask> split;
    std::map<int, TaskResult> by_id;
    for (const TaskSpec* t : order) {
        if (t->segments.empty()) throw AnalysisError("task " + std::to_string(t->id) + " has no segments");
        TaskResult r;
        r.id = t->id;
        r.name = t->name;
        r.deadline = t->deadline;
        std::vector<Ratio> bounds;
        bool bounded = true;
        for (std::size_t j = 0; j < t->segments.size(); ++j) {
            std::vector<Ratio> known = bounds;
            known.resize(t->segments.size());
            DeferrableTask part = transform_to_deferrable(*t, known)[j];
            std::vector<DeferrableTask> scope = split;
            scope.push_back(part);
            auto resp = bounded ? rta_response(scope, part) : std::nullopt;
            bounded = resp.has_value();
            r.segments.push_back({resp.value_or(Ratio(0)), part.jitter});
            bounds.push_back(resp.value_or(Ratio(0)));
        }
        for (const auto& part : transform_to_deferrable(*t, bounds)) split.push_back(part);
        if (bounded) r.response = bounds.back();
        r.schedulable = bounded && *r.response <= t->deadline;
        by_id[t->id] = std::move(r);
    }
    AnalysisResult res;
    for (const auto& t : tasks) {
        res.tasks.push_back(by_id.at(t.id));
        res.schedulable = res.schedulable && res.tasks.back().schedulable;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Exhaustive search, one self-suspending task at the lowest priority

/// One adversarial run: the phase of every hp task (it releases at
/// phase + k * T for all k >= 0) and the actual suspension lengths.
struct ReleasePattern {
    std::vector<Ratio> phases;
    std::vector<Ratio> suspensions;  // leading jitter first, if the task has any

    friend auto operator<=>(const ReleasePattern&, const ReleasePattern&) = default;
};

struct PatternOutcome {
    ReleasePattern pattern;
    std::vector<Ratio> segment_arrival;     // offsets from release
    std::vector<Ratio> segment_completion;  // offsets from release
    std::optional<Ratio> response;          // nullopt: not complete within the search horizon
};

namespace detail {

inline const TaskSpec& check_special_case(const std::vector<TaskSpec>& tasks) {
    auto report = validate_taskset(tasks);
    if (!report.ok()) throw AnalysisError(report.summary());
    const TaskSpec* ss = nullptr;
    for (const auto& t : tasks) {
        if (t.self_suspends()) {
            if (ss) throw AnalysisError("the task set must contain only one self-suspending task");
            ss = &t;
        }
        if (t.deadline > t.period) throw AnalysisError(t.name + ": deadlines must be constrained");
        if (t.uses_resources()) throw AnalysisError(t.name + ": shared resources are outside the special case");
        if (!std::holds_alternative<PeriodicArrival>(t.arrival))
            throw AnalysisError(t.name + ": the search chooses releases itself; give periodic arrivals");
    }
    if (!ss) throw AnalysisError("the task set must contain a self-suspending task");
    for (const auto& t : tasks) {
        if (&t == ss) continue;
        if (t.processor != ss->processor) throw AnalysisError("all tasks must share one processor");
        if (t.priority > ss->priority) throw AnalysisError("the self-suspending task must be the lowest-priority task");
    }
    return *ss;
}

inline std::vector<Ratio> suspension_bounds(const TaskSpec& t) {
    std::vector<Ratio> s;
    if (t.jitter > Ratio(0)) s.push_back(t.jitter);
    for (std::size_t j = 1; j < t.segments.size(); ++j) s.push_back(t.segments[j].max_susp_before);
    return s;
}

inline Ratio phase_of(const Ratio& t, const Ratio& period) { return t - Ratio((t / period).floor()) * period; }

}  // namespace detail

/// Runs one job of `ss` released at 0 under `pattern`; hp tasks release
/// periodically from their phase. The horizon doubles until the job completes.
inline PatternOutcome evaluate_pattern(const std::vector<TaskSpec>& tasks, const TaskSpec& ss,
                                       const ReleasePattern& pattern) {
    Ratio base = ss.total_wcet() + ss.total_suspension();
    for (const auto& t : tasks)
        if (&t != &ss) base += t.total_wcet() + t.period;
    const Ratio cap = (base + ss.deadline) * Ratio(1024);

    std::vector<Ratio> exec;
    for (const auto& s : ss.segments) exec.push_back(s.wcet);
    for (Ratio horizon = base;; horizon = horizon * Ratio(2)) {
        Scenario sc;
        sc.name = "bruteforce";
        sc.config.processors = {ss.processor};
        sc.config.enforcement = Enforcement::off;
        sc.config.horizon = horizon;
        std::size_t h = 0;
        for (const auto& t : tasks) {
            TaskSpec copy = t;
            std::vector<Ratio> rel;
            if (&t == &ss)
                rel.push_back(Ratio(0));
            else
                for (Ratio r = pattern.phases[h++]; r < horizon; r += t.period) rel.push_back(r);
            copy.arrival = ScriptedArrival{rel};
            sc.tasks.push_back(copy);
        }
        sc.behaviors.push_back({ss.id, 1, pattern.suspensions, exec, false});
        ScheduleTrace trace = simulate(sc);
        const JobRecord* job = trace.find_job(ss.id, 1);
        if (job && job->completion) {
            PatternOutcome out{pattern, std::vector<Ratio>(ss.segments.size()),
                               std::vector<Ratio>(ss.segments.size()), *job->completion};
            for (const auto& s : trace.segments) {
                if (s.task != ss.id || s.job != 1) continue;
                out.segment_arrival[s.segment - 1] = s.arrival;
                if (s.completion) out.segment_completion[s.segment - 1] = *s.completion;
            }
            return out;
        }
        if (horizon > cap) return {pattern, {}, {}, std::nullopt};
    }
}

struct SearchOptions {
    bool grid = true;                 // also run the sporadic grid search
    std::optional<Ratio> grid_step;   // default: gcd of all task parameters
    std::size_t grid_limit = 2000000; // skip the grid beyond this many states
};

namespace detail {

struct WorstCase {
    std::optional<Ratio> response = Ratio(0);
    std::vector<Ratio> segment;
    std::size_t runs = 0;

    void add(const PatternOutcome& o) {
        ++runs;
        if (!o.response) {
            response.reset();
            return;
        }
        if (response) response = max(*response, *o.response);
        segment.resize(o.segment_completion.size());
        for (std::size_t k = 0; k < segment.size(); ++k) segment[k] = max(segment[k], o.segment_completion[k]);
    }
    void merge(const WorstCase& w) {
        if (!w.response) response.reset();
        if (response) response = max(*response, *w.response);
        segment.resize(std::max(segment.size(), w.segment.size()));
        for (std::size_t k = 0; k < w.segment.size(); ++k) segment[k] = max(segment[k], w.segment[k]);
    }
};

inline Ratio ratio_gcd(Ratio a, Ratio b) {
    while (b != Ratio(0)) {
        Ratio r = a - Ratio((a / b).floor()) * b;
        a = b;
        b = r;
    }
    return a;
}

inline Ratio parameter_gcd(const std::vector<TaskSpec>& tasks) {
    Ratio g = 0;
    auto add = [&](const Ratio& v) {
        if (v > Ratio(0)) g = g == Ratio(0) ? v : ratio_gcd(g, v);
    };
    for (const auto& t : tasks) {
        add(t.period);
        add(t.jitter);
        for (const auto& s : t.segments) {
            add(s.wcet);
            add(s.max_susp_before);
        }
    }
    return g;
}

/// Candidate patterns. The worst case has every hp task release a job exactly
/// when some segment of the self-suspending job arrives, with its other jobs
/// one period apart, and each suspension at 0, at its maximum, or ending
/// exactly at an hp release. Segment arrivals depend on the interference, so
/// hp phases are drawn from the pool of arrival instants seen in any run so
/// far, and the pool is grown until no run adds a new instant.
inline WorstCase candidate_search(const std::vector<TaskSpec>& tasks, const TaskSpec& ss,
                                  std::vector<PatternOutcome>* outcomes) {
    const std::size_t m = ss.segments.size();
    const std::vector<Ratio> bounds = suspension_bounds(ss);
    const std::size_t lead = ss.jitter > Ratio(0) ? 1 : 0;
    std::vector<const TaskSpec*> hp;
    for (const auto& t : tasks)
        if (&t != &ss) hp.push_back(&t);

    std::set<Ratio> pool{Ratio(0)};
    std::map<ReleasePattern, PatternOutcome> seen;
    WorstCase worst;
    bool grew = true;

    auto run = [&](const ReleasePattern& p) -> const PatternOutcome& {
        auto it = seen.find(p);
        if (it != seen.end()) return it->second;
        it = seen.emplace(p, evaluate_pattern(tasks, ss, p)).first;
        const PatternOutcome& o = it->second;
        worst.add(o);
        if (o.response)
            for (std::size_t k = 0; k < m; ++k) grew = pool.insert(o.segment_arrival[k]).second || grew;
        if (outcomes) outcomes->push_back(o);
        return o;
    };

    // Fixes suspensions one at a time; while one is chosen the later ones are
    // 0, which does not affect anything before it.
    std::function<void(ReleasePattern&, std::size_t)> explore = [&](ReleasePattern& p, std::size_t b) {
        if (b == bounds.size()) {
            run(p);
            return;
        }
        std::set<Ratio> cands{Ratio(0), bounds[b]};
        Ratio from = 0;
        if (b >= lead) {
            const PatternOutcome& o = run(p);
            if (!o.response) return;
            from = o.segment_completion[b - lead];
        }
        for (std::size_t h = 0; h < hp.size(); ++h) {
            Ratio r = p.phases[h];
            if (r <= from) r += Ratio(((from - r) / hp[h]->period).floor() + 1) * hp[h]->period;
            for (; r < from + bounds[b]; r += hp[h]->period) cands.insert(r - from);
        }
        for (const auto& c : cands) {
            p.suspensions[b] = c;
            explore(p, b + 1);
        }
        p.suspensions[b] = 0;
    };

    while (grew && worst.response) {
        grew = false;
        std::vector<std::vector<Ratio>> phase_sets;
        for (const auto* t : hp) {
            std::set<Ratio> ph;
            for (const auto& a : pool) ph.insert(phase_of(a, t->period));
            phase_sets.emplace_back(ph.begin(), ph.end());
        }
        std::vector<std::size_t> idx(hp.size(), 0);
        for (;;) {
            ReleasePattern p{{}, std::vector<Ratio>(bounds.size())};
            for (std::size_t h = 0; h < hp.size(); ++h) p.phases.push_back(phase_sets[h][idx[h]]);
            explore(p, 0);
            std::size_t h = 0;
            while (h < hp.size() && ++idx[h] == phase_sets[h].size()) idx[h++] = 0;
            if (h == hp.size() || !worst.response) break;
        }
    }
    return worst;
}

/// Exact search over sporadic patterns on a grid of `step`. Time advances one
/// step at a time; at every step boundary the adversary may release a job of
/// any hp task whose last release is at least a period back, and may end the
/// current suspension of the self-suspending job anywhere within its bound.
/// The job is released in any hp state reachable from an idle system, which
/// covers backlog carried in from before its release. The longest path to the
/// completion of each segment is found by memoized search; the state graph is
/// acyclic when hp utilization is below one. Returns nullopt when more than
/// `limit` states would be needed.
class SporadicSearch {
public:
    SporadicSearch(const std::vector<TaskSpec>& tasks, const TaskSpec& ss, const Ratio& step, std::size_t limit)
        : limit_(limit) {
        auto units = [&](const Ratio& v) {
            Ratio q = v / step;
            if (q.den() != 1) throw AnalysisError("grid step " + step.str() + " does not divide " + v.str());
            return static_cast<int>(q.num());
        };
        std::vector<const TaskSpec*> hp;
        for (const auto& t : tasks)
            if (&t != &ss) hp.push_back(&t);
        std::stable_sort(hp.begin(), hp.end(), [](const TaskSpec* a, const TaskSpec* b) { return a->priority < b->priority; });
        for (const auto* t : hp) {
            c_.push_back(units(t->total_wcet()));
            t_.push_back(units(t->period));
            util_ += t->total_wcet() / t->period;
        }
        for (std::size_t j = 0; j < ss.segments.size(); ++j) {
            seg_c_.push_back(units(ss.segments[j].wcet));
            seg_s_.push_back(units(j == 0 ? ss.jitter : ss.segments[j].max_susp_before));
        }
    }

    bool saturated() const { return util_ >= Ratio(1); }

    /// Worst completion offset of every segment, in steps; nullopt if the
    /// state limit was hit.
    std::optional<std::vector<long>> run() {
        auto starts = hp_states();
        if (!starts) return std::nullopt;
        std::vector<long> out;
        for (std::size_t target = 0; target < seg_c_.size(); ++target) {
            target_ = target;
            memo_.clear();
            long best = 0;
            for (const auto& h : *starts) {
                State s = h;
                s.push_back(0);  // segment
                s.push_back(0);  // 0 suspended, 1 executing
                s.push_back(0);  // elapsed suspension or remaining execution
                auto v = longest(s);
                if (!v) return std::nullopt;
                best = std::max(best, *v);
            }
            out.push_back(best);
        }
        return out;
    }

    std::size_t states() const { return explored_; }

private:
    using State = std::vector<int>;  // (pending, since) per hp task, then segment, mode, x

    struct Hash {
        std::size_t operator()(const State& s) const {
            std::size_t h = 1469598103934665603ull;
            for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
            return h;
        }
    };

    std::size_t hp_count() const { return c_.size(); }

    // Releases chosen by bitmask, then one step of hp execution.
    State hp_step(State s, unsigned releases, bool* hp_ran) const {
        for (std::size_t i = 0; i < hp_count(); ++i)
            if (releases >> i & 1u) {
                s[2 * i] += c_[i];
                s[2 * i + 1] = 0;
            }
        *hp_ran = false;
        for (std::size_t i = 0; i < hp_count() && !*hp_ran; ++i)
            if (s[2 * i] > 0) {
                --s[2 * i];
                *hp_ran = true;
            }
        for (std::size_t i = 0; i < hp_count(); ++i) s[2 * i + 1] = std::min(s[2 * i + 1] + 1, t_[i]);
        return s;
    }

    unsigned releasable(const State& s) const {
        unsigned mask = 0;
        for (std::size_t i = 0; i < hp_count(); ++i)
            if (s[2 * i + 1] >= t_[i]) mask |= 1u << i;
        return mask;
    }

    std::optional<std::vector<State>> hp_states() const {
        State idle;
        for (std::size_t i = 0; i < hp_count(); ++i) {
            idle.push_back(0);
            idle.push_back(t_[i]);
        }
        std::unordered_set<State, Hash> seen{idle};
        std::vector<State> order{idle};
        for (std::size_t k = 0; k < order.size(); ++k) {
            const unsigned free = releasable(order[k]);
            for (unsigned r = free;; r = (r - 1) & free) {
                bool ran = false;
                State next = hp_step(order[k], r, &ran);
                if (seen.insert(next).second) {
                    order.push_back(next);
                    if (order.size() > limit_) return std::nullopt;
                }
                if (r == 0) break;
            }
        }
        return order;
    }

    std::optional<long> longest(const State& s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) {
            if (it->second < 0) throw AnalysisError("sporadic search found a cycle; hp utilization must be below one");
            return it->second;
        }
        if (++explored_ > limit_ || ++depth_ > kMaxDepth) return std::nullopt;
        memo_.emplace(s, -1);

        const std::size_t n = 2 * hp_count();
        const int seg = s[n];
        const bool suspended = s[n + 1] == 0;
        const int x = s[n + 2];
        std::vector<bool> arrive_options;
        if (!suspended)
            arrive_options = {false};
        else if (x >= seg_s_[seg])
            arrive_options = {true};
        else
            arrive_options = {false, true};

        long best = -1;
        const unsigned free = releasable(s);
        for (unsigned r = free;; r = (r - 1) & free) {
            for (bool arrive : arrive_options) {
                bool hp_ran = false;
                State next = hp_step(s, r, &hp_ran);
                int mode = suspended && !arrive ? 0 : 1;
                int left = suspended ? (arrive ? seg_c_[seg] : x) : x;
                long value = 1;
                if (mode == 1 && !hp_ran) --left;
                if (mode == 0) ++left;  // suspension time passes either way
                if (mode == 1 && left == 0) {
                    if (static_cast<std::size_t>(seg) == target_) {
                        best = std::max(best, value);
                        continue;
                    }
                    next[n] = seg + 1;
                    next[n + 1] = 0;
                    next[n + 2] = 0;
                } else {
                    next[n] = seg;
                    next[n + 1] = mode;
                    next[n + 2] = left;
                }
                auto v = longest(next);
                if (!v) return std::nullopt;
                best = std::max(best, value + *v);
            }
            if (r == 0) break;
        }
        --depth_;
        memo_[s] = best;
        return best;
    }

    static constexpr std::size_t kMaxDepth = 100000;

    std::size_t limit_;
    std::vector<int> c_, t_;
    Ratio util_;
    std::vector<int> seg_c_, seg_s_;
    std::size_t target_ = 0;
    std::unordered_map<State, long, Hash> memo_;
    std::size_t explored_ = 0;
    std::size_t depth_ = 0;
};

inline std::optional<WorstCase> sporadic_search(const std::vector<TaskSpec>& tasks, const TaskSpec& ss,
                                                const Ratio& step, std::size_t limit) {
    SporadicSearch search(tasks, ss, step, limit);
    WorstCase worst;
    if (search.saturated()) {
        worst.response.reset();
        return worst;
    }
    auto steps = search.run();
    if (!steps) return std::nullopt;
    worst.runs = search.states();
    for (long v : *steps) worst.segment.push_back(step * Ratio(v));
    worst.response = worst.segment.back();
    return worst;
}

}  // namespace detail

/// Exhaustive WCRT of the single self-suspending task: the candidate-pattern
/// search, plus the sporadic grid search when affordable. Hp tasks get plain RTA.
inline AnalysisResult wcrt_bruteforce_special_case(const std::vector<TaskSpec>& tasks, const SearchOptions& options = {},
                                                   std::vector<PatternOutcome>* outcomes = nullptr) {
    const TaskSpec& ss = detail::check_special_case(tasks);
    const std::size_t m = ss.segments.size();

    SearchReport report;
    detail::WorstCase worst = detail::candidate_search(tasks, ss, outcomes);
    report.candidate_runs = worst.runs;
    report.candidate_wcrt = worst.response;
    if (options.grid && worst.response) {
        report.grid_step = options.grid_step ? *options.grid_step : detail::parameter_gcd(tasks);
        if (!(report.grid_step > Ratio(0))) throw AnalysisError("grid step must be positive");
        if (auto g = detail::sporadic_search(tasks, ss, report.grid_step, options.grid_limit)) {
            report.grid_searched = true;
            report.grid_states = g->runs;
            report.grid_wcrt = g->response;
            worst.merge(*g);
        }
    }
    worst.segment.resize(m);

    AnalysisResult res;
    res.search = report;
    std::vector<DeferrableTask> plain;
    for (const auto& t : tasks)
        if (&t != &ss) plain.push_back(as_deferrable(t));
    AnalysisResult hp_res = rta_jitter(plain);
    for (const auto& t : tasks) {
        if (&t == &ss) {
            TaskResult r;
            r.id = t.id;
            r.name = t.name;
            r.deadline = t.deadline;
            r.response = worst.response;
            r.schedulable = worst.response && *worst.response <= t.deadline;
            Ratio prev_w = 0;
            for (std::size_t k = 0; k < m; ++k) {
                Ratio susp = k == 0 ? t.jitter : t.segments[k].max_susp_before;
                r.segments.push_back({worst.response ? worst.segment[k] : Ratio(0), prev_w + susp});
                prev_w = worst.segment[k];
            }
            res.tasks.push_back(r);
        } else {
            res.tasks.push_back(*hp_res.find(t.id));
        }
        res.schedulable = res.schedulable && res.tasks.back().schedulable;
    }
    return res;
}

// ---------------------------------------------------------------------------

enum class BlockingModel { shared_memory, distributed };

inline const char* to_string(BlockingModel m) {
    return m == BlockingModel::shared_memory ? "shared_memory" : "distributed";
}

/// Execution plus declared suspension plus, for every other task that can
/// block this one, its longest critical section once. Under shared memory only
/// tasks sharing a resource block; on a synchronization processor any remote
/// critical section can.
inline Ratio wcrt_lock_bound(const TaskSpec& task, const std::vector<TaskSpec>& taskset, BlockingModel mode) {
    std::set<int> mine;
    for (const auto& s : task.segments)
        if (s.request) mine.insert(s.request->resource);
    Ratio bound = task.total_wcet() + task.total_suspension();
    if (mine.empty()) return bound;
    for (const auto& other : taskset) {
        if (other.id == task.id) continue;
        Ratio longest;
        for (const auto& s : other.segments)
            if (s.request && (mode == BlockingModel::distributed || mine.count(s.request->resource)))
                longest = max(longest, s.request->cs_length);
        bound += longest;
    }
    return bound;
}

}  // namespace pe
