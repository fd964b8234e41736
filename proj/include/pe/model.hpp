#pragma once

// Task model: segmented self-suspending tasks, per-job actual behaviour and the
// system configuration a simulation runs under.
//
// Conventions:
//  * priorities are integers, lower number = higher priority, unique per processor
//  * segment indices are 1-based, job indices are 1-based
//  * segments[0].max_susp_before must be zero; the suspension ahead of the first
//    segment (release jitter) lives in TaskSpec::jitter
//  * a lock-induced suspension is produced by the lock layer, not scripted; a
//    segment that starts with a critical section normally declares
//    max_susp_before = 0

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pe/ratio.hpp"

namespace pe {

/// Thrown for malformed tasks, behaviours or scenario documents.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ResourceRequest {
    int resource = 0;
    Ratio cs_length;
    Ratio offset;  // execution inside the segment before the request is issued

    friend bool operator==(const ResourceRequest&, const ResourceRequest&) = default;
};

struct Segment {
    Ratio wcet;
    Ratio max_susp_before;
    std::optional<ResourceRequest> request;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct PeriodicArrival {
    Ratio offset;
    friend bool operator==(const PeriodicArrival&, const PeriodicArrival&) = default;
};

struct ScriptedArrival {
    std::vector<Ratio> releases;
    friend bool operator==(const ScriptedArrival&, const ScriptedArrival&) = default;
};

using ArrivalKind = std::variant<PeriodicArrival, ScriptedArrival>;

struct TaskSpec {
    int id = 0;
    std::string name;
    int priority = 0;
    Ratio period;
    Ratio deadline;
    Ratio jitter;
    std::vector<Segment> segments;
    int processor = 0;
    ArrivalKind arrival = PeriodicArrival{};

    Ratio total_wcet() const {
        Ratio c;
        for (const auto& s : segments) c += s.wcet;
        return c;
    }
    /// Total suspension budget, including release jitter.
    Ratio total_suspension() const {
        Ratio s = jitter;
        for (const auto& seg : segments) s += seg.max_susp_before;
        return s;
    }
    bool uses_resources() const {
        return std::any_of(segments.begin(), segments.end(),
                           [](const Segment& s) { return s.request.has_value(); });
    }
    bool self_suspends() const { return segments.size() > 1 || jitter > Ratio(0); }

    friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

/// Actual behaviour of one job. Without the dynamic flag, `actual_susp` holds
/// either m-1 entries (suspension ahead of segments 2..m) or m entries (the
/// first being the actual release jitter) and `actual_exec` holds m entries.
/// With the dynamic flag, `actual_susp[c]` precedes chunk `actual_exec[c]`.
struct JobBehavior {
    int task = 0;
    int job = 0;
    std::vector<Ratio> actual_susp;
    std::vector<Ratio> actual_exec;
    bool dynamic = false;

    friend bool operator==(const JobBehavior&, const JobBehavior&) = default;
};

enum class Enforcement { off, on, on_idle_eligible };
enum class LockSemantics { at_eligibility, immediate, exempt_cs, distributed };
enum class QueuePolicy { fifo, priority };

struct SystemConfig {
    std::vector<int> processors{1};
    Enforcement enforcement = Enforcement::off;
    LockSemantics lock_semantics = LockSemantics::at_eligibility;
    std::optional<int> sync_processor;
    QueuePolicy queue = QueuePolicy::fifo;
    Ratio horizon{1};

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<TaskSpec> tasks;
    std::vector<JobBehavior> behaviors;
    /// Overrides TaskSpec::arrival for the listed task ids.
    std::map<int, std::vector<Ratio>> releases;
    SystemConfig config;

    const TaskSpec* find_task(int id) const {
        for (const auto& t : tasks)
            if (t.id == id) return &t;
        return nullptr;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    int task = 0;  // 0 when not task specific
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const {
        return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
            return i.severity == ValidationIssue::Severity::error;
        });
    }
    std::string summary() const {
        std::string out;
        for (const auto& i : issues) {
            out += i.severity == ValidationIssue::Severity::error ? "error" : "warning";
            if (i.task != 0) out += " (task " + std::to_string(i.task) + ")";
            out += ": " + i.message + "\n";
        }
        return out;
    }
};

inline ValidationReport validate_taskset(const std::vector<TaskSpec>& tasks) {
    ValidationReport rep;
    auto error = [&](int task, std::string msg) {
        rep.issues.push_back({ValidationIssue::Severity::error, task, std::move(msg)});
    };
    auto warn = [&](int task, std::string msg) {
        rep.issues.push_back({ValidationIssue::Severity::warning, task, std::move(msg)});
    };

    std::set<int> ids;
    std::map<std::pair<int, int>, int> prio_owner;  // (processor, priority) -> task
    for (const auto& t : tasks) {
        if (!ids.insert(t.id).second) error(t.id, "duplicate task id");
        auto [it, fresh] = prio_owner.emplace(std::pair{t.processor, t.priority}, t.id);
        if (!fresh)
            error(t.id, "priority " + std::to_string(t.priority) + " already used by task " +
                            std::to_string(it->second) + " on processor " +
                            std::to_string(t.processor));
        if (t.segments.empty()) error(t.id, "task has no computation segments");
        if (t.period <= Ratio(0)) error(t.id, "period must be positive");
        if (t.deadline <= Ratio(0)) error(t.id, "deadline must be positive");
        if (t.deadline > t.period) warn(t.id, "deadline exceeds period (arbitrary deadline)");
        if (t.jitter < Ratio(0)) error(t.id, "negative jitter");
        for (std::size_t k = 0; k < t.segments.size(); ++k) {
            const auto& s = t.segments[k];
            std::string where = "segment " + std::to_string(k + 1) + ": ";
            if (s.wcet <= Ratio(0)) error(t.id, where + "wcet must be positive");
            if (s.max_susp_before < Ratio(0)) error(t.id, where + "negative suspension bound");
            if (k == 0 && s.max_susp_before != Ratio(0))
                error(t.id, where + "suspension before the first segment belongs in jitter");
            if (s.request) {
                const auto& r = *s.request;
                if (r.cs_length <= Ratio(0)) error(t.id, where + "critical section must be positive");
                if (r.offset < Ratio(0)) error(t.id, where + "negative request offset");
                if (r.offset + r.cs_length > s.wcet)
                    error(t.id, where + "critical section extends past the segment");
            }
        }
        if (const auto* sc = std::get_if<ScriptedArrival>(&t.arrival)) {
            for (std::size_t j = 1; j < sc->releases.size(); ++j)
                if (sc->releases[j] - sc->releases[j - 1] < t.period)
                    error(t.id, "scripted releases closer than the period");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Arrivals

/// Release times of `task` strictly before `horizon`. Scripted lists are checked
/// for sporadic legality (consecutive gaps >= period).
inline std::vector<Ratio> expand_arrivals(const TaskSpec& task, const Ratio& horizon,
                                          const std::vector<Ratio>* scripted_override = nullptr) {
    if (horizon <= Ratio(0)) throw InputError("horizon must be positive");
    std::vector<Ratio> out;
    const std::vector<Ratio>* scripted = scripted_override;
    if (!scripted)
        if (const auto* sc = std::get_if<ScriptedArrival>(&task.arrival)) scripted = &sc->releases;

    if (scripted) {
        for (std::size_t j = 0; j < scripted->size(); ++j) {
            const Ratio& r = (*scripted)[j];
            if (r < Ratio(0))
                throw InputError("task " + std::to_string(task.id) + ": negative release time");
            if (j > 0 && r - (*scripted)[j - 1] < task.period)
                throw InputError("task " + std::to_string(task.id) + ": releases " +
                                 (*scripted)[j - 1].str() + " and " + r.str() +
                                 " are closer than the minimum inter-arrival time " +
                                 task.period.str());
            if (r < horizon) out.push_back(r);
        }
        return out;
    }
    const auto& p = std::get<PeriodicArrival>(task.arrival);
    if (task.period <= Ratio(0)) throw InputError("task " + std::to_string(task.id) + ": period must be positive");
    for (Ratio r = p.offset; r < horizon; r += task.period) out.push_back(r);
    return out;
}

inline const char* to_string(Enforcement e) {
    switch (e) {
        case Enforcement::off: return "off";
        case Enforcement::on: return "on";
        case Enforcement::on_idle_eligible: return "on-idle-eligible";
    }
    return "?";
}

inline const char* to_string(LockSemantics l) {
    switch (l) {
        case LockSemantics::at_eligibility: return "at-eligibility";
        case LockSemantics::immediate: return "immediate";
        case LockSemantics::exempt_cs: return "exempt-cs";
        case LockSemantics::distributed: return "distributed";
    }
    return "?";
}

inline const char* to_string(QueuePolicy q) { return q == QueuePolicy::fifo ? "fifo" : "priority"; }

inline Enforcement parse_enforcement(const std::string& s) {
    if (s == "off") return Enforcement::off;
    if (s == "on") return Enforcement::on;
    if (s == "on-idle-eligible" || s == "on_idle_eligible") return Enforcement::on_idle_eligible;
    throw InputError("unknown enforcement \"" + s + "\" (expected off, on, on-idle-eligible)");
}

inline LockSemantics parse_lock_semantics(const std::string& s) {
    if (s == "at-eligibility" || s == "at_eligibility") return LockSemantics::at_eligibility;
    if (s == "immediate") return LockSemantics::immediate;
    if (s == "exempt-cs" || s == "exempt_cs") return LockSemantics::exempt_cs;
    if (s == "distributed") return LockSemantics::distributed;
    throw InputError("unknown lock_semantics \"" + s +
                     "\" (expected at-eligibility, immediate, exempt-cs, distributed)");
}

inline QueuePolicy parse_queue_policy(const std::string& s) {
    if (s == "fifo") return QueuePolicy::fifo;
    if (s == "priority") return QueuePolicy::priority;
    throw InputError("unknown queue policy \"" + s + "\" (expected fifo, priority)");
}

}  // namespace pe
