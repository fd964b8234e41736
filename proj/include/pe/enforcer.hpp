#pragma once

// Period enforcer eligibility rule:
//
//   ET(i, j, k) = max(ET(i, j-1, k) + T_i, busy(tau_i, a(i, j, k))),  ET(i, 0, k) = -T_i
//
// A segment that arrives before its eligibility time is held back until then.

#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pe/model.hpp"

namespace pe {

/// Which part of a segment an enforcer entry belongs to. Only the exempt-cs
/// lock mode splits a segment: the critical section runs unenforced and the
/// remainder after it is enforced on its own.
enum class SegmentPart { whole = 0, critical = 1, remainder = 2 };

struct EnforcerKey {
    int task = 0;
    int segment = 0;
    SegmentPart part = SegmentPart::whole;

    friend auto operator<=>(const EnforcerKey&, const EnforcerKey&) = default;
};

struct EligibilityDecision {
    Ratio floor;       // previous ET + T
    Ratio busy_start;  // busy(tau_i, arrival)
    Ratio eligible;    // max of the two
};

class EnforcerState {
public:
    /// Last ET stored for `key`, or -period when no job has used it yet.
    Ratio previous(const EnforcerKey& key, const Ratio& period) const {
        auto it = last_.find(key);
        return it == last_.end() ? -period : it->second;
    }

    /// Applies the rule for the next job and stores the result.
    EligibilityDecision update(const EnforcerKey& key, const Ratio& period, const Ratio& busy_start) {
        EligibilityDecision d = peek(key, period, busy_start);
        auto it = last_.find(key);
        if (it != last_.end() && d.eligible - it->second < period)
            throw std::logic_error("enforcer: eligibility times closer than one period");
        last_[key] = d.eligible;
        return d;
    }

    /// The decision `update` would make, without storing it.
    EligibilityDecision peek(const EnforcerKey& key, const Ratio& period, const Ratio& busy_start) const {
        Ratio floor = previous(key, period) + period;
        return {floor, busy_start, max(floor, busy_start)};
    }

private:
    std::map<EnforcerKey, Ratio> last_;
};

/// Stateless form of the rule, for callers that keep ET bookkeeping themselves.
inline Ratio eligibility_time(const Ratio& previous_et, const Ratio& period, const Ratio& busy_start) {
    return max(previous_et + period, busy_start);
}

/// Dynamic-model jobs carry no fixed segment structure: each observed
/// computation chunk is keyed by its order of occurrence within the job.
struct DynamicChunk {
    Ratio suspension_before;
    Ratio exec;
    int enforcer_index = 0;
};

inline std::vector<DynamicChunk> map_dynamic_chunks(const JobBehavior& behavior) {
    if (!behavior.dynamic) throw InputError("map_dynamic_chunks: behaviour is not dynamic");
    if (behavior.actual_susp.size() != behavior.actual_exec.size())
        throw InputError("dynamic behaviour of task " + std::to_string(behavior.task) + " job " +
                         std::to_string(behavior.job) +
                         ": actual_susp and actual_exec must have one entry per chunk");
    std::vector<DynamicChunk> out;
    for (std::size_t c = 0; c < behavior.actual_exec.size(); ++c)
        out.push_back({behavior.actual_susp[c], behavior.actual_exec[c], static_cast<int>(c) + 1});
    return out;
}

}  // namespace pe
