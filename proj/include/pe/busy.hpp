#pragma once

// Per-processor execution history used to answer busy(tau_i, t): the start of
// the level-i busy interval that contains t, i.e. the earliest s such that the
// processor executed only work of priority i or higher throughout [s, t].

#include <map>
#include <optional>
#include <vector>

#include "pe/ratio.hpp"

namespace pe {

class BusyTracker {
public:
    /// Record that [start, end) on `processor` was spent running work at
    /// `priority` (nullopt = idle). Work that does not count toward any level-i
    /// busy interval (e.g. enforcement-exempt critical sections) is recorded as
    /// nullopt as well. Intervals must be appended in time order per processor.
    void record(int processor, const Ratio& start, const Ratio& end, std::optional<int> priority) {
        if (!(start < end)) return;
        auto& v = history_[processor];
        if (!v.empty() && v.back().end == start && v.back().priority == priority) {
            v.back().end = end;
            return;
        }
        v.push_back({start, end, priority});
    }

    /// busy(tau_i, t) for a task of priority `priority` on `processor`. If the
    /// processor was idle or running lower-priority work just before t, a new
    /// busy interval starts at t and t is returned.
    Ratio busy_start(int processor, int priority, const Ratio& t) const {
        auto it = history_.find(processor);
        if (it == history_.end()) return t;
        const auto& v = it->second;
        Ratio cursor = t;
        // Find the last interval starting before t.
        std::size_t idx = v.size();
        while (idx > 0 && !(v[idx - 1].start < t)) --idx;
        while (idx > 0) {
            const auto& iv = v[idx - 1];
            if (iv.end < cursor) break;  // gap in the record
            if (!iv.priority || *iv.priority > priority) break;
            cursor = iv.start;
            --idx;
        }
        return cursor;
    }

private:
    struct Interval {
        Ratio start;
        Ratio end;
        std::optional<int> priority;
    };
    std::map<int, std::vector<Interval>> history_;
};

}  // namespace pe
