#pragma once

// Suspension-based mutual exclusion. A blocked job self-suspends until its
// request is granted. Four ways of combining locks with the period enforcer:
//
//  at_eligibility  a request enters contention only once the requesting
//                  segment would be eligible to execute
//  immediate       a request enters contention when issued; the lock may be
//                  held by a segment that is not yet eligible
//  exempt_cs       like immediate, but the critical section itself ignores
//                  eligibility and only the computation after it is enforced
//  distributed     critical sections run as remote calls on a dedicated
//                  synchronization processor, one at a time, never preempted

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pe/model.hpp"

namespace pe {

struct LockRequest {
    int resource = 0;
    int task = 0;
    int job = 0;
    int segment = 0;
    int priority = 0;
    Ratio request;    // when the job asked for the resource
    Ratio effective;  // when the request entered contention
    std::optional<Ratio> grant;
    std::optional<Ratio> release;
    Ratio cs_length;
    std::uint64_t seq = 0;  // issue order, final tie-breaker
};

/// When a request issued at `request` enters contention. `segment_eligibility`
/// is the eligibility time the requesting segment would get if it arrived now
/// (only consulted under at_eligibility with enforcement active).
inline Ratio request_effective_time(const Ratio& request, LockSemantics semantics,
                                    const std::optional<Ratio>& segment_eligibility) {
    if (semantics == LockSemantics::at_eligibility && segment_eligibility)
        return max(request, *segment_eligibility);
    return request;
}

/// Where and how a granted critical section executes.
struct CsPlacement {
    bool on_sync_processor = false;  // distributed: remote call, requester suspends
    bool gated_by_eligibility = false;
    bool counts_toward_busy = true;
};

inline CsPlacement cs_execution_semantics(LockSemantics semantics) {
    switch (semantics) {
        case LockSemantics::at_eligibility:
        case LockSemantics::immediate: return {false, true, true};
        case LockSemantics::exempt_cs: return {false, false, false};
        case LockSemantics::distributed: return {true, false, false};
    }
    return {};
}

class ResourceState {
public:
    ResourceState() = default;
    ResourceState(int id, QueuePolicy policy) : id_(id), policy_(policy) {}

    int id() const { return id_; }
    bool free() const { return !holder_; }
    std::optional<std::size_t> holder() const { return holder_; }
    const std::vector<std::size_t>& queue() const { return queue_; }

    void enqueue(std::size_t request_index) { queue_.push_back(request_index); }

    /// Index of the queued request that would be granted at `t`, if any.
    std::optional<std::size_t> head(const Ratio& t, const std::vector<LockRequest>& log) const {
        std::optional<std::size_t> best;
        for (std::size_t idx : queue_) {
            const auto& r = log[idx];
            if (r.effective > t) continue;
            if (!best || before(r, log[*best])) best = idx;
        }
        return best;
    }

    /// Grants the head of the queue if the resource is free.
    std::optional<std::size_t> grant_next(const Ratio& t, std::vector<LockRequest>& log) {
        if (holder_) return std::nullopt;
        auto next = head(t, log);
        if (!next) return std::nullopt;
        take(*next, t, log);
        return next;
    }

    void take(std::size_t idx, const Ratio& t, std::vector<LockRequest>& log) {
        queue_.erase(std::find(queue_.begin(), queue_.end(), idx));
        holder_ = idx;
        log[idx].grant = t;
    }

    void release(const Ratio& t, std::vector<LockRequest>& log) {
        if (holder_) log[*holder_].release = t;
        holder_.reset();
    }

    bool before(const LockRequest& a, const LockRequest& b) const {
        if (policy_ == QueuePolicy::priority) {
            if (a.priority != b.priority) return a.priority < b.priority;
            if (a.effective != b.effective) return a.effective < b.effective;
        } else {
            if (a.effective != b.effective) return a.effective < b.effective;
            if (a.priority != b.priority) return a.priority < b.priority;
        }
        return a.seq < b.seq;
    }

private:
    int id_ = 0;
    QueuePolicy policy_ = QueuePolicy::fifo;
    std::optional<std::size_t> holder_;
    std::vector<std::size_t> queue_;
};

/// All resources of one simulation plus the request log.
class LockManager {
public:
    LockManager(QueuePolicy policy, bool serialized) : policy_(policy), serialized_(serialized) {}

    std::size_t issue(LockRequest req) {
        req.seq = next_seq_++;
        log_.push_back(req);
        std::size_t idx = log_.size() - 1;
        resource(req.resource).enqueue(idx);
        return idx;
    }

    /// Grants every request that can be granted at `t`; returns their indices
    /// in grant order. When `serialized` (distributed mode), only one critical
    /// section may be in progress system-wide.
    std::vector<std::size_t> grant_all(const Ratio& t) {
        std::vector<std::size_t> granted;
        if (!serialized_) {
            for (auto& [id, res] : resources_)
                if (auto g = res.grant_next(t, log_)) granted.push_back(*g);
            return granted;
        }
        for (const auto& [id, res] : resources_)
            if (!res.free()) return granted;
        ResourceState* best_res = nullptr;
        std::optional<std::size_t> best;
        for (auto& [id, res] : resources_) {
            auto h = res.head(t, log_);
            if (h && (!best || res.before(log_[*h], log_[*best]))) {
                best = h;
                best_res = &res;
            }
        }
        if (best) {
            best_res->take(*best, t, log_);
            granted.push_back(*best);
        }
        return granted;
    }

    void release(int resource_id, const Ratio& t) { resource(resource_id).release(t, log_); }

    const std::vector<LockRequest>& log() const { return log_; }
    const LockRequest& at(std::size_t idx) const { return log_[idx]; }

    /// Earliest effective time > t among queued requests (for event scheduling).
    std::optional<Ratio> next_effective_after(const Ratio& t) const {
        std::optional<Ratio> best;
        for (const auto& [id, res] : resources_)
            for (std::size_t idx : res.queue())
                if (log_[idx].effective > t && (!best || log_[idx].effective < *best))
                    best = log_[idx].effective;
        return best;
    }

private:
    ResourceState& resource(int id) {
        auto it = resources_.find(id);
        if (it == resources_.end()) it = resources_.emplace(id, ResourceState(id, policy_)).first;
        return it->second;
    }

    QueuePolicy policy_;
    bool serialized_;
    std::uint64_t next_seq_ = 0;
    std::map<int, ResourceState> resources_;
    std::vector<LockRequest> log_;
};

}  // namespace pe
