#pragma once

// ASCII Gantt chart of a schedule trace. One row per (task, processor), one
// row for the synchronization processor when present, each followed by a
// marker line for releases and deadline misses.
//
//   #  executing          =  executing a critical section
//   r  ready (preempted)  e  held back by the enforcer
//   b  blocked on a lock  s  self-suspended
//   .  no active job      *  cell holds more than one state, or a partial one
//   on the sync row the digit/letter is the task whose critical section runs
//   ^  release            !  deadline miss

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pe/trace.hpp"

namespace pe {

struct GanttRow {
    std::string label;
    std::string cells;
    std::string markers;
};

namespace gantt_detail {

struct Span {
    Ratio start;
    Ratio end;
    char c;
};

inline char state_char(JobState s, bool critical) {
    switch (s) {
        case JobState::running: return critical ? '=' : '#';
        case JobState::ready: return 'r';
        case JobState::enforcer_wait: return 'e';
        case JobState::blocked: return 'b';
        case JobState::suspended: return 's';
    }
    return '?';
}

inline char task_char(int task) {
    if (task >= 0 && task <= 9) return static_cast<char>('0' + task);
    if (task >= 10 && task < 36) return static_cast<char>('a' + task - 10);
    return '+';
}

inline char classify(const std::vector<Span>& spans, const Ratio& a, const Ratio& b) {
    std::vector<Span> in;
    for (const auto& s : spans)
        if (s.start < b && a < s.end) in.push_back({max(s.start, a), min(s.end, b), s.c});
    if (in.empty()) return '.';
    std::sort(in.begin(), in.end(), [](const Span& x, const Span& y) { return x.start < y.start; });
    Ratio cursor = a;
    for (const auto& s : in) {
        if (s.c != in.front().c || s.start > cursor) return '*';
        cursor = max(cursor, s.end);
    }
    return cursor < b ? '*' : in.front().c;
}

inline std::string tick(const Ratio& t) { return t.den() == 1 ? std::to_string(t.num()) : t.str(); }

}  // namespace gantt_detail

inline std::vector<GanttRow> gantt_rows(const ScheduleTrace& trace, const Ratio& resolution) {
    using namespace gantt_detail;
    if (!(resolution > Ratio(0))) throw InputError("gantt resolution must be positive");
    const std::int64_t cells = (trace.horizon / resolution).ceil();
    auto cell_of = [&](const Ratio& t) { return static_cast<std::size_t>((t / resolution).floor()); };

    std::map<std::pair<int, int>, std::vector<Span>> spans;  // (task, processor)
    for (const auto& s : trace.states)
        spans[{s.task, s.processor}].push_back({s.start, s.end, state_char(s.state, s.critical)});
    for (const auto& j : trace.jobs) spans[{j.task, j.processor}];

    std::vector<GanttRow> rows;
    for (const auto& [key, row_spans] : spans) {
        GanttRow row;
        row.label = "tau" + std::to_string(key.first) + "@P" + std::to_string(key.second);
        for (std::int64_t k = 0; k < cells; ++k)
            row.cells += classify(row_spans, resolution * Ratio(k), resolution * Ratio(k + 1));
        row.markers.assign(static_cast<std::size_t>(cells) + 1, ' ');
        for (const auto& j : trace.jobs) {
            if (j.task != key.first || j.processor != key.second) continue;
            if (cell_of(j.release) < row.markers.size() && row.markers[cell_of(j.release)] == ' ')
                row.markers[cell_of(j.release)] = '^';
            if (j.missed && cell_of(j.absolute_deadline) < row.markers.size())
                row.markers[cell_of(j.absolute_deadline)] = '!';
        }
        while (!row.markers.empty() && row.markers.back() == ' ') row.markers.pop_back();
        rows.push_back(std::move(row));
    }
    if (trace.sync_processor) {
        std::vector<Span> sync;
        for (const auto& x : trace.exec)
            if (x.processor == *trace.sync_processor) sync.push_back({x.start, x.end, task_char(x.task)});
        GanttRow row;
        row.label = "sync@P" + std::to_string(*trace.sync_processor);
        for (std::int64_t k = 0; k < cells; ++k)
            row.cells += classify(sync, resolution * Ratio(k), resolution * Ratio(k + 1));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string render_gantt(const ScheduleTrace& trace, const Ratio& resolution) {
    using gantt_detail::tick;
    auto rows = gantt_rows(trace, resolution);
    const std::int64_t cells = (trace.horizon / resolution).ceil();

    std::size_t pad = 8;
    for (const auto& r : rows) pad = std::max(pad, r.label.size() + 2);

    // Ruler: a label every ten cells, minor marks every five.
    std::string labels(pad, ' '), ruler(pad, ' ');
    for (std::int64_t k = 0; k <= cells; ++k) {
        if (k % 10 == 0) {
            std::string t = tick(resolution * Ratio(k));
            if (labels.size() <= pad + static_cast<std::size_t>(k)) {
                labels.resize(pad + static_cast<std::size_t>(k), ' ');
                labels += t;
            }
        }
        ruler += k % 10 == 0 ? '|' : k % 5 == 0 ? '+' : '-';
    }

    std::string out = "resolution " + tick(resolution) + ", horizon " + tick(trace.horizon) + "\n";
    out += labels + "\n" + ruler + "\n";
    for (const auto& r : rows) {
        out += r.label + std::string(pad - r.label.size(), ' ') + r.cells + "\n";
        if (!r.markers.empty()) out += std::string(pad, ' ') + r.markers + "\n";
    }
    return out;
}

}  // namespace pe
