#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tempex/model.hpp"

namespace tempex {

/// A materialized run of snapshots G_{t0..t1}, each a tree index into the
/// catalog. Empty windows (t0 == t1 + 1) are allowed. Immutable.
struct TemporalWindow {
    ModelPtr model;
    int t0 = 1;
    int t1 = 0;
    std::vector<int> snapshots;  // snapshots[t - t0] is the catalog index at time t

    int length() const { return t1 - t0 + 1; }
    bool contains(int t) const { return t >= t0 && t <= t1; }
    int snapshot_index(int t) const { return snapshots[static_cast<std::size_t>(t - t0)]; }
    const Tree& snapshot(int t) const { return model->tree(snapshot_index(t)); }

    /// Restriction to [a, b]; times are preserved.
    TemporalWindow slice(int a, int b) const {
        if (a < t0 || b > t1 || a > b + 1) fail(ErrorCode::InvalidRange, "slice outside window");
        TemporalWindow w;
        w.model = model;
        w.t0 = a;
        w.t1 = b;
        w.snapshots.assign(snapshots.begin() + (a - t0), snapshots.begin() + (b - t0 + 1));
        return w;
    }
};

struct TimeEdge {
    Edge edge;
    int time = 0;
};

inline TemporalWindow materialize(ModelPtr model, std::uint64_t seed, int t0, int t1) {
    if (!(1 <= t0 && t0 <= t1 + 1)) fail(ErrorCode::InvalidRange, "need 1 <= t0 <= t1 + 1");
    TemporalWindow w;
    w.model = std::move(model);
    w.t0 = t0;
    w.t1 = t1;
    w.snapshots.reserve(static_cast<std::size_t>(std::max(0, t1 - t0 + 1)));
    for (int t = t0; t <= t1; ++t) w.snapshots.push_back(draw_snapshot(*w.model, seed, t));
    return w;
}

/// Snapshot sequence reversed in place; time bounds preserved.
inline TemporalWindow reverse(const TemporalWindow& w) {
    TemporalWindow r = w;
    std::reverse(r.snapshots.begin(), r.snapshots.end());
    return r;
}

/// An explorer trajectory: positions[i] is the position at the end of step
/// start_time - 1 + i, so positions[0] is the start vertex.
struct Walk {
    int start_time = 1;
    std::vector<Vertex> positions;

    bool empty() const { return positions.empty(); }
    Vertex start() const { return positions.front(); }
    Vertex end() const { return positions.back(); }
    int steps() const { return static_cast<int>(positions.size()) - 1; }
    /// Time of the last step (start_time - 1 for a zero-move walk).
    int end_time() const { return start_time - 1 + steps(); }
    Vertex at_time(int t) const { return positions[static_cast<std::size_t>(t - start_time + 1)]; }
};

struct WalkReport {
    bool valid = false;
    std::optional<int> arrival;  // first time all targets appear among visited positions
};

/// Checks that every step waits or crosses an edge of that step's snapshot,
/// and reports when all targets have been visited. Invalid walks are
/// reported, not thrown.
inline WalkReport validate_walk(const TemporalWindow& window, const Walk& walk,
                                const std::vector<Vertex>& targets) {
    WalkReport report;
    if (walk.positions.empty()) return report;
    const int n = window.model->n;
    for (Vertex p : walk.positions)
        if (p < 1 || p > n) return report;
    if (walk.steps() > 0 &&
        (walk.start_time < window.t0 || walk.end_time() > window.t1))
        return report;

    std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
    auto all_seen = [&]() {
        for (Vertex v : targets)
            if (!visited[static_cast<std::size_t>(v)]) return false;
        return true;
    };

    visited[static_cast<std::size_t>(walk.start())] = 1;
    report.valid = true;
    if (all_seen()) report.arrival = walk.start_time - 1;
    for (int i = 1; i < static_cast<int>(walk.positions.size()); ++i) {
        const int t = walk.start_time + i - 1;
        const Vertex prev = walk.positions[static_cast<std::size_t>(i - 1)];
        const Vertex cur = walk.positions[static_cast<std::size_t>(i)];
        if (cur != prev && !window.snapshot(t).has_edge(prev, cur)) {
            report.valid = false;
            report.arrival.reset();
            return report;
        }
        visited[static_cast<std::size_t>(cur)] = 1;
        if (!report.arrival && all_seen()) report.arrival = t;
    }
    return report;
}

}  // namespace tempex
