#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "tempex/window.hpp"

namespace tempex {

inline constexpr int kUnreached = std::numeric_limits<int>::max();

/// Per-vertex earliest arrival times from a source set; sources get
/// t_start - 1. Predecessor time-edges are recorded for walk reconstruction.
struct ArrivalMap {
    int t_start = 1;
    std::vector<int> arrival;  // 1-based; kUnreached if not reached
    std::vector<Vertex> pred;  // predecessor vertex (0 for sources/unreached)

    bool reached(Vertex v) const { return arrival[static_cast<std::size_t>(v)] != kUnreached; }
    int at(Vertex v) const { return arrival[static_cast<std::size_t>(v)]; }
    bool all_reached() const {
        for (std::size_t v = 1; v < arrival.size(); ++v)
            if (arrival[v] == kUnreached) return false;
        return true;
    }
    /// Vertices reached with arrival <= t.
    std::vector<Vertex> reached_by(int t) const {
        std::vector<Vertex> out;
        for (Vertex v = 1; v < static_cast<Vertex>(arrival.size()); ++v)
            if (arrival[static_cast<std::size_t>(v)] <= t) out.push_back(v);
        return out;
    }
};

/// Foremost-path sweep: for t = t_start..t1, relax every edge {u,v} of
/// snapshot t where arrival[u] <= t-1 (both directions). When several edges
/// relax the same vertex at the same step, the smallest predecessor id wins.
/// Early exit once all vertices are reached.
inline ArrivalMap earliest_arrival(const TemporalWindow& window, const std::vector<Vertex>& sources,
                                   int t_start) {
    if (sources.empty()) fail(ErrorCode::BadParams, "need at least one source");
    if (t_start < window.t0 || t_start > window.t1 + 1)
        fail(ErrorCode::InvalidRange, "t_start must lie within or at the start of the window");
    const int n = window.model->n;
    ArrivalMap map;
    map.t_start = t_start;
    map.arrival.assign(static_cast<std::size_t>(n) + 1, kUnreached);
    map.pred.assign(static_cast<std::size_t>(n) + 1, 0);
    int reached = 0;
    for (Vertex s : sources) {
        if (s < 1 || s > n) fail(ErrorCode::VertexOutOfRange, "source outside [1, n]");
        auto& a = map.arrival[static_cast<std::size_t>(s)];
        if (a == kUnreached) {
            a = t_start - 1;
            ++reached;
        }
    }
    auto relax = [&](Vertex from, Vertex to, int t) {
        // Arrivals set during step t equal t, so <= t-1 restricts to pre-step state.
        if (map.arrival[static_cast<std::size_t>(from)] > t - 1) return;
        auto& at = map.arrival[static_cast<std::size_t>(to)];
        auto& pt = map.pred[static_cast<std::size_t>(to)];
        if (at > t) {
            if (at == kUnreached) ++reached;
            at = t;
            pt = from;
        } else if (at == t && from < pt) {
            pt = from;
        }
    };
    for (int t = t_start; t <= window.t1 && reached < n; ++t) {
        const Tree& snap = window.snapshot(t);
        for (const auto& [a, b] : snap.edges) {
            relax(a, b, t);
            relax(b, a, t);
        }
    }
    return map;
}

/// Foremost walk from u to w starting at t_start, with explicit waits;
/// nullopt if w is unreached within the window.
inline std::optional<Walk> foremost_walk(const TemporalWindow& window, Vertex u, Vertex w,
                                         int t_start) {
    ArrivalMap map = earliest_arrival(window, {u}, t_start);
    if (!map.reached(w)) return std::nullopt;
    const int arr = map.at(w);

    std::vector<std::pair<int, Vertex>> hops;  // (time of move, vertex moved to)
    for (Vertex cur = w; cur != u; cur = map.pred[static_cast<std::size_t>(cur)])
        hops.emplace_back(map.at(cur), cur);
    std::reverse(hops.begin(), hops.end());

    Walk walk;
    walk.start_time = t_start;
    walk.positions.reserve(static_cast<std::size_t>(arr - t_start + 2));
    walk.positions.push_back(u);
    std::size_t next_hop = 0;
    for (int t = t_start; t <= arr; ++t) {
        if (next_hop < hops.size() && hops[next_hop].first == t)
            walk.positions.push_back(hops[next_hop++].second);
        else
            walk.positions.push_back(walk.positions.back());
    }
    return walk;
}

/// Always-connected n-step hop: a walk from u reaching w with arrival at most
/// t + n - 2 (n - 1 snapshots always suffice in an always-connected window).
inline Walk ehk_hop(const TemporalWindow& window, Vertex u, Vertex w, int t) {
    const int n = window.model->n;
    if (t < window.t0 || t + n - 2 > window.t1)
        fail(ErrorCode::WindowTooShort, "hop needs n-1 snapshots from t inside the window");
    const int end = std::min(window.t1, t + n - 1);
    auto walk = foremost_walk(window.slice(t, end), u, w, t);
    if (!walk) fail(ErrorCode::WindowTooShort, "window is not always-connected");
    return *walk;
}

}  // namespace tempex
