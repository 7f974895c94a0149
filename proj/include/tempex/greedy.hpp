#pragma once

#include "tempex/schedule.hpp"

namespace tempex {

/// Repeatedly travel to the unvisited vertex with the earliest arrival from
/// the current position (ties to the smallest id). An always-connected window
/// reaches every vertex within n-1 steps, so each leg needs at most one
/// window block.
inline Schedule greedy_schedule(ModelPtr model, std::uint64_t seed, Vertex start, int max_time) {
    const int n = model->n;
    if (start < 1 || start > n) fail(ErrorCode::VertexOutOfRange, "start outside [1, n]");
    detail::GrowingWindow gw(model, seed);
    detail::WalkBuilder wb(n, start, max_time);
    std::vector<Leg> legs;

    while (!wb.done()) {
        const int t = wb.now() + 1;
        gw.ensure(t + n - 1);
        const TemporalWindow view = gw.window().slice(t, t + n - 1);
        const ArrivalMap reach = earliest_arrival(view, {wb.position()}, t);
        Vertex target = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (wb.visited(v) || !reach.reached(v)) continue;
            if (target == 0 || reach.at(v) < reach.at(target)) target = v;
        }
        if (target == 0) fail(ErrorCode::WindowTooShort, "window is not always-connected");
        auto fw = foremost_walk(view, wb.position(), target, t);
        Leg leg{"greedy", wb.position(), target, t, fw->end_time(), 0};
        wb.append(*fw);
        legs.push_back(leg);
    }
    return std::move(wb).finish(std::move(legs));
}

}  // namespace tempex
