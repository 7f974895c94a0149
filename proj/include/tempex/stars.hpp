#pragma once

#include <vector>

#include "tempex/models.hpp"
#include "tempex/schedule.hpp"

namespace tempex {

/// Two-phase exploration of a star model plus its phase accounting.
struct StarRun {
    Schedule schedule;
    int coupon_time = 0;   // steps of the centre-chase phase
    int leaf_phase = 0;    // steps of the interval phase
    int centre_catches = 0;
    int intervals = 0;
};

/// Offline exploration of a star model: first collect the centres by chasing
/// the current centre (grabbing an unvisited non-centre on each catch), then
/// visit one remaining non-centre per birthday interval using the repeated
/// centre as a relay (wait, move to the repeated centre at its first
/// occurrence, wait, move to the target when it repeats).
inline StarRun star_exploration_schedule(ModelPtr model, std::uint64_t seed, Vertex start,
                                         int max_time) {
    const int n = model->n;
    if (start < 1 || start > n) fail(ErrorCode::VertexOutOfRange, "start outside [1, n]");
    std::vector<Vertex> catalog_centre(model->catalog.size());
    std::vector<char> is_centre(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < model->catalog.size(); ++i) {
        catalog_centre[i] = star_centre(model->catalog[i]);
        is_centre[static_cast<std::size_t>(catalog_centre[i])] = 1;
    }
    int centre_count = 0;
    for (Vertex v = 1; v <= n; ++v) centre_count += is_centre[static_cast<std::size_t>(v)];

    detail::WalkBuilder wb(n, start, max_time);
    std::vector<Leg> legs;
    StarRun run;

    auto centre_at = [&](int t) {
        return catalog_centre[static_cast<std::size_t>(draw_snapshot(*model, seed, t))];
    };
    auto smallest_unvisited_leaf = [&]() -> Vertex {
        for (Vertex v = 1; v <= n; ++v)
            if (!is_centre[static_cast<std::size_t>(v)] && !wb.visited(v)) return v;
        return 0;
    };

    // Phase 1: chase centres until all of them are visited.
    int centres_seen = is_centre[static_cast<std::size_t>(start)] ? 1 : 0;
    const int phase1_depart = wb.now() + 1;
    while (centres_seen < centre_count && !wb.done()) {
        const int t = wb.now() + 1;
        const Vertex c = centre_at(t);
        Vertex next;
        if (wb.position() == c) {
            ++run.centre_catches;
            const Vertex leaf = smallest_unvisited_leaf();
            next = leaf == 0 ? c : leaf;
        } else {
            next = c;
        }
        if (!wb.visited(next) && is_centre[static_cast<std::size_t>(next)]) ++centres_seen;
        wb.step(next);
    }
    run.coupon_time = wb.now();
    if (run.coupon_time >= phase1_depart)
        legs.push_back({"centre-chase", start, wb.position(), phase1_depart, run.coupon_time, 0});

    // Phase 2: one new non-centre per birthday interval, via the repeated
    // centre of that interval.
    std::vector<int> first_seen(static_cast<std::size_t>(n) + 1, 0);
    int interval_start = wb.now() + 1;
    int scan = wb.now();
    while (!wb.done()) {
        ++scan;
        if (scan > max_time) fail(ErrorCode::HorizonExceeded, "exceeded max_time before full exploration");
        const Vertex c = centre_at(scan);
        if (first_seen[static_cast<std::size_t>(c)] >= interval_start) {
            const int a = first_seen[static_cast<std::size_t>(c)];
            const int b = scan;
            const Vertex target = smallest_unvisited_leaf();
            const Vertex from = wb.position();
            bool more = wb.wait_until(a - 1);
            if (more && wb.position() != c) more = wb.step(c);
            else if (more) more = wb.wait_until(a);
            if (more) more = wb.wait_until(b - 1);
            if (more) wb.step(target);
            legs.push_back({"star-hop", from, target, interval_start, b, 0});
            ++run.intervals;
            // entries older than interval_start are ignored by the >= test,
            // so no explicit reset of first_seen is needed
            interval_start = b + 1;
            scan = b;
        } else {
            first_seen[static_cast<std::size_t>(c)] = scan;
        }
    }
    run.leaf_phase = wb.now() - run.coupon_time;
    run.schedule = std::move(wb).finish(std::move(legs));
    return run;
}

}  // namespace tempex
