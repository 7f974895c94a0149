#pragma once

#include <algorithm>
#include <vector>

#include "tempex/schedule.hpp"
#include "tempex/search.hpp"

namespace tempex {

/// A connected component of the closeness graph with its spanning tree's
/// Euler tour (each tree edge crossed exactly twice).
struct MetaComponent {
    Vertex root = 0;  // smallest vertex id in the component
    std::vector<Vertex> members;
    std::vector<std::pair<Vertex, Vertex>> tour;  // directed crossings, starts and ends at root
};

struct MetaGraph {
    int n = 0;
    std::vector<MetaComponent> components;  // ascending by root
    std::vector<int> component_of;          // 1-based index into components

    const MetaComponent& component_of_vertex(Vertex v) const {
        return components[static_cast<std::size_t>(component_of[static_cast<std::size_t>(v)])];
    }
};

/// Components of the declared-closeness relation; per component a
/// breadth-first spanning tree from the smallest vertex and its Euler tour
/// (depth-first edge doubling, children ascending).
inline MetaGraph build_meta_graph(const Model& model, const ClosenessGraph& closeness) {
    const int n = model.n;
    if (closeness.n != n) fail(ErrorCode::BadParams, "closeness graph is over a different [n]");
    MetaGraph meta;
    meta.n = n;
    meta.component_of.assign(static_cast<std::size_t>(n) + 1, -1);

    for (Vertex r = 1; r <= n; ++r) {
        if (meta.component_of[static_cast<std::size_t>(r)] >= 0) continue;
        const int comp_index = static_cast<int>(meta.components.size());
        MetaComponent comp;
        comp.root = r;
        // BFS from the smallest id; neighbor order ascending.
        std::vector<Vertex> queue{r};
        meta.component_of[static_cast<std::size_t>(r)] = comp_index;
        std::vector<std::vector<Vertex>> children(static_cast<std::size_t>(n) + 1);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            comp.members.push_back(u);
            for (Vertex w = 1; w <= n; ++w) {
                if (w == u || meta.component_of[static_cast<std::size_t>(w)] >= 0) continue;
                if (closeness.close(u, w)) {
                    meta.component_of[static_cast<std::size_t>(w)] = comp_index;
                    children[static_cast<std::size_t>(u)].push_back(w);
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.members.begin(), comp.members.end());
        // Euler tour by doubled depth-first traversal, children ascending.
        auto tour = [&](auto&& self, Vertex u) -> void {
            for (Vertex c : children[static_cast<std::size_t>(u)]) {
                comp.tour.emplace_back(u, c);
                self(self, c);
                comp.tour.emplace_back(c, u);
            }
        };
        tour(tour, r);
        meta.components.push_back(std::move(comp));
    }
    return meta;
}

/// Meta-graph schedule: traverse each closeness component's Euler tour,
/// crossing meta-edges by foremost walks on the realized window, and hop
/// between components with the always-connected n-step hop. Components are
/// visited in ascending order of smallest id, starting with the start
/// vertex's component.
inline Schedule meta_graph_schedule(ModelPtr model, std::uint64_t seed, const MetaGraph& meta,
                                    Vertex start, int max_time) {
    const int n = model->n;
    if (start < 1 || start > n) fail(ErrorCode::VertexOutOfRange, "start outside [1, n]");
    detail::GrowingWindow gw(model, seed);
    detail::WalkBuilder wb(n, start, max_time);
    std::vector<Leg> legs;

    std::vector<int> order;
    const int home = meta.component_of[static_cast<std::size_t>(start)];
    order.push_back(home);
    for (int c = 0; c < static_cast<int>(meta.components.size()); ++c)
        if (c != home) order.push_back(c);

    for (std::size_t oi = 0; oi < order.size() && !wb.done(); ++oi) {
        const MetaComponent& comp = meta.components[static_cast<std::size_t>(order[oi])];
        // travel to the component's tour root
        if (wb.position() != comp.root) {
            const int t = wb.now() + 1;
            gw.ensure(t + n - 1);
            const Walk hop = ehk_hop(gw.window(), wb.position(), comp.root, t);
            Leg leg{oi == 0 ? "entry" : "ehk-hop", wb.position(), comp.root, t, hop.end_time(), 0};
            const bool more = wb.append(hop);
            legs.push_back(leg);
            if (!more) break;
        }
        for (const auto& [u, v] : comp.tour) {
            const int t = wb.now() + 1;
            gw.ensure(t + n - 1);
            auto fw = foremost_walk(gw.window().slice(t, t + n - 1), u, v, t);
            if (!fw) fail(ErrorCode::WindowTooShort, "window is not always-connected");
            Leg leg{"meta-edge", u, v, t, fw->end_time(), 0};
            const bool more = wb.append(*fw);
            legs.push_back(leg);
            if (!more) break;
        }
    }
    if (!wb.done()) fail(ErrorCode::HorizonExceeded, "meta schedule did not finish in max_time");
    return std::move(wb).finish(std::move(legs));
}

}  // namespace tempex
