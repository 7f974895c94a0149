#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "tempex/mst.hpp"
#include "tempex/schedule.hpp"

namespace tempex {

namespace detail {

/// m^(1/k), snapped to the exact integer when m is a perfect k-th power.
inline double nth_root(int m, int k) {
    double r = std::pow(static_cast<double>(m), 1.0 / k);
    const auto candidates = {std::floor(r), std::round(r), std::ceil(r)};
    for (double c : candidates) {
        if (c < 1) continue;
        long long p = 1;
        bool overflow = false;
        for (int i = 0; i < k; ++i) {
            p *= static_cast<long long>(c);
            if (p > (1ll << 60)) {
                overflow = true;
                break;
            }
        }
        if (!overflow && p == m) return c;
    }
    return r;
}

}  // namespace detail

struct FastComponent {
    Vertex rep = 0;  // smallest vertex id
    std::vector<Vertex> members;
};

struct MetaEdgeInfo {
    Vertex from = 0;  // smallest-id vertex of Q (inside the merged side)
    Vertex to = 0;    // smallest-id vertex of Q'
    int fast_from = -1;
    int fast_to = -1;
    double crossing_probability = 0.0;  // exact Pr[some edge between V(Q) and V(Q')]
};

/// The full backbone construction: edge weights, minimum-weight spanning tree,
/// backbone forest, fast components, meta-edges, and the Euler tour of H.
struct BackbonePlan {
    ModelPtr model;
    std::vector<Edge> base_edges;  // union graph G, sorted
    int m = 0;
    std::vector<std::uint64_t> edge_mass;  // appearance mass per base edge (fraction of 2^32)
    std::vector<double> edge_weight;       // w_e = 1/p_e
    Tree t_min;
    double t_min_weight = 0.0;
    double alpha = 0.0;  // m^(1/6)
    double beta = 0.0;   // m^(1/4)
    std::vector<Edge> backbone;  // L: t_min edges with w_e <= 4m/alpha
    std::vector<int> f_component_of;  // 1-based, id = index into f_roots
    std::vector<Vertex> f_roots;      // smallest member per backbone component, ascending
    std::vector<Edge> fast_edges;     // F_fast after diameter splitting
    std::vector<int> fast_component_of;  // 1-based
    std::vector<FastComponent> fast_components;
    std::vector<MetaEdgeInfo> meta_edges;
    std::vector<Edge> h_edges;  // backbone plus meta-edges; a spanning tree of [n]
    std::vector<std::pair<Vertex, Vertex>> euler_tour;  // doubled DFS from vertex 1
    std::set<Edge> meta_pairs;  // which tour crossings are meta-edges

    double light_threshold() const { return 4.0 * m / alpha; }        // backbone bound
    double ultra_light_threshold() const { return 4.0 * m / (alpha * alpha); }
    double diameter_bound() const { return static_cast<double>(m) / beta; }
    int fast_component_bound() const {
        return static_cast<int>(alpha * alpha + 1 + 12 * beta);
    }

    double weight_of(Edge e) const {
        auto it = std::lower_bound(base_edges.begin(), base_edges.end(), e);
        return edge_weight[static_cast<std::size_t>(it - base_edges.begin())];
    }
};

namespace detail {

struct ForestView {
    int n;
    std::vector<std::vector<std::pair<Vertex, double>>> adj;  // weighted

    explicit ForestView(int n_) : n(n_), adj(static_cast<std::size_t>(n_) + 1) {}
    void add(Edge e, double w) {
        adj[static_cast<std::size_t>(e.first)].emplace_back(e.second, w);
        adj[static_cast<std::size_t>(e.second)].emplace_back(e.first, w);
    }
    void remove(Edge e) {
        auto drop = [&](Vertex a, Vertex b) {
            auto& v = adj[static_cast<std::size_t>(a)];
            v.erase(std::find_if(v.begin(), v.end(),
                                 [b](const auto& pr) { return pr.first == b; }));
        };
        drop(e.first, e.second);
        drop(e.second, e.first);
    }
};

/// Weighted farthest vertex from s within its forest component; ties to the
/// smaller id. Also returns parents for path recovery.
inline std::pair<Vertex, std::vector<Vertex>> farthest_in_tree(const ForestView& f, Vertex s) {
    std::vector<double> dist(static_cast<std::size_t>(f.n) + 1, -1.0);
    std::vector<Vertex> parent(static_cast<std::size_t>(f.n) + 1, 0);
    std::vector<Vertex> stack{s};
    dist[static_cast<std::size_t>(s)] = 0.0;
    Vertex best = s;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        if (dist[static_cast<std::size_t>(u)] > dist[static_cast<std::size_t>(best)] ||
            (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(best)] && u < best))
            best = u;
        for (const auto& [w, wt] : f.adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(w)] >= 0.0) continue;
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + wt;
            parent[static_cast<std::size_t>(w)] = u;
            stack.push_back(w);
        }
    }
    return {best, parent};
}

/// Component labels over [n] induced by an edge set; label order is by
/// smallest member, and roots lists each component's smallest member.
inline std::pair<std::vector<int>, std::vector<Vertex>> label_components(
    int n, const std::vector<Edge>& edges) {
    Dsu dsu(n);
    for (const auto& [a, b] : edges) dsu.unite(a, b);
    std::vector<int> label(static_cast<std::size_t>(n) + 1, -1);
    std::vector<Vertex> roots;
    for (Vertex v = 1; v <= n; ++v) {
        const int root = dsu.find(v);
        if (label[static_cast<std::size_t>(root)] < 0) {
            label[static_cast<std::size_t>(root)] = static_cast<int>(roots.size());
            roots.push_back(v);  // v is the smallest member of its component
        }
        label[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(root)];
    }
    return {label, roots};
}

}  // namespace detail

inline BackbonePlan build_backbone_plan(ModelPtr model) {
    BackbonePlan plan;
    plan.model = model;
    const int n = model->n;
    plan.base_edges = union_edges(*model);
    plan.m = static_cast<int>(plan.base_edges.size());
    if (plan.m == 0) {  // single-vertex model
        plan.t_min = validate_tree(n, {});
        plan.alpha = plan.beta = 1.0;
        std::tie(plan.f_component_of, plan.f_roots) = detail::label_components(n, {});
        plan.fast_component_of = plan.f_component_of;
        plan.fast_components.push_back({1, {1}});
        return plan;
    }
    plan.edge_mass.reserve(plan.base_edges.size());
    plan.edge_weight.reserve(plan.base_edges.size());
    std::vector<WeightedEdge> weighted;
    weighted.reserve(plan.base_edges.size());
    for (const Edge& e : plan.base_edges) {
        const std::uint64_t mass = edge_weight_sum(*model, e);
        plan.edge_mass.push_back(mass);
        const double w = static_cast<double>(kWeightOne) / static_cast<double>(mass);
        plan.edge_weight.push_back(w);
        weighted.push_back({e.first, e.second, w});
    }
    plan.t_min = min_weight_spanning_tree(n, weighted);
    for (const Edge& e : plan.t_min.edges) plan.t_min_weight += plan.weight_of(e);
    plan.alpha = detail::nth_root(plan.m, 6);
    plan.beta = detail::nth_root(plan.m, 4);

    // Backbone forest F: light edges of T_min.
    for (const Edge& e : plan.t_min.edges)
        if (plan.weight_of(e) <= plan.light_threshold()) plan.backbone.push_back(e);
    std::tie(plan.f_component_of, plan.f_roots) = detail::label_components(n, plan.backbone);

    // Fast components: start from the ultra-light subforest, then split any
    // component whose weighted diameter exceeds m/beta at the edge that
    // divides the diameter path most evenly.
    plan.fast_edges.clear();
    detail::ForestView forest(n);
    for (const Edge& e : plan.backbone) {
        if (plan.weight_of(e) <= plan.ultra_light_threshold()) {
            plan.fast_edges.push_back(e);
            forest.add(e, plan.weight_of(e));
        }
    }
    const double bound = plan.diameter_bound();
    for (;;) {
        auto [label, roots] = detail::label_components(n, plan.fast_edges);
        bool split = false;
        for (Vertex root : roots) {
            auto [x, parent_unused] = detail::farthest_in_tree(forest, root);
            auto [y, parent] = detail::farthest_in_tree(forest, x);
            (void)parent_unused;
            // reconstruct x..y path and its weight
            std::vector<Vertex> path;
            for (Vertex cur = y; cur != 0; cur = parent[static_cast<std::size_t>(cur)]) {
                path.push_back(cur);
                if (cur == x) break;
            }
            if (path.size() < 2) continue;
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                total += plan.weight_of(make_edge(path[i], path[i + 1]));
            if (total <= bound) continue;
            // pick the split edge: most even division, ties to the smaller pair
            double prefix = 0.0;
            double best_gap = -1.0;
            Edge best_edge{0, 0};
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const Edge e = make_edge(path[i], path[i + 1]);
                const double w = plan.weight_of(e);
                const double left = prefix;
                const double right = total - prefix - w;
                const double gap = std::abs(left - right);
                if (best_gap < 0.0 || gap < best_gap - 1e-12 ||
                    (std::abs(gap - best_gap) <= 1e-12 && e < best_edge)) {
                    best_gap = gap;
                    best_edge = e;
                }
                prefix += w;
            }
            plan.fast_edges.erase(std::find(plan.fast_edges.begin(), plan.fast_edges.end(), best_edge));
            forest.remove(best_edge);
            split = true;
            break;  // recompute components after each removal
        }
        if (!split) break;
    }
    std::sort(plan.fast_edges.begin(), plan.fast_edges.end());
    std::vector<Vertex> fast_roots;
    std::tie(plan.fast_component_of, fast_roots) = detail::label_components(n, plan.fast_edges);
    plan.fast_components.resize(fast_roots.size());
    for (std::size_t i = 0; i < fast_roots.size(); ++i) plan.fast_components[i].rep = fast_roots[i];
    for (Vertex v = 1; v <= n; ++v)
        plan.fast_components[static_cast<std::size_t>(plan.fast_component_of[static_cast<std::size_t>(v)])]
            .members.push_back(v);

    // Exact crossing masses Pr[Lambda_{Q,Q'}] per pair of fast components.
    std::map<std::pair<int, int>, std::uint64_t> crossing;
    {
        std::set<std::pair<int, int>> per_tree;
        for (std::size_t i = 0; i < model->catalog.size(); ++i) {
            per_tree.clear();
            for (const Edge& e : model->catalog[i].edges) {
                int a = plan.fast_component_of[static_cast<std::size_t>(e.first)];
                int b = plan.fast_component_of[static_cast<std::size_t>(e.second)];
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                per_tree.insert({a, b});
            }
            for (const auto& pr : per_tree) crossing[pr] += model->weights[i];
        }
    }

    // Greedy merge of backbone components via maximum-probability crossings.
    const int f_count = static_cast<int>(plan.f_roots.size());
    std::vector<char> in_d1(static_cast<std::size_t>(f_count), 0);
    in_d1[static_cast<std::size_t>(plan.f_component_of[1])] = 1;
    int merged = 1;
    while (merged < f_count) {
        std::uint64_t best_mass = 0;
        std::pair<Vertex, Vertex> best_reps{0, 0};
        std::pair<int, int> best_pair{-1, -1};
        for (const auto& [pr, mass] : crossing) {
            const auto [qa, qb] = pr;
            const bool a_in = in_d1[static_cast<std::size_t>(
                plan.f_component_of[static_cast<std::size_t>(plan.fast_components[static_cast<std::size_t>(qa)].rep)])];
            const bool b_in = in_d1[static_cast<std::size_t>(
                plan.f_component_of[static_cast<std::size_t>(plan.fast_components[static_cast<std::size_t>(qb)].rep)])];
            if (a_in == b_in) continue;
            const int q_in = a_in ? qa : qb;
            const int q_out = a_in ? qb : qa;
            const Vertex ru = plan.fast_components[static_cast<std::size_t>(q_in)].rep;
            const Vertex rv = plan.fast_components[static_cast<std::size_t>(q_out)].rep;
            const std::pair<Vertex, Vertex> reps =
                ru < rv ? std::pair{ru, rv} : std::pair{rv, ru};
            if (mass > best_mass ||
                (mass == best_mass && best_pair.first >= 0 && reps < best_reps)) {
                best_mass = mass;
                best_reps = reps;
                best_pair = {q_in, q_out};
            }
        }
        if (best_pair.first < 0)
            fail(ErrorCode::Disconnected, "no crossing pair found; catalog trees must span [n]");
        MetaEdgeInfo me;
        me.fast_from = best_pair.first;
        me.fast_to = best_pair.second;
        me.from = plan.fast_components[static_cast<std::size_t>(best_pair.first)].rep;
        me.to = plan.fast_components[static_cast<std::size_t>(best_pair.second)].rep;
        me.crossing_probability =
            static_cast<double>(best_mass) / static_cast<double>(kWeightOne);
        plan.meta_edges.push_back(me);
        in_d1[static_cast<std::size_t>(
            plan.f_component_of[static_cast<std::size_t>(me.to)])] = 1;
        ++merged;
    }

    // H = backbone forest plus meta-edges; a spanning tree of [n].
    plan.h_edges = plan.backbone;
    for (const auto& me : plan.meta_edges) {
        const Edge e = make_edge(me.from, me.to);
        plan.h_edges.push_back(e);
        plan.meta_pairs.insert(e);
    }
    const Tree h = validate_tree(n, plan.h_edges);
    auto tour = [&](auto&& self, Vertex u, Vertex from) -> void {
        for (Vertex c : h.adj[static_cast<std::size_t>(u)]) {
            if (c == from) continue;
            plan.euler_tour.emplace_back(u, c);
            self(self, c, u);
            plan.euler_tour.emplace_back(c, u);
        }
    };
    tour(tour, 1, 0);
    return plan;
}

/// Structural invariants of a plan; violations are returned for reporting.
inline std::vector<std::string> backbone_plan_violations(const BackbonePlan& plan) {
    std::vector<std::string> out;
    if (plan.t_min_weight > 4.0 * plan.m + 1e-6) out.push_back("w(T_min) > 4m");
    const int excess = static_cast<int>(plan.t_min.edges.size() - plan.backbone.size());
    if (excess > plan.alpha + 1e-9) out.push_back("|E(T_min) \\ L| > alpha");
    if (static_cast<int>(plan.fast_components.size()) > plan.fast_component_bound())
        out.push_back("too many fast components");
    for (const Edge& e : plan.fast_edges)
        if (plan.weight_of(e) > plan.ultra_light_threshold() + 1e-9)
            out.push_back("fast edge heavier than 4m/alpha^2");
    // per-component weighted diameter
    detail::ForestView forest(plan.model->n);
    for (const Edge& e : plan.fast_edges) forest.add(e, plan.weight_of(e));
    for (const auto& comp : plan.fast_components) {
        auto [x, p1] = detail::farthest_in_tree(forest, comp.rep);
        auto [y, parent] = detail::farthest_in_tree(forest, x);
        (void)p1;
        double total = 0.0;
        for (Vertex cur = y; cur != x; cur = parent[static_cast<std::size_t>(cur)])
            total += plan.weight_of(make_edge(cur, parent[static_cast<std::size_t>(cur)]));
        if (total > plan.diameter_bound() + 1e-9) {
            out.push_back("fast component diameter above m/beta");
            break;
        }
    }
    if (static_cast<int>(plan.h_edges.size()) != plan.model->n - 1)
        out.push_back("H is not spanning/acyclic");
    if (static_cast<int>(plan.euler_tour.size()) != 2 * (plan.model->n - 1))
        out.push_back("Euler tour does not double every edge");
    return out;
}

/// Wait-and-cross along the unique fast-component tree path from `from` to
/// `to`, starting at step `start`. Returns the arrival time and appends the
/// positions for each step into `steps`, or nullopt if `deadline` is hit.
inline std::optional<int> wait_and_cross_path(const TemporalWindow& window,
                                              const std::vector<Vertex>& path, int start,
                                              int deadline, std::vector<Vertex>* steps) {
    int t = start - 1;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Vertex a = path[i];
        const Vertex b = path[i + 1];
        for (;;) {
            ++t;
            if (t > deadline || t > window.t1) return std::nullopt;
            if (window.snapshot(t).has_edge(a, b)) {
                if (steps) steps->push_back(b);
                break;
            }
            if (steps) steps->push_back(a);
        }
    }
    return t;
}

namespace detail {

/// Unique path between two vertices of the same fast component, over a
/// prebuilt fast-forest adjacency.
inline std::vector<Vertex> fast_tree_path(const std::vector<std::vector<Vertex>>& adj, Vertex from,
                                          Vertex to) {
    if (from == to) return {from};
    std::vector<Vertex> parent(adj.size(), -1);
    std::vector<Vertex> stack{from};
    parent[static_cast<std::size_t>(from)] = 0;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        if (u == to) break;
        for (Vertex w : adj[static_cast<std::size_t>(u)]) {
            if (parent[static_cast<std::size_t>(w)] >= 0) continue;
            parent[static_cast<std::size_t>(w)] = u;
            stack.push_back(w);
        }
    }
    if (parent[static_cast<std::size_t>(to)] < 0)
        fail(ErrorCode::BadParams, "vertices are in different fast components");
    std::vector<Vertex> path;
    for (Vertex cur = to; cur != 0; cur = parent[static_cast<std::size_t>(cur)]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

/// O(m)-style schedule: follow the Euler tour of H. Backbone edges are
/// crossed by waiting for the edge to appear; meta-edges scan the realized
/// future for the earliest feasible crossing time-edge between the two fast
/// components (initial scan window 6m/alpha, extended in m/alpha blocks until
/// a feasible crossing is found; the extension count is logged per leg).
inline Schedule linear_schedule(ModelPtr model, std::uint64_t seed, const BackbonePlan& plan,
                                Vertex start, int max_time) {
    const int n = model->n;
    if (start < 1 || start > n) fail(ErrorCode::VertexOutOfRange, "start outside [1, n]");
    detail::GrowingWindow gw(model, seed);
    detail::WalkBuilder wb(n, start, max_time);
    std::vector<Leg> legs;

    std::vector<std::vector<Vertex>> fast_adj(static_cast<std::size_t>(n) + 1);
    for (const Edge& e : plan.fast_edges) {
        fast_adj[static_cast<std::size_t>(e.first)].push_back(e.second);
        fast_adj[static_cast<std::size_t>(e.second)].push_back(e.first);
    }

    // First move to vertex 1, the root of the tour.
    if (!wb.done() && wb.position() != 1) {
        const int t = wb.now() + 1;
        gw.ensure(t + n - 1);
        auto fw = foremost_walk(gw.window().slice(t, t + n - 1), wb.position(), 1, t);
        if (!fw) fail(ErrorCode::WindowTooShort, "window is not always-connected");
        Leg leg{"entry", wb.position(), 1, t, fw->end_time(), 0};
        wb.append(*fw);
        legs.push_back(leg);
    }

    const int scan_initial = std::max(1, static_cast<int>(std::ceil(6.0 * plan.m / plan.alpha)));
    const int scan_block =
        std::max(1, static_cast<int>(std::ceil(static_cast<double>(plan.m) / plan.alpha)));

    for (const auto& [u, v] : plan.euler_tour) {
        if (wb.done()) break;
        const int depart = wb.now() + 1;
        if (!plan.meta_pairs.count(make_edge(u, v))) {
            // backbone edge: wait at u until it appears, then cross
            for (;;) {
                const int t = wb.now() + 1;
                gw.ensure(t);
                if (gw.window().snapshot(t).has_edge(u, v)) {
                    wb.step(v);
                    break;
                }
                wb.step(u);
            }
            legs.push_back({"backbone", u, v, depart, wb.now(), 0});
            continue;
        }

        // meta-edge: scan for the earliest crossing time-edge between the two
        // fast components whose near endpoint is reachable in time
        const int qu = plan.fast_component_of[static_cast<std::size_t>(u)];
        const int qv = plan.fast_component_of[static_cast<std::size_t>(v)];
        int extensions = 0;
        int scan_from = depart;
        int scan_end = depart + scan_initial - 1;
        bool crossed = false;
        while (!crossed) {
            gw.ensure(std::min(scan_end, max_time + 1));
            for (int t = scan_from; t <= scan_end && t <= max_time && !crossed; ++t) {
                const Tree& snap = gw.window().snapshot(t);
                for (const Edge& e : snap.edges) {
                    const int ca = plan.fast_component_of[static_cast<std::size_t>(e.first)];
                    const int cb = plan.fast_component_of[static_cast<std::size_t>(e.second)];
                    Vertex q = 0, qp = 0;
                    if (ca == qu && cb == qv) {
                        q = e.first;
                        qp = e.second;
                    } else if (cb == qu && ca == qv) {
                        q = e.second;
                        qp = e.first;
                    } else {
                        continue;
                    }
                    // feasibility: reach q from u by t-1 via wait-and-cross inside Q
                    const auto path = detail::fast_tree_path(fast_adj, u, q);
                    std::vector<Vertex> steps;
                    if (!wait_and_cross_path(gw.window(), path, depart, t - 1, &steps)) continue;
                    // execute: walk to q, wait, cross at t, then walk inside Q' to v
                    bool more = true;
                    for (Vertex s : steps)
                        if (!(more = wb.step(s))) break;
                    if (more) more = wb.wait_until(t - 1);
                    if (more) more = wb.step(qp);
                    if (more) {
                        const auto path2 = detail::fast_tree_path(fast_adj, qp, v);
                        for (std::size_t i = 0; i + 1 < path2.size() && more; ++i) {
                            const Vertex a = path2[i];
                            const Vertex b = path2[i + 1];
                            for (;;) {
                                const int tt = wb.now() + 1;
                                gw.ensure(tt);
                                if (gw.window().snapshot(tt).has_edge(a, b)) {
                                    more = wb.step(b);
                                    break;
                                }
                                if (!(more = wb.step(a))) break;
                            }
                        }
                    }
                    crossed = true;
                    legs.push_back({"meta-edge", u, v, depart, wb.now(), extensions});
                    break;
                }
            }
            if (!crossed) {
                if (scan_end > max_time)
                    fail(ErrorCode::HorizonExceeded, "no feasible meta-edge crossing before max_time");
                ++extensions;
                scan_from = scan_end + 1;
                scan_end += scan_block;
            }
        }
    }
    if (!wb.done()) fail(ErrorCode::HorizonExceeded, "linear schedule did not finish in max_time");
    return std::move(wb).finish(std::move(legs));
}

}  // namespace tempex
