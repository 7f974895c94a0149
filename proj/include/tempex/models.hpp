#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tempex/online.hpp"  // star_centre
#include "tempex/window.hpp"

namespace tempex {

/// k distinct stars on [n] with centres 1..k, uniform masses.
inline ModelPtr star_catalog(int n, int k) {
    if (k < 2 || k > n) fail(ErrorCode::BadK, "star catalog needs 2 <= k <= n");
    std::vector<Tree> trees;
    trees.reserve(static_cast<std::size_t>(k));
    for (Vertex c = 1; c <= k; ++c) trees.push_back(star_tree(n, c));
    return uniform_model(n, std::move(trees));
}

/// k = n/2 regime (the hard online instance).
inline ModelPtr half_stars(int n) {
    if (n % 2 != 0) fail(ErrorCode::BadN, "half-stars needs even n");
    return star_catalog(n, n / 2);
}

/// k = ceil(n/3) regime (maximal exploration time up to constants).
inline ModelPtr third_stars(int n) { return star_catalog(n, (n + 2) / 3); }

/// Ladder on n = 2k vertices: tree i is both k-vertex paths plus the single
/// rung (i, k+i), uniform masses.
inline ModelPtr ladder_model(int n) {
    if (n % 2 != 0 || n < 4) fail(ErrorCode::BadN, "ladder needs even n >= 4");
    const int k = n / 2;
    std::vector<Tree> trees;
    trees.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        std::vector<Edge> edges;
        for (Vertex v = 1; v < k; ++v) edges.push_back({v, v + 1});
        for (Vertex v = k + 1; v < 2 * k; ++v) edges.push_back({v, v + 1});
        edges.push_back({i, k + i});
        trees.push_back(validate_tree(n, edges));
    }
    return uniform_model(n, std::move(trees));
}

/// Bounded-degree hard instance: tree T_i is n/(d-1) vertex-disjoint copies
/// of the star R_i on [d-1] (centres in [(d-1)/2]), with the copies' centres
/// joined in a path. Every tree has maximum degree at most d.
inline ModelPtr bounded_degree_model(int d, int n) {
    if (d < 5 || d % 2 == 0) fail(ErrorCode::BadParams, "need odd d >= 5");
    if (n % (d - 1) != 0 || n < d - 1) fail(ErrorCode::BadParams, "need n divisible by d-1");
    const int copies = n / (d - 1);
    const int k = (d - 1) / 2;
    std::vector<Tree> trees;
    trees.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        std::vector<Edge> edges;
        for (int j = 0; j < copies; ++j) {
            const Vertex base = j * (d - 1);  // block [base+1, base+d-1]
            const Vertex centre = base + i;
            for (Vertex v = base + 1; v <= base + d - 1; ++v)
                if (v != centre) edges.push_back(make_edge(centre, v));
            if (j + 1 < copies) edges.push_back(make_edge(centre, centre + (d - 1)));
        }
        trees.push_back(validate_tree(n, edges));
    }
    return uniform_model(n, std::move(trees));
}

/// Apex over a fixed path: tree j is the path on 1..n-1 plus the single apex
/// edge (n, j), uniform masses. The apex needs many steps to reach any fixed
/// vertex with constant probability.
inline ModelPtr apex_path_model(int n) {
    if (n < 3) fail(ErrorCode::BadN, "apex model needs n >= 3");
    std::vector<Tree> trees;
    trees.reserve(static_cast<std::size_t>(n - 1));
    for (Vertex j = 1; j <= n - 1; ++j) {
        std::vector<Edge> edges;
        for (Vertex v = 1; v < n - 1; ++v) edges.push_back({v, v + 1});
        edges.push_back(make_edge(n, j));
        trees.push_back(validate_tree(n, edges));
    }
    return uniform_model(n, std::move(trees));
}

/// Uniform distribution over all spanning trees of a small connected graph,
/// enumerated by backtracking contraction/deletion. Capped at 10^5 trees.
inline ModelPtr spanning_trees_uniform(int n, const std::vector<Edge>& graph_edges) {
    constexpr int kMaxTrees = 100000;
    std::vector<Edge> edges;
    for (const auto& [a, b] : graph_edges) {
        if (a < 1 || a > n || b < 1 || b > n) fail(ErrorCode::VertexOutOfRange, "edge endpoint outside [1, n]");
        if (a == b) fail(ErrorCode::SelfLoop, "self-loop");
        edges.push_back(make_edge(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    {
        detail::Dsu dsu(n);
        int merges = 0;
        for (const auto& [a, b] : edges)
            if (dsu.unite(a, b)) ++merges;
        if (merges != n - 1) fail(ErrorCode::Disconnected, "graph is not connected");
    }

    std::vector<Tree> trees;
    std::vector<Edge> chosen;
    const int m = static_cast<int>(edges.size());
    // include/exclude each edge; prune when the suffix cannot complete a tree
    auto rec = [&](auto&& self, int index, int picked) -> void {
        if (picked == n - 1) {
            if (static_cast<int>(trees.size()) >= kMaxTrees)
                fail(ErrorCode::TooManyTrees, "spanning tree enumeration capped at 10^5");
            trees.push_back(validate_tree(n, chosen));
            return;
        }
        if (index == m || picked + (m - index) < n - 1) return;
        // feasibility: chosen + remaining edges must still connect [n]
        {
            detail::Dsu dsu(n);
            int merges = 0;
            for (const Edge& e : chosen) if (dsu.unite(e.first, e.second)) ++merges;
            for (int i = index; i < m; ++i)
                if (dsu.unite(edges[static_cast<std::size_t>(i)].first,
                              edges[static_cast<std::size_t>(i)].second))
                    ++merges;
            if (merges != n - 1) return;
        }
        // include edges[index] unless it closes a cycle
        {
            detail::Dsu dsu(n);
            bool cycle = false;
            for (const Edge& e : chosen) dsu.unite(e.first, e.second);
            if (!dsu.unite(edges[static_cast<std::size_t>(index)].first,
                           edges[static_cast<std::size_t>(index)].second))
                cycle = true;
            if (!cycle) {
                chosen.push_back(edges[static_cast<std::size_t>(index)]);
                self(self, index + 1, picked + 1);
                chosen.pop_back();
            }
        }
        self(self, index + 1, picked);  // exclude
    };
    rec(rec, 0, 0);
    return uniform_model(n, std::move(trees));
}

/// Centre ids extracted per snapshot (the unique degree > 1 vertex; smaller
/// id for two-vertex stars).
using CentreSequence = std::vector<Vertex>;

inline CentreSequence centre_sequence(const TemporalWindow& window) {
    std::vector<Vertex> catalog_centre(window.model->catalog.size());
    for (std::size_t i = 0; i < window.model->catalog.size(); ++i)
        catalog_centre[i] = star_centre(window.model->catalog[i]);
    CentreSequence seq;
    seq.reserve(window.snapshots.size());
    for (int idx : window.snapshots) seq.push_back(catalog_centre[static_cast<std::size_t>(idx)]);
    return seq;
}

/// Birthday decomposition of a centre sequence: t_i closes the i-th minimal
/// interval containing a repeated centre; the coupon time is the first step
/// by which all k centres have occurred.
struct StarDecomposition {
    int k = 0;
    int ell = 0;  // requested interval count
    std::vector<int> t;    // completed t_1..t_j (absolute positions, 1-based)
    std::vector<int> tau;  // increments tau_i = t_i - t_{i-1}
    std::optional<int> coupon_time;
    bool complete = false;  // all ell intervals closed

    int t_at(int i) const { return i == 0 ? 0 : t[static_cast<std::size_t>(i - 1)]; }
};

inline StarDecomposition star_decomposition(const CentreSequence& seq, int k, int ell) {
    if (k < 1) fail(ErrorCode::BadK, "need k >= 1");
    if (ell < 0) fail(ErrorCode::BadParams, "need ell >= 0");
    StarDecomposition d;
    d.k = k;
    d.ell = ell;
    std::vector<int> seen_at(static_cast<std::size_t>(k) + 1, 0);  // interval stamp
    std::vector<char> collected(static_cast<std::size_t>(k) + 1, 0);
    int collected_count = 0;
    int interval = 1;
    int last_t = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Vertex x = seq[i];
        if (x < 1 || x > k) fail(ErrorCode::BadParams, "centre id outside [1, k]");
        const int pos = static_cast<int>(i) + 1;
        if (!collected[static_cast<std::size_t>(x)]) {
            collected[static_cast<std::size_t>(x)] = 1;
            if (++collected_count == k) d.coupon_time = pos;
        }
        if (static_cast<int>(d.t.size()) < ell) {
            if (seen_at[static_cast<std::size_t>(x)] == interval) {
                d.t.push_back(pos);
                d.tau.push_back(pos - last_t);
                last_t = pos;
                ++interval;
            } else {
                seen_at[static_cast<std::size_t>(x)] = interval;
            }
        }
        if (static_cast<int>(d.t.size()) == ell && d.coupon_time) break;
    }
    d.complete = static_cast<int>(d.t.size()) == ell;
    return d;
}

}  // namespace tempex
