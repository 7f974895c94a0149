#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tempex/errors.hpp"

namespace tempex {

/// Vertices are 1-based ids in [1, n].
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // canonical: first < second

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// A spanning tree on [n]: canonical sorted edge list plus sorted adjacency.
/// Immutable after construction.
struct Tree {
    int n = 0;
    std::vector<Edge> edges;                  // sorted, canonical
    std::vector<std::vector<Vertex>> adj;     // 1-based, neighbor lists ascending

    bool has_edge(Vertex a, Vertex b) const {
        if (a == b) return false;
        const auto& nb = adj[a];
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }

    bool operator==(const Tree& o) const { return n == o.n && edges == o.edges; }
};

namespace detail {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n + 1) {
        for (int i = 0; i <= n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace detail

/// Validates and canonicalizes a spanning tree on [n].
inline Tree validate_tree(int n, const std::vector<Edge>& raw_edges) {
    if (n < 1) fail(ErrorCode::BadN, "vertex count must be at least 1");
    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (const auto& [a, b] : raw_edges) {
        if (a < 1 || a > n || b < 1 || b > n)
            fail(ErrorCode::VertexOutOfRange, "edge endpoint outside [1, n]");
        if (a == b) fail(ErrorCode::SelfLoop, "self-loop");
        edges.push_back(make_edge(a, b));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        fail(ErrorCode::DuplicateEdge, "duplicate edge");
    if (static_cast<int>(edges.size()) != n - 1)
        fail(ErrorCode::NotSpanning, "a spanning tree on n vertices has exactly n-1 edges");

    detail::Dsu dsu(n);
    int merges = 0;
    for (const auto& [a, b] : edges)
        if (dsu.unite(a, b)) ++merges;
    if (merges != n - 1) fail(ErrorCode::NotSpanning, "edge set is not connected");

    Tree t;
    t.n = n;
    t.edges = std::move(edges);
    t.adj.assign(n + 1, {});
    for (const auto& [a, b] : t.edges) {
        t.adj[a].push_back(b);
        t.adj[b].push_back(a);
    }
    for (auto& nb : t.adj) std::sort(nb.begin(), nb.end());
    return t;
}

/// Star on [n] centred at c (helper used by the named model generators).
inline Tree star_tree(int n, Vertex c) {
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex v = 1; v <= n; ++v)
        if (v != c) edges.push_back(make_edge(c, v));
    return validate_tree(n, edges);
}

/// Path 1-2-...-n.
inline Tree path_tree(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) edges.push_back({v, v + 1});
    return validate_tree(n, edges);
}

}  // namespace tempex
