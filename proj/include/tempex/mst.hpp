#pragma once

#include <algorithm>
#include <vector>

#include "tempex/tree.hpp"

namespace tempex {

struct WeightedEdge {
    Vertex u = 0;
    Vertex v = 0;
    double weight = 0.0;
};

/// Kruskal with deterministic tie-breaking by (weight, smaller endpoint,
/// larger endpoint).
inline Tree min_weight_spanning_tree(int n, std::vector<WeightedEdge> edges) {
    for (auto& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    detail::Dsu dsu(n);
    std::vector<Edge> chosen;
    chosen.reserve(static_cast<std::size_t>(n) - 1);
    for (const auto& e : edges) {
        if (e.u < 1 || e.v > n) fail(ErrorCode::VertexOutOfRange, "edge endpoint outside [1, n]");
        if (dsu.unite(e.u, e.v)) {
            chosen.push_back({e.u, e.v});
            if (static_cast<int>(chosen.size()) == n - 1) break;
        }
    }
    if (static_cast<int>(chosen.size()) != n - 1)
        fail(ErrorCode::Disconnected, "input graph is not connected");
    return validate_tree(n, chosen);
}

}  // namespace tempex
