#pragma once

#include <numeric>

#include "tempex/model.hpp"
#include "tempex/rng.hpp"
#include "tempex/tree.hpp"

namespace tempex::testing {

/// Random labelled tree: random attachment followed by a random relabelling.
inline Tree random_tree(Rng& rng, int n) {
    std::vector<Vertex> label(static_cast<std::size_t>(n) + 1);
    std::iota(label.begin(), label.end(), 0);
    for (int v = n; v >= 2; --v) std::swap(label[v], label[rng.next_int(1, v)]);
    std::vector<Edge> edges;
    for (int v = 2; v <= n; ++v) {
        const int parent = rng.next_int(1, v - 1);
        edges.push_back(make_edge(label[static_cast<std::size_t>(v)],
                                  label[static_cast<std::size_t>(parent)]));
    }
    return validate_tree(n, edges);
}

/// Random catalog of 1..max_trees distinct trees with random masses.
inline ModelPtr random_model(Rng& rng, int n, int max_trees = 5) {
    const int want = rng.next_int(1, max_trees);
    std::vector<Tree> trees;
    std::vector<double> masses;
    for (int attempts = 0; static_cast<int>(trees.size()) < want && attempts < 8 * want; ++attempts) {
        Tree t = random_tree(rng, n);
        bool dup = false;
        for (const Tree& have : trees) dup = dup || have == t;
        if (dup) continue;
        trees.push_back(std::move(t));
        masses.push_back(0.1 + 0.9 * rng.next_double());
    }
    return build_model(n, std::move(trees), masses);
}

}  // namespace tempex::testing
