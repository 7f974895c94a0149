#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "tempex/errors.hpp"
#include "tempex/rng.hpp"
#include "tempex/tree.hpp"

namespace tempex {

inline constexpr std::uint64_t kWeightOne = 1ull << 32;  // fixed-point scale: fractions of 2^32

/// A tree catalog with a probability distribution, quantized to 32-bit
/// fixed-point masses that sum to exactly 2^32. Snapshots of a random
/// temporal graph are i.i.d. draws from this distribution.
/// Immutable after construction; safe to share across threads.
struct Model {
    int n = 0;
    std::vector<Tree> catalog;
    std::vector<std::uint64_t> weights;      // each > 0, sum == 2^32
    std::vector<std::uint64_t> cum_weights;  // inclusive prefix sums

    const Tree& tree(int index) const { return catalog[static_cast<std::size_t>(index)]; }
    int catalog_size() const { return static_cast<int>(catalog.size()); }
};

using ModelPtr = std::shared_ptr<const Model>;

/// Normalizes and quantizes masses to fixed-point fractions of 2^32; the
/// rounding residue goes to the last tree.
inline ModelPtr build_model(int n, std::vector<Tree> trees, const std::vector<double>& masses) {
    if (trees.empty()) fail(ErrorCode::EmptyCatalog, "model needs at least one tree");
    if (masses.size() != trees.size())
        fail(ErrorCode::BadParams, "need exactly one mass per tree");
    double total = 0.0;
    for (double m : masses) {
        if (!(m > 0.0)) fail(ErrorCode::ZeroMass, "all masses must be positive");
        total += m;
    }
    if (!(total > 0.0)) fail(ErrorCode::ZeroMass, "masses must sum to a positive value");

    std::set<std::vector<Edge>> seen;
    for (const auto& t : trees) {
        if (t.n != n) fail(ErrorCode::MixedVertexCounts, "all trees must share the model's n");
        if (!seen.insert(t.edges).second) fail(ErrorCode::DuplicateTree, "catalog trees must be distinct");
    }

    auto model = std::make_shared<Model>();
    model->n = n;
    model->catalog = std::move(trees);
    const std::size_t k = model->catalog.size();
    model->weights.resize(k);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        double frac = masses[i] / total;
        auto w = static_cast<std::uint64_t>(std::floor(frac * static_cast<double>(kWeightOne)));
        if (w == 0) fail(ErrorCode::ZeroMass, "mass too small to quantize at 2^32 resolution");
        model->weights[i] = w;
        assigned += w;
    }
    if (assigned >= kWeightOne)
        fail(ErrorCode::ZeroMass, "no residue left for the last tree");
    model->weights[k - 1] = kWeightOne - assigned;

    model->cum_weights.resize(k);
    std::uint64_t cum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        cum += model->weights[i];
        model->cum_weights[i] = cum;
    }
    return model;
}

inline ModelPtr uniform_model(int n, std::vector<Tree> trees) {
    std::vector<double> masses(trees.size(), 1.0);
    return build_model(n, std::move(trees), masses);
}

/// Tree index of snapshot `index` (a time step, >= 1). A pure function of
/// (seed, index): the keyed counter-based draw is reduced mod 2^32 and located
/// in the cumulative weight table (first cumulative value strictly greater).
inline int draw_snapshot(const Model& model, std::uint64_t seed, int index) {
    const auto draw = static_cast<std::uint64_t>(static_cast<std::uint32_t>(prf(seed, static_cast<std::uint64_t>(index))));
    auto it = std::upper_bound(model.cum_weights.begin(), model.cum_weights.end(), draw);
    return static_cast<int>(it - model.cum_weights.begin());
}

/// Exact fixed-point mass of the catalog trees containing `e`, as a fraction of 2^32.
inline std::uint64_t edge_weight_sum(const Model& model, Edge e) {
    e = make_edge(e.first, e.second);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < model.catalog.size(); ++i)
        if (model.catalog[i].has_edge(e.first, e.second)) sum += model.weights[i];
    return sum;
}

/// p_e: probability that edge e appears in a snapshot.
inline double edge_probability(const Model& model, Edge e) {
    return static_cast<double>(edge_weight_sum(model, e)) / static_cast<double>(kWeightOne);
}

/// Union graph of the catalog: all edges appearing in at least one tree, sorted.
inline std::vector<Edge> union_edges(const Model& model) {
    std::set<Edge> edges;
    for (const auto& t : model.catalog) edges.insert(t.edges.begin(), t.edges.end());
    return {edges.begin(), edges.end()};
}

}  // namespace tempex
