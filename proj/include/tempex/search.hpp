#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tempex/model.hpp"
#include "tempex/reach.hpp"
#include "tempex/window.hpp"

namespace tempex {

/// DFS order sigma_{v,F}: position of each vertex in the depth-first
/// traversal rooted at v, unvisited neighbors explored in ascending id.
struct DfsOrder {
    Vertex root = 1;
    std::vector<Vertex> order;     // order[i] = i-th visited vertex (0-based)
    std::vector<int> position;    // 1-based vertex -> position (1-based), position[root] == 1

    int pos(Vertex v) const { return position[static_cast<std::size_t>(v)]; }
};

inline DfsOrder dfs_order(const Tree& tree, Vertex v) {
    if (v < 1 || v > tree.n) fail(ErrorCode::VertexOutOfRange, "root outside [1, n]");
    DfsOrder out;
    out.root = v;
    out.order.reserve(static_cast<std::size_t>(tree.n));
    out.position.assign(static_cast<std::size_t>(tree.n) + 1, 0);
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
        const Vertex cur = stack.back();
        stack.pop_back();
        if (out.position[static_cast<std::size_t>(cur)]) continue;
        out.order.push_back(cur);
        out.position[static_cast<std::size_t>(cur)] = static_cast<int>(out.order.size());
        const auto& nb = tree.adj[static_cast<std::size_t>(cur)];
        for (auto it = nb.rbegin(); it != nb.rend(); ++it)
            if (!out.position[static_cast<std::size_t>(*it)]) stack.push_back(*it);
    }
    return out;
}

namespace detail {

/// rho(v, D, F): first vertex of sigma_{v,F} outside D, computed with early
/// exit (the DFS stops at the first absentee). in_context is a 1-based
/// membership test for D. Returns 0 when D covers all of [n].
template <typename Pred>
Vertex rho_first_absent(const Tree& tree, Vertex v, Pred in_context,
                        std::vector<Vertex>& stack, std::vector<char>& seen) {
    stack.clear();
    seen.assign(static_cast<std::size_t>(tree.n) + 1, 0);
    stack.push_back(v);
    while (!stack.empty()) {
        const Vertex cur = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(cur)]) continue;
        seen[static_cast<std::size_t>(cur)] = 1;
        if (!in_context(cur)) return cur;
        const auto& nb = tree.adj[static_cast<std::size_t>(cur)];
        for (auto it = nb.rbegin(); it != nb.rend(); ++it)
            if (!seen[static_cast<std::size_t>(*it)]) stack.push_back(*it);
    }
    return 0;
}

}  // namespace detail

/// rho(v, D, F): the minimum-position vertex under dfs_order(tree, v) not in
/// D; nullopt iff D = [n].
inline std::optional<Vertex> next_vertex(Vertex v, const std::vector<char>& in_d, const Tree& tree) {
    if (v < 1 || v > tree.n || !in_d[static_cast<std::size_t>(v)])
        fail(ErrorCode::SourceNotInContext, "rho requires v in D");
    std::vector<Vertex> stack;
    std::vector<char> seen;
    const Vertex u = detail::rho_first_absent(
        tree, v, [&](Vertex x) { return in_d[static_cast<std::size_t>(x)] != 0; }, stack, seen);
    if (u == 0) return std::nullopt;
    return u;
}

inline std::optional<Vertex> next_vertex(Vertex v, const std::vector<Vertex>& context, const Tree& tree) {
    std::vector<char> in_d(static_cast<std::size_t>(tree.n) + 1, 0);
    for (Vertex x : context) in_d[static_cast<std::size_t>(x)] = 1;
    return next_vertex(v, in_d, tree);
}

/// Vertices visited by the temporal DFS from v, with the per-step discovery log.
struct DiscoverySet {
    Vertex source = 1;
    std::vector<char> member;                       // 1-based membership in D
    std::vector<std::pair<int, Vertex>> discoveries;  // (time step, vertex)

    int size() const {
        int c = 0;
        for (char m : member) c += m;
        return c;
    }
    bool contains(Vertex v) const { return member[static_cast<std::size_t>(v)] != 0; }
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (Vertex v = 1; v < static_cast<Vertex>(member.size()); ++v)
            if (member[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }
};

/// Temporal DFS: one new vertex per snapshot, the first unvisited vertex of
/// the snapshot's DFS order from v. |D_t| = min(1 + t, n).
inline DiscoverySet temporal_dfs(const TemporalWindow& window, Vertex v, int t) {
    if (t > window.length()) fail(ErrorCode::InvalidRange, "t exceeds window length");
    const int n = window.model->n;
    DiscoverySet d;
    d.source = v;
    d.member.assign(static_cast<std::size_t>(n) + 1, 0);
    d.member[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> stack;
    std::vector<char> seen;
    int covered = 1;
    for (int i = 0; i < t && covered < n; ++i) {
        const int time = window.t0 + i;
        const Tree& snap = window.snapshot(time);
        const Vertex u = detail::rho_first_absent(
            snap, v, [&](Vertex x) { return d.member[static_cast<std::size_t>(x)] != 0; }, stack, seen);
        d.member[static_cast<std::size_t>(u)] = 1;
        d.discoveries.emplace_back(time, u);
        ++covered;
    }
    return d;
}

/// nu_{v,D,mu}: the one-step next-vertex distribution, exact in fixed point.
struct NextVertexDistribution {
    Vertex source = 1;
    std::vector<std::uint64_t> weight;  // 1-based, fractions of 2^32, sums to 2^32

    double probability(Vertex u) const {
        return static_cast<double>(weight[static_cast<std::size_t>(u)]) /
               static_cast<double>(kWeightOne);
    }
};

inline NextVertexDistribution nu_exact(const Model& model, Vertex v, const std::vector<char>& in_d) {
    if (v < 1 || v > model.n || !in_d[static_cast<std::size_t>(v)])
        fail(ErrorCode::SourceNotInContext, "nu requires v in D");
    bool full = true;
    for (Vertex x = 1; x <= model.n; ++x)
        if (!in_d[static_cast<std::size_t>(x)]) {
            full = false;
            break;
        }
    if (full) fail(ErrorCode::ContextFull, "nu undefined for D = [n]");

    NextVertexDistribution nu;
    nu.source = v;
    nu.weight.assign(static_cast<std::size_t>(model.n) + 1, 0);
    std::vector<Vertex> stack;
    std::vector<char> seen;
    for (std::size_t i = 0; i < model.catalog.size(); ++i) {
        const Vertex u = detail::rho_first_absent(
            model.catalog[i], v, [&](Vertex x) { return in_d[static_cast<std::size_t>(x)] != 0; },
            stack, seen);
        nu.weight[static_cast<std::size_t>(u)] += model.weights[i];
    }
    return nu;
}

inline NextVertexDistribution nu_exact(const Model& model, Vertex v, const std::vector<Vertex>& context) {
    std::vector<char> in_d(static_cast<std::size_t>(model.n) + 1, 0);
    for (Vertex x : context) in_d[static_cast<std::size_t>(x)] = 1;
    return nu_exact(model, v, in_d);
}

/// Whether nu(u) >= 1/(2n), compared exactly in integers.
inline bool is_good_weight(std::uint64_t weight, int n) {
    return 2ull * static_cast<std::uint64_t>(n) * weight >= kWeightOne;
}

/// {u : nu_{v,D,mu}(u) >= 1/(2n)}.
inline std::vector<Vertex> good_vertices(const Model& model, Vertex v, const std::vector<char>& in_d) {
    const NextVertexDistribution nu = nu_exact(model, v, in_d);
    std::vector<Vertex> out;
    for (Vertex u = 1; u <= model.n; ++u)
        if (is_good_weight(nu.weight[static_cast<std::size_t>(u)], model.n)) out.push_back(u);
    return out;
}

inline std::vector<Vertex> good_vertices(const Model& model, Vertex v, const std::vector<Vertex>& context) {
    std::vector<char> in_d(static_cast<std::size_t>(model.n) + 1, 0);
    for (Vertex x : context) in_d[static_cast<std::size_t>(x)] = 1;
    return good_vertices(model, v, in_d);
}

/// Monte Carlo estimate of the temporal DFS (t,p)-ball of v.
struct Ball {
    Vertex centre = 1;
    int t = 0;
    double p = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> frequency;  // 1-based discovery frequency
    std::vector<Vertex> members;    // frequency >= p, ascending
};

inline Ball estimate_ball(ModelPtr model, Vertex v, int t, double p, int trials,
                          std::uint64_t seed) {
    if (trials < 1) fail(ErrorCode::BadParams, "need at least one trial");
    const int n = model->n;
    Ball ball;
    ball.centre = v;
    ball.t = t;
    ball.p = p;
    ball.trials = trials;
    ball.seed = seed;
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (int trial = 0; trial < trials; ++trial) {
        const auto w = materialize(model, derive_seed(seed, static_cast<std::uint64_t>(trial)), 1,
                                   std::min(t, n - 1));
        const DiscoverySet d = temporal_dfs(w, v, t > w.length() ? w.length() : t);
        // |D| stops growing at n, so a window of min(t, n-1) snapshots is enough.
        for (Vertex u = 1; u <= n; ++u)
            if (d.contains(u)) ++count[static_cast<std::size_t>(u)];
    }
    ball.frequency.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (Vertex u = 1; u <= n; ++u) {
        ball.frequency[static_cast<std::size_t>(u)] =
            static_cast<double>(count[static_cast<std::size_t>(u)]) / trials;
        if (ball.frequency[static_cast<std::size_t>(u)] >= p) ball.members.push_back(u);
    }
    return ball;
}

/// Declared (t,p)-closeness over a sampled source subset. Adjacency is
/// symmetrized by taking the maximum of the two directional estimates when
/// both are measured (closeness is symmetric in the model).
struct ClosenessGraph {
    int n = 0;
    int t = 0;
    double p = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<Vertex> sources;          // measured sources, ascending
    std::vector<char> measured;           // 1-based
    std::vector<std::vector<double>> freq;  // freq[u][w] for measured u, 1-based

    double pair_frequency(Vertex u, Vertex w) const {
        const bool mu = measured[static_cast<std::size_t>(u)];
        const bool mw = measured[static_cast<std::size_t>(w)];
        double f = -1.0;
        if (mu) f = std::max(f, freq[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)]);
        if (mw) f = std::max(f, freq[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)]);
        return f < 0.0 ? 0.0 : f;
    }

    bool close(Vertex u, Vertex w) const {
        if (u == w) return true;
        if (!measured[static_cast<std::size_t>(u)] && !measured[static_cast<std::size_t>(w)])
            return false;
        return pair_frequency(u, w) >= p;
    }

    std::vector<Vertex> close_vertices(Vertex u) const {
        std::vector<Vertex> out;
        for (Vertex w = 1; w <= n; ++w)
            if (w != u && close(u, w)) out.push_back(w);
        return out;
    }
};

inline ClosenessGraph estimate_closeness(ModelPtr model, int t, double p, int trials,
                                         std::uint64_t seed, std::vector<Vertex> sources) {
    if (trials < 1) fail(ErrorCode::BadParams, "need at least one trial");
    const int n = model->n;
    if (sources.empty()) {
        sources.resize(static_cast<std::size_t>(n));
        for (Vertex v = 1; v <= n; ++v) sources[static_cast<std::size_t>(v - 1)] = v;
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    ClosenessGraph g;
    g.n = n;
    g.t = t;
    g.p = p;
    g.trials = trials;
    g.seed = seed;
    g.sources = sources;
    g.measured.assign(static_cast<std::size_t>(n) + 1, 0);
    g.freq.assign(static_cast<std::size_t>(n) + 1, {});
    // An always-connected window reaches everything within n-1 steps, so the
    // materialized horizon never needs to exceed min(t, n-1).
    const int horizon = std::min(t, n - 1);
    for (Vertex u : sources) {
        g.measured[static_cast<std::size_t>(u)] = 1;
        auto& row = g.freq[static_cast<std::size_t>(u)];
        row.assign(static_cast<std::size_t>(n) + 1, 0.0);
        const std::uint64_t source_seed = derive_seed(seed, 0x5157ull + static_cast<std::uint64_t>(u));
        std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
        for (int trial = 0; trial < trials; ++trial) {
            const auto w =
                materialize(model, derive_seed(source_seed, static_cast<std::uint64_t>(trial)), 1, horizon);
            const ArrivalMap reach = earliest_arrival(w, {u}, 1);
            for (Vertex x = 1; x <= n; ++x)
                if (reach.at(x) <= t) ++count[static_cast<std::size_t>(x)];
        }
        for (Vertex x = 1; x <= n; ++x)
            row[static_cast<std::size_t>(x)] = static_cast<double>(count[static_cast<std::size_t>(x)]) / trials;
    }
    return g;
}

/// One trial of the two-window coupling: T coupled rounds (a fair coin routes
/// each sampled snapshot to G or H), then both windows are filled to T
/// snapshots independently.
struct CouplingTrial {
    int overlap = 0;      // |D_T^G(v) cap D_T^H(v)|
    int good_in_g = 0;    // vertices of D_T^G(v) good w.r.t. D_T^H(v)
    int good_in_h = 0;
    bool stable = false;   // overlap >= ceil(T/50)
    bool diffuse = false;  // both good counts >= ceil(T/50)
};

struct CouplingReport {
    Vertex source = 1;
    int rounds = 0;
    int threshold = 0;
    std::vector<CouplingTrial> trials;
    double dichotomy_fraction = 0.0;
};

inline CouplingReport coupled_dfs_experiment(ModelPtr model, Vertex v, int rounds, int trials,
                                             std::uint64_t seed) {
    if (rounds > model->n) fail(ErrorCode::BadParams, "coupling requires T <= n");
    if (trials < 1) fail(ErrorCode::BadParams, "need at least one trial");
    const int n = model->n;
    CouplingReport report;
    report.source = v;
    report.rounds = rounds;
    report.threshold = (rounds + 49) / 50;
    report.trials.reserve(static_cast<std::size_t>(trials));

    int satisfied = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
        std::vector<int> snaps_g, snaps_h;
        for (int r = 1; r <= rounds; ++r) {
            const int f = draw_snapshot(*model, trial_seed, r);
            const bool to_g = (prf(trial_seed ^ 0xC01Full, static_cast<std::uint64_t>(r)) & 1) != 0;
            (to_g ? snaps_g : snaps_h).push_back(f);
        }
        const std::uint64_t fill_g = derive_seed(trial_seed, 1);
        const std::uint64_t fill_h = derive_seed(trial_seed, 2);
        for (int i = static_cast<int>(snaps_g.size()); i < rounds; ++i)
            snaps_g.push_back(draw_snapshot(*model, fill_g, i + 1));
        for (int i = static_cast<int>(snaps_h.size()); i < rounds; ++i)
            snaps_h.push_back(draw_snapshot(*model, fill_h, i + 1));

        TemporalWindow wg, wh;
        wg.model = model;
        wg.t0 = 1;
        wg.t1 = rounds;
        wg.snapshots = std::move(snaps_g);
        wh.model = model;
        wh.t0 = 1;
        wh.t1 = rounds;
        wh.snapshots = std::move(snaps_h);

        const DiscoverySet dg = temporal_dfs(wg, v, rounds);
        const DiscoverySet dh = temporal_dfs(wh, v, rounds);

        CouplingTrial result;
        for (Vertex u = 1; u <= n; ++u)
            if (dg.contains(u) && dh.contains(u)) ++result.overlap;
        result.stable = result.overlap >= report.threshold;
        if (!result.stable) {
            const NextVertexDistribution nu_h = nu_exact(*model, v, dh.member);
            const NextVertexDistribution nu_g = nu_exact(*model, v, dg.member);
            for (Vertex u = 1; u <= n; ++u) {
                if (dg.contains(u) && is_good_weight(nu_h.weight[static_cast<std::size_t>(u)], n))
                    ++result.good_in_g;
                if (dh.contains(u) && is_good_weight(nu_g.weight[static_cast<std::size_t>(u)], n))
                    ++result.good_in_h;
            }
            result.diffuse =
                result.good_in_g >= report.threshold && result.good_in_h >= report.threshold;
        }
        if (result.stable || result.diffuse) ++satisfied;
        report.trials.push_back(result);
    }
    report.dichotomy_fraction = static_cast<double>(satisfied) / trials;
    return report;
}

}  // namespace tempex
