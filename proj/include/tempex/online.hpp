#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tempex/backbone.hpp"
#include "tempex/schedule.hpp"

namespace tempex {

struct OnlineEvent {
    std::string name;
    int time = 0;
};

/// What a policy sees at step t: the current snapshot only, never the future.
struct OnlineContext {
    int time = 0;
    int snapshot_index = -1;
    const Tree* snapshot = nullptr;
    Vertex current = 0;
    const std::vector<char>* visited = nullptr;
    Rng* rng = nullptr;
    std::vector<OnlineEvent>* events = nullptr;
};

/// An online explorer: decide() returns the current vertex or a neighbor in
/// the current snapshot.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;
    virtual std::string name() const = 0;
    virtual void reset(const Model& model, Vertex start) = 0;
    virtual Vertex decide(const OnlineContext& ctx) = 0;
};

struct OnlineRun {
    std::string policy;
    Walk walk;
    std::optional<int> dexp;  // nullopt: horizon exceeded
    std::vector<OnlineEvent> events;
};

/// Replays a policy against a seeded realization. The policy's randomness is
/// an independent stream derived from (seed, policy name).
inline OnlineRun run_online(ModelPtr model, std::uint64_t seed, OnlinePolicy& policy, Vertex start,
                            int horizon) {
    const int n = model->n;
    if (horizon < 1) fail(ErrorCode::BadParams, "horizon must be at least 1");
    if (start < 1 || start > n) fail(ErrorCode::VertexOutOfRange, "start outside [1, n]");
    policy.reset(*model, start);

    std::uint64_t name_hash = 1469598103934665603ull;  // FNV-1a over the policy name
    for (char c : policy.name()) {
        name_hash ^= static_cast<unsigned char>(c);
        name_hash *= 1099511628211ull;
    }
    Rng policy_rng(derive_seed(seed, name_hash));

    OnlineRun run;
    run.policy = policy.name();
    run.walk.start_time = 1;
    run.walk.positions.push_back(start);
    std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
    visited[static_cast<std::size_t>(start)] = 1;
    int seen = 1;
    if (seen == n) {
        run.dexp = 0;
        return run;
    }
    for (int t = 1; t <= horizon; ++t) {
        const int snap_index = draw_snapshot(*model, seed, t);
        const Tree& snap = model->tree(snap_index);
        OnlineContext ctx;
        ctx.time = t;
        ctx.snapshot_index = snap_index;
        ctx.snapshot = &snap;
        ctx.current = run.walk.positions.back();
        ctx.visited = &visited;
        ctx.rng = &policy_rng;
        ctx.events = &run.events;
        const Vertex next = policy.decide(ctx);
        if (next != ctx.current && !snap.has_edge(ctx.current, next))
            fail(ErrorCode::PolicyIllegalMove, "policy " + policy.name() + " moved across a missing edge");
        run.walk.positions.push_back(next);
        if (!visited[static_cast<std::size_t>(next)]) {
            visited[static_cast<std::size_t>(next)] = 1;
            if (++seen == n) {
                run.dexp = t;
                break;
            }
        }
    }
    return run;
}

/// Baseline that never moves; explores nothing beyond its start.
class StandStillPolicy final : public OnlinePolicy {
public:
    std::string name() const override { return "stand-still"; }
    void reset(const Model&, Vertex) override {}
    Vertex decide(const OnlineContext& ctx) override { return ctx.current; }
};

/// Follows an Euler tour of the minimum-weight spanning tree (computed from
/// the distribution, not the realization), crossing each edge at the earliest
/// opportunity.
class MstEulerPolicy final : public OnlinePolicy {
public:
    std::string name() const override { return "mst-euler"; }

    void reset(const Model& model, Vertex start) override {
        std::vector<WeightedEdge> weighted;
        for (const Edge& e : union_edges(model)) {
            const auto mass = edge_weight_sum(model, e);
            weighted.push_back({e.first, e.second,
                                static_cast<double>(kWeightOne) / static_cast<double>(mass)});
        }
        const Tree t_min = min_weight_spanning_tree(model.n, weighted);
        tour_.clear();
        next_ = 0;
        auto walk = [&](auto&& self, Vertex u, Vertex from) -> void {
            for (Vertex c : t_min.adj[static_cast<std::size_t>(u)]) {
                if (c == from) continue;
                tour_.emplace_back(u, c);
                self(self, c, u);
                tour_.emplace_back(c, u);
            }
        };
        walk(walk, start, 0);
    }

    Vertex decide(const OnlineContext& ctx) override {
        if (next_ >= tour_.size()) return ctx.current;
        const auto [u, v] = tour_[next_];
        if (ctx.snapshot->has_edge(u, v)) {
            ++next_;
            ctx.events->push_back({"crossed", ctx.time});
            return v;
        }
        return ctx.current;  // wait at the near endpoint
    }

private:
    std::vector<std::pair<Vertex, Vertex>> tour_;
    std::size_t next_ = 0;
};

/// The unique high-degree vertex of a star snapshot; for n = 2 the smaller id
/// by convention.
inline Vertex star_centre(const Tree& tree) {
    if (tree.n == 2) return 1;
    Vertex centre = 0;
    for (Vertex v = 1; v <= tree.n; ++v) {
        if (tree.degree(v) > 1) {
            if (centre != 0) fail(ErrorCode::NotAStarSnapshot, "two vertices of degree > 1");
            centre = v;
        }
    }
    if (centre == 0) fail(ErrorCode::NotAStarSnapshot, "no vertex of degree > 1");
    return centre;
}

/// Coupon-collector style explorer for star models: chase the current centre;
/// when already at it (a "catch"), grab the smallest unvisited non-centre.
class CentreChasePolicy final : public OnlinePolicy {
public:
    std::string name() const override { return "centre-chase"; }

    void reset(const Model& model, Vertex) override {
        centres_.clear();
        centres_.reserve(model.catalog.size());
        is_centre_.assign(static_cast<std::size_t>(model.n) + 1, 0);
        for (const Tree& t : model.catalog) {
            const Vertex c = star_centre(t);
            centres_.push_back(c);
            is_centre_[static_cast<std::size_t>(c)] = 1;
        }
    }

    Vertex decide(const OnlineContext& ctx) override {
        const Vertex centre = centres_[static_cast<std::size_t>(ctx.snapshot_index)];
        if (ctx.current != centre) return centre;
        ctx.events->push_back({"centre-catch", ctx.time});
        for (Vertex v = 1; v < static_cast<Vertex>(is_centre_.size()); ++v)
            if (!is_centre_[static_cast<std::size_t>(v)] && !(*ctx.visited)[static_cast<std::size_t>(v)])
                return v;
        return ctx.current;
    }

private:
    std::vector<Vertex> centres_;  // per catalog index
    std::vector<char> is_centre_;
};

namespace detail {

/// Rung index of a ladder snapshot: trees must be exactly the two k-vertex
/// paths plus a single rung (i, k+i).
inline int ladder_rung(const Tree& tree, int k) {
    int rung = 0;
    for (const auto& [a, b] : tree.edges) {
        if (b == a + 1 && a != k) continue;  // path edge
        if (b == a + k && a >= 1 && a <= k && rung == 0) {
            rung = a;
            continue;
        }
        fail(ErrorCode::NotLadderModel, "snapshot is not two paths plus one rung");
    }
    if (rung == 0) fail(ErrorCode::NotLadderModel, "snapshot has no rung");
    return rung;
}

}  // namespace detail

/// Reference adversary harness for the ladder lower bound: the explorer
/// chases the uniformly-jumping rung ("rabbit") along the first path and
/// records the catch time. Any online movement rule has the same Geom(1/k)
/// catch law; this one walks toward the rabbit's last seen position.
class RabbitChasePolicy final : public OnlinePolicy {
public:
    explicit RabbitChasePolicy(int path_length) : k_(path_length) {}

    std::string name() const override { return "rabbit-chase"; }

    void reset(const Model& model, Vertex start) override {
        if (model.n != 2 * k_) fail(ErrorCode::NotLadderModel, "model is not a ladder on 2k vertices");
        if (static_cast<int>(model.catalog.size()) != k_)
            fail(ErrorCode::NotLadderModel, "ladder needs exactly k spanning trees");
        rungs_.clear();
        for (const Tree& t : model.catalog) rungs_.push_back(detail::ladder_rung(t, k_));
        caught_ = false;
        last_rabbit_ = start <= k_ ? start : start - k_;
    }

    Vertex decide(const OnlineContext& ctx) override {
        const int rung = rungs_[static_cast<std::size_t>(ctx.snapshot_index)];
        if (caught_) return ctx.current;
        const bool on_first = ctx.current <= k_;
        const Vertex rung_here = on_first ? rung : rung + k_;
        if (ctx.current == rung_here) {
            caught_ = true;
            ctx.events->push_back({"rabbit-catch", ctx.time});
            return on_first ? ctx.current + k_ : ctx.current - k_;  // cross the bridge
        }
        const Vertex target = on_first ? last_rabbit_ : last_rabbit_ + k_;
        Vertex next = ctx.current;
        if (target > ctx.current) next = ctx.current + 1;
        else if (target < ctx.current) next = ctx.current - 1;
        last_rabbit_ = rung;
        return next;
    }

private:
    int k_;
    std::vector<int> rungs_;
    bool caught_ = false;
    int last_rabbit_ = 1;
};

inline std::unique_ptr<OnlinePolicy> stand_still_online() {
    return std::make_unique<StandStillPolicy>();
}
inline std::unique_ptr<OnlinePolicy> mst_euler_online() {
    return std::make_unique<MstEulerPolicy>();
}
inline std::unique_ptr<OnlinePolicy> centre_chase_online() {
    return std::make_unique<CentreChasePolicy>();
}
inline std::unique_ptr<OnlinePolicy> rabbit_chase_online(int path_length) {
    return std::make_unique<RabbitChasePolicy>(path_length);
}

}  // namespace tempex
