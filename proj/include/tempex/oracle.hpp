#pragma once

#include <optional>
#include <vector>

#include "tempex/reach.hpp"
#include "tempex/window.hpp"

namespace tempex {

enum class OracleMode { BestStart, WorstStart };

/// Exact visit time for a target set. "Infeasible within the window" is a
/// value, not an error: finite windows may not admit exploration.
struct OracleResult {
    OracleMode mode = OracleMode::BestStart;
    std::vector<Vertex> targets;
    std::optional<int> value;         // nullopt: infeasible within the window
    std::optional<Vertex> arg_start;  // argmin (best) / argmax or failing start (worst)
};

namespace detail {

inline std::uint32_t target_mask(const std::vector<Vertex>& targets) {
    std::uint32_t m = 0;
    for (Vertex v : targets) m |= 1u << (v - 1);
    return m;
}

}  // namespace detail

/// Earliest step at which a walk from `start` covers all targets, by a layered
/// dynamic program over (visited mask, current vertex) states. nullopt if no
/// covering walk exists within the window.
inline std::optional<int> exact_visit_time_from(const TemporalWindow& window,
                                                const std::vector<Vertex>& targets, Vertex start) {
    const int n = window.model->n;
    if (n > 20) fail(ErrorCode::TooLarge, "exact oracle capped at n <= 20");
    if (window.length() > 10000) fail(ErrorCode::TooLarge, "exact oracle capped at 10^4 steps");
    const std::uint32_t want = detail::target_mask(targets);
    const std::uint32_t mask0 = 1u << (start - 1);
    if ((mask0 & want) == want) return window.t0 - 1;

    std::vector<char> live(static_cast<std::size_t>(1u << n) * static_cast<std::size_t>(n), 0);
    auto idx = [n](std::uint32_t mask, Vertex v) {
        return static_cast<std::size_t>(mask) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(v - 1);
    };
    live[idx(mask0, start)] = 1;
    std::vector<std::pair<std::uint32_t, Vertex>> frontier{{mask0, start}};

    for (int t = window.t0; t <= window.t1; ++t) {
        const Tree& snap = window.snapshot(t);
        // Waiting keeps every state alive, so the live set only grows; new
        // states found at step t join the frontier for step t+1.
        std::vector<std::pair<std::uint32_t, Vertex>> found;
        for (const auto& [mask, v] : frontier) {
            for (Vertex u : snap.adj[static_cast<std::size_t>(v)]) {
                const std::uint32_t m2 = mask | (1u << (u - 1));
                if ((m2 & want) == want) return t;
                auto& cell = live[idx(m2, u)];
                if (!cell) {
                    cell = 1;
                    found.emplace_back(m2, u);
                }
            }
        }
        frontier.insert(frontier.end(), found.begin(), found.end());
    }
    return std::nullopt;
}

/// Best-start minimizes over starts, worst-start maximizes; a start that
/// cannot cover the targets within the window makes worst-start infeasible.
inline OracleResult exact_visit_time(const TemporalWindow& window,
                                     const std::vector<Vertex>& targets, OracleMode mode) {
    const int n = window.model->n;
    OracleResult result;
    result.mode = mode;
    result.targets = targets;
    for (Vertex s = 1; s <= n; ++s) {
        auto v = exact_visit_time_from(window, targets, s);
        if (mode == OracleMode::BestStart) {
            if (v && (!result.value || *v < *result.value)) {
                result.value = v;
                result.arg_start = s;
            }
        } else {
            if (!v) {
                result.value.reset();
                result.arg_start = s;
                return result;
            }
            if (!result.value || *v > *result.value) {
                result.value = v;
                result.arg_start = s;
            }
        }
    }
    return result;
}

/// Independent oracle for the oracle: plain enumeration of all walks
/// (branching over waiting and every incident edge per step).
inline std::optional<int> exhaustive_walk_search(const TemporalWindow& window,
                                                 const std::vector<Vertex>& targets, Vertex start) {
    const int n = window.model->n;
    if (n > 4 || window.length() > 6) fail(ErrorCode::TooLarge, "enumeration capped at n <= 4, T <= 6");
    const std::uint32_t want = detail::target_mask(targets);
    const std::uint32_t mask0 = 1u << (start - 1);
    if ((mask0 & want) == want) return window.t0 - 1;

    std::optional<int> best;
    auto rec = [&](auto&& self, Vertex v, std::uint32_t mask, int t) -> void {
        if (t > window.t1) return;
        if (best && t >= *best) return;
        const Tree& snap = window.snapshot(t);
        self(self, v, mask, t + 1);  // wait
        for (Vertex u : snap.adj[static_cast<std::size_t>(v)]) {
            const std::uint32_t m2 = mask | (1u << (u - 1));
            if ((m2 & want) == want) {
                if (!best || t < *best) best = t;
            } else {
                self(self, u, m2, t + 1);
            }
        }
    };
    rec(rec, start, mask0, window.t0);
    return best;
}

/// Recomputes R_t(source) by enumerating temporal walks (memoized by
/// (vertex, earliest departure)); an independent check of the sweep.
inline std::vector<Vertex> brute_force_reach(const TemporalWindow& window, Vertex source, int t) {
    const int n = window.model->n;
    if (n > 12) fail(ErrorCode::TooLarge, "path enumeration capped at n <= 12");
    const int t_end = std::min(t, window.t1);
    // depart[v]: smallest time from which v can continue (arrival + 1)
    std::vector<int> depart(static_cast<std::size_t>(n) + 1, kUnreached);
    auto rec = [&](auto&& self, Vertex v, int s) -> void {
        if (s >= depart[static_cast<std::size_t>(v)]) return;
        depart[static_cast<std::size_t>(v)] = s;
        for (int tt = s; tt <= t_end; ++tt) {
            const Tree& snap = window.snapshot(tt);
            for (Vertex u : snap.adj[static_cast<std::size_t>(v)]) self(self, u, tt + 1);
        }
    };
    rec(rec, source, window.t0);
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= n; ++v)
        if (depart[static_cast<std::size_t>(v)] != kUnreached) out.push_back(v);
    return out;
}

}  // namespace tempex
