#pragma once

#include <string>
#include <vector>

#include "tempex/reach.hpp"
#include "tempex/window.hpp"

namespace tempex {

/// One annotated leg of a schedule.
struct Leg {
    std::string kind;  // "entry", "meta-edge", "backbone", "ehk-hop", "greedy"
    Vertex from = 0;
    Vertex to = 0;
    int depart = 0;  // first step of the leg
    int arrive = 0;  // step of the last move
    int extensions = 0;
};

/// A full exploration trajectory with arrival-time accounting.
struct Schedule {
    Walk walk;
    std::optional<int> arrival;  // first step at which all of [n] is visited
    std::vector<Leg> legs;
};

namespace detail {

/// Window over [1, t1] grown on demand in blocks; extension is append-only
/// because snapshots are a pure function of (seed, time).
class GrowingWindow {
public:
    GrowingWindow(ModelPtr model, std::uint64_t seed, int initial = 0) : seed_(seed) {
        window_.model = std::move(model);
        window_.t0 = 1;
        window_.t1 = 0;
        if (initial > 0) ensure(initial);
    }

    void ensure(int t1) {
        if (t1 <= window_.t1) return;
        const int block = std::max(window_.model->n, 64);
        const int target = std::max(t1, window_.t1 + block);
        window_.snapshots.reserve(static_cast<std::size_t>(target));
        for (int t = window_.t1 + 1; t <= target; ++t)
            window_.snapshots.push_back(draw_snapshot(*window_.model, seed_, t));
        window_.t1 = target;
    }

    const TemporalWindow& window() const { return window_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    TemporalWindow window_;
};

/// Accumulates a walk step by step, tracking the visited set and stopping as
/// soon as all of [n] has been seen. Enforces the max_time budget.
class WalkBuilder {
public:
    WalkBuilder(int n, Vertex start, int max_time) : n_(n), max_time_(max_time) {
        visited_.assign(static_cast<std::size_t>(n) + 1, 0);
        visited_[static_cast<std::size_t>(start)] = 1;
        seen_ = 1;
        walk_.start_time = 1;
        walk_.positions.push_back(start);
        if (seen_ == n_) arrival_ = 0;
    }

    Vertex position() const { return walk_.positions.back(); }
    /// Time of the last appended step (0 before any step).
    int now() const { return walk_.end_time(); }
    bool done() const { return arrival_.has_value(); }
    bool visited(Vertex v) const { return visited_[static_cast<std::size_t>(v)] != 0; }
    const std::vector<char>& visited_mask() const { return visited_; }
    int unvisited_count() const { return n_ - seen_; }

    /// Appends one step (wait or move); returns false once all visited.
    bool step(Vertex v) {
        if (done()) return false;
        const int t = now() + 1;
        if (t > max_time_) fail(ErrorCode::HorizonExceeded, "exceeded max_time before full exploration");
        walk_.positions.push_back(v);
        if (!visited_[static_cast<std::size_t>(v)]) {
            visited_[static_cast<std::size_t>(v)] = 1;
            ++seen_;
            if (seen_ == n_) {
                arrival_ = t;
                return false;
            }
        }
        return true;
    }

    bool wait_until(int t) {
        while (now() < t)
            if (!step(position())) return false;
        return true;
    }

    /// Appends a walk whose start matches the current position and whose
    /// start_time is now()+1.
    bool append(const Walk& w) {
        for (std::size_t i = 1; i < w.positions.size(); ++i)
            if (!step(w.positions[i])) return false;
        return true;
    }

    Schedule finish(std::vector<Leg> legs) && {
        Schedule s;
        s.walk = std::move(walk_);
        s.arrival = arrival_;
        s.legs = std::move(legs);
        return s;
    }

private:
    int n_;
    int max_time_;
    int seen_ = 0;
    Walk walk_;
    std::vector<char> visited_;
    std::optional<int> arrival_;
};

}  // namespace detail

}  // namespace tempex
