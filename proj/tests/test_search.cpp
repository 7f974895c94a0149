#include <catch2/catch_amalgamated.hpp>

#include "tempex/oracle.hpp"
#include "tempex/search.hpp"
#include "test_util.hpp"

using namespace tempex;

namespace {

ModelPtr two_star_model() {
    return build_model(3, {star_tree(3, 1), star_tree(3, 2)}, {1.0, 1.0});
}

std::vector<char> context_of(int n, std::initializer_list<Vertex> vs) {
    std::vector<char> d(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v : vs) d[static_cast<std::size_t>(v)] = 1;
    return d;
}

}  // namespace

TEST_CASE("dfs_order visits ascending-id first", "[search]") {
    CHECK(dfs_order(validate_tree(1, {}), 1).order == std::vector<Vertex>{1});
    CHECK(dfs_order(star_tree(5, 1), 1).order == std::vector<Vertex>{1, 2, 3, 4, 5});
    CHECK(dfs_order(path_tree(3), 2).order == std::vector<Vertex>{2, 1, 3});
    const auto sigma = dfs_order(path_tree(4), 3);
    CHECK(sigma.order == std::vector<Vertex>{3, 2, 1, 4});
    CHECK(sigma.pos(3) == 1);
    CHECK(sigma.pos(4) == 4);
}

TEST_CASE("next_vertex returns the first absentee of the DFS order", "[search]") {
    CHECK_FALSE(next_vertex(1, std::vector<Vertex>{1, 2, 3, 4, 5}, star_tree(5, 1)).has_value());
    CHECK(next_vertex(1, std::vector<Vertex>{1}, star_tree(5, 1)) == 2);
    CHECK(next_vertex(2, std::vector<Vertex>{2, 1}, path_tree(3)) == 3);
    CHECK_THROWS_AS(next_vertex(2, std::vector<Vertex>{1}, path_tree(3)), TempexError);
}

TEST_CASE("rho minimality: everything before the choice is already visited", "[search]") {
    Rng rng(0x5105);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.next_int(2, 8);
        const Tree tree = testing::random_tree(rng, n);
        const Vertex v = rng.next_int(1, n);
        std::vector<char> d(static_cast<std::size_t>(n) + 1, 0);
        d[static_cast<std::size_t>(v)] = 1;
        for (Vertex u = 1; u <= n; ++u)
            if (u != v && rng.next_bool()) d[static_cast<std::size_t>(u)] = 1;
        const auto u = next_vertex(v, d, tree);
        const auto sigma = dfs_order(tree, v);
        if (!u) {
            for (Vertex x = 1; x <= n; ++x) REQUIRE(d[static_cast<std::size_t>(x)]);
        } else {
            REQUIRE_FALSE(d[static_cast<std::size_t>(*u)]);
            for (Vertex x = 1; x <= n; ++x)
                if (sigma.pos(x) < sigma.pos(*u)) REQUIRE(d[static_cast<std::size_t>(x)]);
        }
    }
}

TEST_CASE("next_vertex is stable across nested contexts", "[search]") {
    // rho(v, D1, F) = rho(v, D2, F) whenever D1 subset of D2 misses rho(v, D1, F)
    Rng rng(0x1EAF);
    int exercised = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = rng.next_int(2, 10);
        const Tree tree = testing::random_tree(rng, n);
        const Vertex v = rng.next_int(1, n);
        auto d1 = context_of(n, {v});
        auto d2 = d1;
        for (Vertex u = 1; u <= n; ++u) {
            if (u == v) continue;
            if (rng.next_bool()) {
                d2[static_cast<std::size_t>(u)] = 1;
                if (rng.next_bool()) d1[static_cast<std::size_t>(u)] = 1;
            }
        }
        const auto r1 = next_vertex(v, d1, tree);
        if (!r1 || d2[static_cast<std::size_t>(*r1)]) continue;
        const auto r2 = next_vertex(v, d2, tree);
        REQUIRE(r2 == r1);
        ++exercised;
    }
    CHECK(exercised > 100);
}

TEST_CASE("temporal_dfs discovers one vertex per snapshot", "[search]") {
    auto m = two_star_model();
    SECTION("zero steps") {
        const auto w = materialize(m, 1, 1, 5);
        const auto d = temporal_dfs(w, 2, 0);
        CHECK(d.vertices() == std::vector<Vertex>{2});
    }
    SECTION("two star-at-1 snapshots from 2") {
        TemporalWindow w;
        w.model = m;
        w.t0 = 1;
        w.t1 = 2;
        w.snapshots = {0, 0};
        const auto d = temporal_dfs(w, 2, 2);
        REQUIRE(d.discoveries.size() == 2);
        CHECK(d.discoveries[0] == std::pair{1, 1});
        CHECK(d.discoveries[1] == std::pair{2, 3});
        CHECK(d.vertices() == std::vector<Vertex>{1, 2, 3});
    }
    SECTION("size law |D_t| = min(1+t, n)") {
        Rng rng(0xD15C);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = rng.next_int(2, 12);
            auto model = testing::random_model(rng, n);
            const int len = rng.next_int(0, 2 * n);
            const auto w = materialize(model, rng.next_u64(), 1, len);
            const Vertex v = rng.next_int(1, n);
            const auto d = temporal_dfs(w, v, len);
            REQUIRE(d.size() == std::min(1 + len, n));
        }
    }
    SECTION("discoveries are temporally reachable") {
        Rng rng(0xD15D);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = rng.next_int(2, 9);
            auto model = testing::random_model(rng, n);
            const int len = rng.next_int(0, n);
            const auto w = materialize(model, rng.next_u64(), 1, len);
            const Vertex v = rng.next_int(1, n);
            const auto d = temporal_dfs(w, v, len);
            const auto reach = earliest_arrival(w, {v}, 1);
            for (const auto& [time, u] : d.discoveries) REQUIRE(reach.at(u) <= time);
        }
    }
}

TEST_CASE("nu_exact matches hand-computed distributions", "[search]") {
    SECTION("point mass model concentrates on rho") {
        auto m = build_model(3, {star_tree(3, 1)}, {1.0});
        const auto nu = nu_exact(*m, 1, context_of(3, {1}));
        CHECK(nu.weight[2] == kWeightOne);
        CHECK(nu.weight[3] == 0);
    }
    SECTION("two half/half stars agree on the next vertex") {
        auto m = two_star_model();
        const auto nu = nu_exact(*m, 1, context_of(3, {1}));
        CHECK(nu.weight[2] == kWeightOne);
        CHECK(nu.weight[3] == 0);
    }
    SECTION("total probability over random contexts") {
        Rng rng(0x207);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = rng.next_int(2, 9);
            auto model = testing::random_model(rng, n);
            const Vertex v = rng.next_int(1, n);
            auto d = context_of(n, {v});
            for (Vertex u = 1; u <= n; ++u)
                if (u != v && rng.next_bool()) d[static_cast<std::size_t>(u)] = 1;
            bool full = true;
            for (Vertex u = 1; u <= n; ++u) full = full && d[static_cast<std::size_t>(u)];
            if (full) continue;
            const auto nu = nu_exact(*model, v, d);
            std::uint64_t total = 0;
            for (Vertex u = 1; u <= n; ++u) {
                total += nu.weight[static_cast<std::size_t>(u)];
                if (d[static_cast<std::size_t>(u)]) REQUIRE(nu.weight[static_cast<std::size_t>(u)] == 0);
            }
            REQUIRE(total == kWeightOne);
        }
    }
    SECTION("context full is an error") {
        auto m = two_star_model();
        CHECK_THROWS_AS(nu_exact(*m, 1, context_of(3, {1, 2, 3})), TempexError);
    }
}

TEST_CASE("nu is monotone in the context outside D2", "[search]") {
    Rng rng(0x440);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = rng.next_int(2, 10);
        auto model = testing::random_model(rng, n);
        const Vertex v = rng.next_int(1, n);
        auto d1 = context_of(n, {v});
        auto d2 = d1;
        for (Vertex u = 1; u <= n; ++u) {
            if (u == v) continue;
            if (rng.next_bool()) {
                d2[static_cast<std::size_t>(u)] = 1;
                if (rng.next_bool()) d1[static_cast<std::size_t>(u)] = 1;
            }
        }
        bool full2 = true;
        for (Vertex u = 1; u <= n; ++u) full2 = full2 && d2[static_cast<std::size_t>(u)];
        if (full2) continue;
        const auto nu1 = nu_exact(*model, v, d1);
        const auto nu2 = nu_exact(*model, v, d2);
        for (Vertex u = 1; u <= n; ++u) {
            if (d2[static_cast<std::size_t>(u)]) continue;
            REQUIRE(nu1.weight[static_cast<std::size_t>(u)] <= nu2.weight[static_cast<std::size_t>(u)]);
        }
    }
}

TEST_CASE("good vertices carry at least half the mass", "[search]") {
    SECTION("hand example") {
        auto m = two_star_model();
        const auto good = good_vertices(*m, 1, context_of(3, {1}));
        CHECK(good == std::vector<Vertex>{2});
    }
    SECTION("point mass gives a singleton") {
        auto m = build_model(4, {path_tree(4)}, {1.0});
        const auto good = good_vertices(*m, 2, context_of(4, {2}));
        CHECK(good == std::vector<Vertex>{1});
    }
    SECTION("exact half-mass property over random contexts") {
        Rng rng(0x900D);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = rng.next_int(2, 10);
            auto model = testing::random_model(rng, n);
            const Vertex v = rng.next_int(1, n);
            auto d = context_of(n, {v});
            for (Vertex u = 1; u <= n; ++u)
                if (u != v && rng.next_bool()) d[static_cast<std::size_t>(u)] = 1;
            bool full = true;
            for (Vertex u = 1; u <= n; ++u) full = full && d[static_cast<std::size_t>(u)];
            if (full) continue;
            const auto nu = nu_exact(*model, v, d);
            std::uint64_t good_mass = 0;
            for (Vertex u = 1; u <= n; ++u)
                if (is_good_weight(nu.weight[static_cast<std::size_t>(u)], n))
                    good_mass += nu.weight[static_cast<std::size_t>(u)];
            REQUIRE(2 * good_mass >= kWeightOne);
        }
    }
}

TEST_CASE("estimate_ball frequencies", "[search]") {
    auto m = two_star_model();
    SECTION("t = 0 is the centre alone") {
        const auto b = estimate_ball(m, 1, 0, 0.5, 10, 3);
        CHECK(b.members == std::vector<Vertex>{1});
    }
    SECTION("deterministic next vertex is discovered always") {
        const auto b = estimate_ball(m, 1, 1, 1.0 / 9.0, 1000, 3);
        CHECK(b.members == std::vector<Vertex>{1, 2});
        CHECK(b.frequency[2] == 1.0);
    }
    SECTION("t >= n-1 covers everything") {
        const auto b = estimate_ball(m, 2, 2, 0.99, 50, 4);
        CHECK(b.members == std::vector<Vertex>{1, 2, 3});
    }
}

TEST_CASE("estimate_closeness on a deterministic path model", "[search]") {
    auto m = build_model(5, {path_tree(5)}, {1.0});
    const auto g = estimate_closeness(m, 2, 0.5, 20, 9, {});
    for (Vertex u = 1; u <= 5; ++u)
        for (Vertex w = 1; w <= 5; ++w)
            CHECK(g.close(u, w) == (std::abs(u - w) <= 2));
    SECTION("t >= n-1 makes every pair close") {
        const auto full = estimate_closeness(m, 4, 1.0, 10, 9, {});
        for (Vertex u = 1; u <= 5; ++u) CHECK(full.close_vertices(u).size() == 4);
    }
}

TEST_CASE("coupled DFS dichotomy report", "[search]") {
    SECTION("point mass model always lands in the stable case") {
        auto m = build_model(6, {path_tree(6)}, {1.0});
        const auto report = coupled_dfs_experiment(m, 2, 5, 40, 11);
        CHECK(report.dichotomy_fraction == 1.0);
        for (const auto& trial : report.trials) CHECK(trial.stable);
    }
    SECTION("threshold is ceil(T/50)") {
        auto m = build_model(6, {path_tree(6)}, {1.0});
        const auto report = coupled_dfs_experiment(m, 3, 1, 5, 11);
        CHECK(report.threshold == 1);
    }
}
