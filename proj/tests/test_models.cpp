#include <catch2/catch_amalgamated.hpp>

#include "tempex/models.hpp"
#include "tempex/oracle.hpp"
#include "tempex/predict.hpp"
#include "tempex/stars.hpp"
#include "test_util.hpp"

using namespace tempex;

TEST_CASE("star_catalog builds uniform stars with exact edge probabilities", "[models]") {
    auto m = star_catalog(3, 2);
    REQUIRE(m->catalog.size() == 2);
    CHECK(m->catalog[0].edges == star_tree(3, 1).edges);
    CHECK(edge_probability(*m, {1, 2}) == 1.0);
    CHECK(edge_probability(*m, {1, 3}) == 0.5);
    CHECK_THROWS_AS(star_catalog(5, 1), TempexError);
    CHECK_THROWS_AS(star_catalog(5, 6), TempexError);
    SECTION("all stars and third-stars regimes") {
        CHECK(star_catalog(6, 6)->catalog.size() == 6);
        CHECK(third_stars(9)->catalog.size() == 3);
        CHECK(half_stars(10)->catalog.size() == 5);
    }
}

TEST_CASE("ladder_model and its edge probabilities", "[models]") {
    auto m = ladder_model(4);
    REQUIRE(m->catalog.size() == 2);
    for (const Tree& t : m->catalog) CHECK(t.edges.size() == 3);
    CHECK(edge_probability(*m, {1, 2}) == 1.0);   // path edge
    CHECK(edge_probability(*m, {3, 4}) == 1.0);   // path edge
    CHECK(edge_probability(*m, {1, 3}) == 0.5);   // rung
    CHECK(edge_probability(*m, {2, 4}) == 0.5);   // rung
    CHECK_THROWS_AS(ladder_model(5), TempexError);
    CHECK_THROWS_AS(ladder_model(2), TempexError);
    SECTION("rung probability is 1/k") {
        auto big = ladder_model(20);
        CHECK_THAT(edge_probability(*big, {1, 11}), Catch::Matchers::WithinAbs(0.1, 1e-8));
    }
}

TEST_CASE("bounded_degree_model stays within degree d", "[models]") {
    auto m = bounded_degree_model(5, 8);
    REQUIRE(m->catalog.size() == 2);
    for (const Tree& t : m->catalog) {
        int max_deg = 0;
        for (Vertex v = 1; v <= t.n; ++v) max_deg = std::max(max_deg, t.degree(v));
        CHECK(max_deg <= 5);
    }
    SECTION("single copy reduces to stars up to labels") {
        auto one = bounded_degree_model(5, 4);
        REQUIRE(one->catalog.size() == 2);
        CHECK(one->catalog[0].edges == star_tree(4, 1).edges);
        CHECK(one->catalog[1].edges == star_tree(4, 2).edges);
    }
    CHECK_THROWS_AS(bounded_degree_model(4, 9), TempexError);
    CHECK_THROWS_AS(bounded_degree_model(5, 9), TempexError);
}

TEST_CASE("apex_path_model edge probabilities", "[models]") {
    auto m = apex_path_model(3);
    REQUIRE(m->catalog.size() == 2);
    CHECK(edge_probability(*m, {1, 2}) == 1.0);
    CHECK(edge_probability(*m, {3, 1}) == 0.5);  // apex edge, 1/(n-1)
    auto big = apex_path_model(5);
    CHECK(edge_probability(*big, {1, 2}) == 1.0);
    CHECK(edge_probability(*big, {5, 2}) == 0.25);
    CHECK_THROWS_AS(apex_path_model(2), TempexError);
}

TEST_CASE("spanning_trees_uniform enumerates small graphs", "[models]") {
    SECTION("a tree gives a single-tree model") {
        auto m = spanning_trees_uniform(4, path_tree(4).edges);
        CHECK(m->catalog.size() == 1);
    }
    SECTION("triangle: 3 trees, each edge in 2 of 3") {
        auto m = spanning_trees_uniform(3, {{1, 2}, {2, 3}, {1, 3}});
        REQUIRE(m->catalog.size() == 3);
        for (const Edge& e : std::vector<Edge>{{1, 2}, {2, 3}, {1, 3}}) {
            const auto mass = edge_weight_sum(*m, e);
            CHECK(std::abs(static_cast<double>(mass) / kWeightOne - 2.0 / 3.0) < 1e-9);
        }
    }
    SECTION("4-cycle: 4 trees, each edge in 3 of 4") {
        auto m = spanning_trees_uniform(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        REQUIRE(m->catalog.size() == 4);
        CHECK(std::abs(edge_probability(*m, {1, 2}) - 0.75) < 1e-9);
    }
    SECTION("disconnected input") {
        CHECK_THROWS_AS(spanning_trees_uniform(4, {{1, 2}, {3, 4}}), TempexError);
    }
    SECTION("enumeration cap: K8 has more than 10^5 spanning trees") {
        std::vector<Edge> k8;
        for (Vertex a = 1; a <= 8; ++a)
            for (Vertex b = a + 1; b <= 8; ++b) k8.push_back({a, b});
        CHECK_THROWS_MATCHES(spanning_trees_uniform(8, k8), TempexError,
                             Catch::Matchers::Predicate<TempexError>([](const TempexError& e) {
                                 return e.code() == ErrorCode::TooManyTrees;
                             }));
    }
}

TEST_CASE("centre_sequence extracts star centres", "[models]") {
    auto m = star_catalog(4, 2);
    SECTION("repeated star") {
        TemporalWindow w;
        w.model = m;
        w.t0 = 1;
        w.t1 = 3;
        w.snapshots = {0, 0, 0};
        CHECK(centre_sequence(w) == CentreSequence{1, 1, 1});
    }
    SECTION("mixed window") {
        TemporalWindow w;
        w.model = m;
        w.t0 = 1;
        w.t1 = 3;
        w.snapshots = {0, 1, 0};
        CHECK(centre_sequence(w) == CentreSequence{1, 2, 1});
    }
    SECTION("values stay in [k]") {
        const auto w = materialize(m, 123, 1, 50);
        for (Vertex c : centre_sequence(w)) {
            CHECK(c >= 1);
            CHECK(c <= 2);
        }
    }
    SECTION("non-star snapshots are rejected") {
        auto paths = build_model(4, {path_tree(4)}, {1.0});
        const auto w = materialize(paths, 5, 1, 2);
        CHECK_THROWS_AS(centre_sequence(w), TempexError);
    }
}

TEST_CASE("star_decomposition interval bookkeeping", "[models]") {
    SECTION("first repeat closes the interval") {
        const auto d = star_decomposition({1, 2, 1}, 2, 1);
        REQUIRE(d.complete);
        CHECK(d.t == std::vector<int>{3});
        CHECK(d.tau == std::vector<int>{3});
    }
    SECTION("immediate repeats") {
        const auto d = star_decomposition({1, 1, 1, 1}, 2, 2);
        REQUIRE(d.complete);
        CHECK(d.t == std::vector<int>{2, 4});
        CHECK(d.tau == std::vector<int>{2, 2});
    }
    SECTION("incomplete sequences are flagged") {
        const auto d = star_decomposition({1, 2}, 2, 1);
        CHECK_FALSE(d.complete);
        CHECK(d.t.empty());
    }
    SECTION("coupon time records full coverage") {
        const auto d = star_decomposition({2, 2, 1, 1}, 2, 2);
        CHECK(d.coupon_time == 3);
    }
    SECTION("tau never exceeds k + 1") {
        Rng rng(0x7A0);
        for (int trial = 0; trial < 40; ++trial) {
            const int k = rng.next_int(2, 6);
            const int n = k + rng.next_int(1, 4);
            auto model = star_catalog(n, k);
            const auto w = materialize(model, rng.next_u64(), 1, 12 * (k + 1));
            const auto d = star_decomposition(centre_sequence(w), k, 10);
            REQUIRE(d.complete);
            for (int tau : d.tau) REQUIRE(tau <= k + 1);
        }
    }
}

TEST_CASE("decomposition sandwich against the exact oracle", "[models]") {
    // worst-start time to visit all non-centres lies in [t_{l-1}, t_l]
    Rng rng(0x5A2);
    int exercised = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int k = rng.next_int(2, 4);
        const int n = k + rng.next_int(2, 8 - k);
        auto model = star_catalog(n, k);
        const int ell = n - k;
        const auto w = materialize(model, rng.next_u64(), 1, 10 * (k + 1) * std::max(1, ell));
        const auto d = star_decomposition(centre_sequence(w), k, ell);
        REQUIRE(d.complete);
        std::vector<Vertex> leaves;
        for (Vertex v = k + 1; v <= n; ++v) leaves.push_back(v);
        const auto sliced = w.slice(1, std::min(w.t1, d.t.back() + 2 * (k + 1)));
        const auto worst = exact_visit_time(sliced, leaves, OracleMode::WorstStart);
        if (!worst.value) continue;  // window cut before a worst start finished
        REQUIRE(*worst.value >= d.t_at(ell - 1));
        REQUIRE(*worst.value <= d.t_at(ell));
        ++exercised;
    }
    CHECK(exercised >= 15);
}

TEST_CASE("walks between non-centres pass through a repeated centre", "[models]") {
    // audit: any valid walk between two distinct non-centres spans a centre
    // that repeats within the walk's move times
    Rng rng(0xA0D1);
    int audited = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int k = rng.next_int(2, 4);
        const int n = k + rng.next_int(2, 5);
        auto model = star_catalog(n, k);
        const auto w = materialize(model, rng.next_u64(), 1, 8 * (k + 1));
        const Vertex u = n - 1;
        const Vertex v = n;
        const auto walk = foremost_walk(w, u, v, 1);
        if (!walk || walk->steps() == 0) continue;
        // first and last actual moves
        int first_move = 0, last_move = 0;
        for (int i = 1; i < static_cast<int>(walk->positions.size()); ++i) {
            if (walk->positions[static_cast<std::size_t>(i)] !=
                walk->positions[static_cast<std::size_t>(i - 1)]) {
                if (first_move == 0) first_move = walk->start_time + i - 1;
                last_move = walk->start_time + i - 1;
            }
        }
        if (first_move == 0) continue;
        const auto centres = centre_sequence(w);
        std::map<Vertex, int> counts;
        bool repeated = false;
        for (int t = first_move; t <= last_move; ++t)
            if (++counts[centres[static_cast<std::size_t>(t - 1)]] >= 2) repeated = true;
        REQUIRE(repeated);
        ++audited;
    }
    CHECK(audited >= 10);
}

TEST_CASE("predict_birthday_survival", "[models]") {
    CHECK(predict_birthday_survival(5, 1) == 1.0);
    CHECK(predict_birthday_survival(2, 2) == 0.5);
    CHECK_THAT(predict_birthday_survival(365, 23),
               Catch::Matchers::WithinAbs(0.4927, 0.0001));
    CHECK(predict_birthday_survival(3, 5) == 0.0);
    SECTION("matches empirical survival") {
        const int k = 10, t = 4;
        Rng rng(0x887);
        int survived = 0;
        const int trials = 40000;
        for (int i = 0; i < trials; ++i) {
            std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
            bool repeat = false;
            for (int s = 1; s <= t && !repeat; ++s) {
                const int x = rng.next_int(1, k);
                if (seen[static_cast<std::size_t>(x)]) repeat = true;
                seen[static_cast<std::size_t>(x)] = 1;
            }
            if (!repeat) ++survived;
        }
        const double expect = predict_birthday_survival(k, t);
        const double freq = static_cast<double>(survived) / trials;
        CHECK(std::abs(freq - expect) < 3.0 * std::sqrt(expect * (1 - expect) / trials));
    }
}

TEST_CASE("predict_tau1_bounds", "[models]") {
    const auto b100 = predict_tau1_bounds(100);
    CHECK_THAT(b100.lo, Catch::Matchers::WithinAbs(12.133, 0.001));
    CHECK_THAT(b100.hi, Catch::Matchers::WithinAbs(14.133, 0.001));
    const auto b2 = predict_tau1_bounds(2);
    CHECK_THAT(b2.lo, Catch::Matchers::WithinAbs(1.373, 0.001));
    CHECK_THAT(b2.hi, Catch::Matchers::WithinAbs(3.373, 0.001));
    CHECK(b2.contains(exact_tau1_mean(2)));
    CHECK(exact_tau1_mean(2) == 2.5);
    for (int k : {1, 2, 10, 365})
        CHECK_THAT(predict_tau1_bounds(k).width(), Catch::Matchers::WithinAbs(2.0, 1e-12));
    SECTION("exact mean lies inside the bracket") {
        for (int k : {2, 5, 10, 50, 200, 1000})
            CHECK(predict_tau1_bounds(k).contains(exact_tau1_mean(k)));
    }
}

TEST_CASE("predict_coupon_mean", "[models]") {
    CHECK(predict_coupon_mean(7, 0) == 7.0);
    CHECK_THAT(predict_coupon_mean(10, 10), Catch::Matchers::WithinAbs(3.4868, 0.0001));
    double prev = predict_coupon_mean(10, 0);
    for (int theta = 1; theta <= 40; ++theta) {
        const double cur = predict_coupon_mean(10, theta);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(predict_coupon_mean(10, 400) < 1e-17);
}

TEST_CASE("predict_star_exploration", "[models]") {
    SECTION("weak T at n=2000, k=200") {
        const auto p = predict_star_exploration(2000, 200, 2.0);
        REQUIRE(p.weak_t.has_value());
        CHECK_THAT(*p.weak_t, Catch::Matchers::WithinAbs(31904.16, 0.05));
        REQUIRE(p.f_minus.has_value());
        REQUIRE(p.f_plus.has_value());
        CHECK(*p.f_minus < *p.weak_t);
        CHECK(*p.f_plus > *p.weak_t);
    }
    SECTION("third-stars ratio approaches sqrt(2 pi / 27)") {
        const double limit = std::sqrt(2.0 * M_PI / 27.0);
        CHECK_THAT(limit, Catch::Matchers::WithinAbs(0.48240, 0.0001));
        double prev_gap = 1e9;
        for (int n : {300, 3000, 30000, 300000}) {
            const int k = (n + 2) / 3;
            const auto p = predict_star_exploration(n, k, 2.0);
            const double ratio = *p.weak_t / std::pow(static_cast<double>(n), 1.5);
            const double gap = std::abs(ratio - limit);
            CHECK(gap < prev_gap + 1e-12);
            prev_gap = gap;
        }
    }
    SECTION("k = n keeps only the centre bounds") {
        const auto p = predict_star_exploration(500, 500, 3.0);
        CHECK_FALSE(p.weak_t.has_value());
        CHECK_FALSE(p.f_minus.has_value());
        CHECK_THAT(p.centre_lower, Catch::Matchers::WithinAbs(500 * std::log(500.0) / 10, 1e-9));
        CHECK_THAT(p.centre_upper, Catch::Matchers::WithinAbs(3 * 500 * std::log(500.0), 1e-9));
    }
}

TEST_CASE("degree and online-star thresholds", "[models]") {
    CHECK_THAT(predict_degree_lower(9, 80), Catch::Matchers::WithinAbs(4.8, 1e-12));
    CHECK_THAT(predict_degree_lower(5, 8), Catch::Matchers::WithinAbs(0.3577, 0.0001));
    CHECK(predict_degree_lower(9, 160) == 2.0 * predict_degree_lower(9, 80));
    CHECK_THAT(predict_online_star_lower(200), Catch::Matchers::WithinAbs(2666.6667, 0.001));
    CHECK_THAT(predict_online_star_lower(4), Catch::Matchers::WithinAbs(1.0667, 0.001));
    CHECK(predict_online_star_lower(400) == 4.0 * predict_online_star_lower(200));
    CHECK_THROWS_AS(predict_online_star_lower(5), TempexError);
}

TEST_CASE("star exploration schedule is valid and accounted", "[models]") {
    Rng rng(0x57A2);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = rng.next_int(2, 5);
        const int n = std::max(k + rng.next_int(0, 6), 3);  // stars coincide at n = 2
        auto model = star_catalog(n, k);
        const std::uint64_t seed = rng.next_u64();
        const auto run = star_exploration_schedule(model, seed, rng.next_int(1, n), 100000);
        REQUIRE(run.schedule.arrival.has_value());
        CHECK(*run.schedule.arrival == run.coupon_time + run.leaf_phase);
        const auto w = materialize(model, seed, 1, std::max(1, run.schedule.walk.end_time()));
        std::vector<Vertex> all;
        for (Vertex v = 1; v <= n; ++v) all.push_back(v);
        const auto report = validate_walk(w, run.schedule.walk, all);
        REQUIRE(report.valid);
        REQUIRE(report.arrival == run.schedule.arrival);
    }
}
