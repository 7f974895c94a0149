#include <catch2/catch_amalgamated.hpp>

#include "tempex/models.hpp"
#include "tempex/online.hpp"
#include "tempex/oracle.hpp"
#include "tempex/stats.hpp"
#include "test_util.hpp"

using namespace tempex;

namespace {

std::vector<Vertex> all_vertices(int n) {
    std::vector<Vertex> out(static_cast<std::size_t>(n));
    std::iota(out.begin(), out.end(), 1);
    return out;
}

void check_online_run(const ModelPtr& model, std::uint64_t seed, const OnlineRun& run) {
    const int horizon = std::max(1, run.walk.end_time());
    const auto w = materialize(model, seed, 1, horizon);
    const auto report = validate_walk(w, run.walk, all_vertices(model->n));
    REQUIRE(report.valid);
    if (run.dexp) REQUIRE(report.arrival == run.dexp);
}

}  // namespace

TEST_CASE("stand-still never finishes", "[online]") {
    auto m = star_catalog(4, 2);
    auto policy = stand_still_online();
    const auto run = run_online(m, 3, *policy, 2, 50);
    CHECK_FALSE(run.dexp.has_value());
    CHECK(run.walk.positions == std::vector<Vertex>(51, 2));
    check_online_run(m, 3, run);
}

TEST_CASE("mst-euler crosses each edge at the earliest opportunity", "[online]") {
    SECTION("deterministic single tree walks the tour") {
        auto m = build_model(5, {path_tree(5)}, {1.0});
        auto policy = mst_euler_online();
        const auto run = run_online(m, 7, *policy, 1, 100);
        REQUIRE(run.dexp == 4);  // sweeps 1..5, all edges always present
        check_online_run(m, 7, run);
    }
    SECTION("two-vertex point mass explores in one step") {
        auto m = build_model(2, {validate_tree(2, {{1, 2}})}, {1.0});
        auto policy = mst_euler_online();
        CHECK(run_online(m, 1, *policy, 1, 10).dexp == 1);
    }
    SECTION("mean tour time stays below twice the tree weight") {
        auto m = ladder_model(12);  // w(T_min) = 10 + 6 = 16
        auto policy = mst_euler_online();
        std::vector<double> times;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const auto run = run_online(m, seed, *policy, 1, 4000);
            REQUIRE(run.dexp.has_value());
            times.push_back(static_cast<double>(*run.dexp));
            if (seed <= 20) check_online_run(m, seed, run);
        }
        const auto s = summarize(times);
        // 2 w(T_min) = 32; allow Monte Carlo slack above the mean bound
        CHECK(s.mean <= 32.0 + 3.0 * s.sd / std::sqrt(200.0));
    }
    SECTION("valid on random catalogs") {
        Rng rng(0xA11);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = rng.next_int(2, 10);
            auto model = testing::random_model(rng, n);
            const std::uint64_t seed = rng.next_u64();
            auto policy = mst_euler_online();
            const auto run = run_online(model, seed, *policy, rng.next_int(1, n), 5000);
            check_online_run(model, seed, run);
        }
    }
}

TEST_CASE("centre-chase hugs the centre and grabs non-centres on catches", "[online]") {
    SECTION("point-mass star: replay-derived exploration time") {
        // star at 1 on 4 vertices, start at leaf 2: centre first, then one
        // leaf per repeat with a return step between leaves
        auto m = build_model(4, {star_tree(4, 1)}, {1.0});
        auto policy = centre_chase_online();
        const auto run = run_online(m, 5, *policy, 2, 100);
        REQUIRE(run.dexp == 2 * (4 - 2));  // oracle-confirmed optimum from a leaf
        check_online_run(m, 5, run);
        const auto w = materialize(m, 5, 1, 10);
        const auto opt = exact_visit_time_from(w, all_vertices(4), 2);
        CHECK(*run.dexp == *opt);
    }
    SECTION("two-vertex star explores in one step from either start") {
        auto m = build_model(2, {validate_tree(2, {{1, 2}})}, {1.0});
        auto policy = centre_chase_online();
        CHECK(run_online(m, 2, *policy, 1, 10).dexp == 1);
        CHECK(run_online(m, 2, *policy, 2, 10).dexp == 1);
    }
    SECTION("catch events mark centre coincidences") {
        auto m = star_catalog(6, 3);
        auto policy = centre_chase_online();
        const auto run = run_online(m, 11, *policy, 4, 400);
        check_online_run(m, 11, run);
        const auto w = materialize(m, 11, 1, std::max(1, run.walk.end_time()));
        const auto centres = centre_sequence(w);
        for (const auto& e : run.events) {
            REQUIRE(e.name == "centre-catch");
            REQUIRE(run.walk.at_time(e.time - 1) ==
                    centres[static_cast<std::size_t>(e.time - 1)]);
        }
    }
    SECTION("rejects non-star catalogs") {
        auto m = build_model(4, {path_tree(4)}, {1.0});
        auto policy = centre_chase_online();
        CHECK_THROWS_AS(run_online(m, 1, *policy, 1, 10), TempexError);
    }
}

TEST_CASE("rabbit-chase catch times are geometric", "[online]") {
    SECTION("k = 1: catch at step 1") {
        // one-rung ladder on two vertices built directly
        auto m = build_model(2, {validate_tree(2, {{1, 2}})}, {1.0});
        auto policy = rabbit_chase_online(1);
        const auto run = run_online(m, 9, *policy, 1, 10);
        REQUIRE(run.events.size() == 1);
        CHECK(run.events[0].name == "rabbit-catch");
        CHECK(run.events[0].time == 1);
    }
    SECTION("empirical mean near k") {
        const int k = 50;
        auto m = ladder_model(2 * k);
        std::vector<double> catches;
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            auto policy = rabbit_chase_online(k);
            const auto run = run_online(m, derive_seed(77, seed), *policy, 3, 5000);
            REQUIRE_FALSE(run.events.empty());
            catches.push_back(static_cast<double>(run.events[0].time));
        }
        const auto s = summarize(catches);
        CHECK(std::abs(s.mean - k) <= 3.0 * s.sd / std::sqrt(2000.0) + 1e-9);
    }
    SECTION("rejects non-ladder models") {
        auto m = star_catalog(6, 3);
        auto policy = rabbit_chase_online(3);
        CHECK_THROWS_AS(run_online(m, 1, *policy, 1, 10), TempexError);
    }
    SECTION("walks stay valid") {
        auto m = ladder_model(10);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto policy = rabbit_chase_online(5);
            const auto run = run_online(m, seed, *policy, 7, 500);
            check_online_run(m, seed, run);
        }
    }
}

TEST_CASE("policies cannot see the future and illegal moves raise", "[online]") {
    class Cheater final : public OnlinePolicy {
    public:
        std::string name() const override { return "cheater"; }
        void reset(const Model&, Vertex) override {}
        Vertex decide(const OnlineContext& ctx) override {
            return ctx.current == 1 ? 3 : 1;  // hop to a likely non-neighbor
        }
    };
    auto m = build_model(4, {path_tree(4)}, {1.0});
    Cheater cheater;
    CHECK_THROWS_MATCHES(run_online(m, 1, cheater, 1, 10), TempexError,
                         Catch::Matchers::Predicate<TempexError>([](const TempexError& e) {
                             return e.code() == ErrorCode::PolicyIllegalMove;
                         }));
}
