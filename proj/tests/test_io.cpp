#include <catch2/catch_amalgamated.hpp>

#include "tempex/experiment.hpp"
#include "tempex/io.hpp"
#include "test_util.hpp"

using namespace tempex;

TEST_CASE("model JSON round trip is exact", "[io]") {
    Rng rng(0x10A);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.next_int(2, 9);
        auto model = testing::random_model(rng, n);
        const auto j = model_to_json(*model);
        auto back = model_from_json(j);
        REQUIRE(back->n == model->n);
        REQUIRE(back->weights == model->weights);
        REQUIRE(back->catalog.size() == model->catalog.size());
        for (std::size_t i = 0; i < model->catalog.size(); ++i)
            REQUIRE(back->catalog[i].edges == model->catalog[i].edges);
    }
}

TEST_CASE("model JSON validation errors", "[io]") {
    CHECK_THROWS_AS(model_from_json(json{{"n", 3}}), TempexError);
    json bad = {{"format", kModelFormat},
                {"n", 3},
                {"trees", json::array({{{"mass", 1.0},
                                        {"edges", json::array({{1, 2}, {2, 3}, {1, 3}})}}})}};
    CHECK_THROWS_AS(model_from_json(bad), TempexError);
}

TEST_CASE("window CSV carries the format header", "[io]") {
    auto m = star_catalog(4, 2);
    const auto w = materialize(m, 5, 1, 3);
    const auto csv = window_to_csv(w);
    CHECK(csv.rfind("# format: tempex-window-v1\ntime,tree_index\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("model spec strings", "[io]") {
    CHECK(parse_model_spec("stars:n=6,k=3")->catalog.size() == 3);
    CHECK(parse_model_spec("ladder:n=8")->catalog.size() == 4);
    CHECK(parse_model_spec("bdeg:d=5,n=8")->catalog.size() == 2);
    CHECK(parse_model_spec("apex:n=5")->catalog.size() == 4);
    CHECK_THROWS_AS(parse_model_spec("stars:n=6"), TempexError);
    CHECK_THROWS_AS(parse_model_spec("no-such-file.json"), TempexError);
    SECTION("stgraph spec enumerates spanning trees of a graph file") {
        const std::string path = "stgraph-test-triangle.json";
        {
            std::ofstream f(path);
            f << R"({"n": 3, "edges": [[1,2],[2,3],[1,3]]})";
        }
        auto m = parse_model_spec("stgraph:file=" + path);
        CHECK(m->catalog.size() == 3);
        std::remove(path.c_str());
    }
}

TEST_CASE("closeness and ball serialization", "[io]") {
    auto m = build_model(5, {path_tree(5)}, {1.0});
    const auto g = estimate_closeness(m, 2, 0.5, 10, 7, {});
    const auto gj = closeness_to_json(g);
    CHECK(gj.at("format") == kClosenessFormat);
    CHECK(gj.at("t") == 2);
    // deterministic path: pairs at distance <= 2 are close
    CHECK(gj.at("close_pairs").size() == 7);
    for (const auto& pj : gj.at("close_pairs"))
        CHECK(pj.at("frequency") == "1.000000");

    const auto b = estimate_ball(m, 3, 1, 0.5, 10, 7);
    const auto bj = ball_to_json(b);
    CHECK(bj.at("format") == kBallFormat);
    CHECK(bj.at("centre") == 3);
    CHECK(bj.at("members").size() == 2);  // centre plus the deterministic next vertex
}

TEST_CASE("schedule and online-run serialization", "[io]") {
    auto m = star_catalog(4, 2);
    const auto s = greedy_schedule(m, 3, 1, 1000);
    const auto j = schedule_to_json(s);
    CHECK(j.at("format") == kScheduleFormat);
    CHECK(j.at("start") == 1);
    CHECK(j.at("arrival").get<int>() == *s.arrival);
    CHECK(j.at("moves").size() == static_cast<std::size_t>(s.walk.steps()));

    auto policy = centre_chase_online();
    const auto run = run_online(m, 3, *policy, 1, 50);
    const auto oj = online_run_to_json(run);
    CHECK(oj.at("policy") == "centre-chase");
    CHECK(oj.contains("events"));
}

TEST_CASE("experiment reports are deterministic and summable", "[io]") {
    ExperimentSpec spec;
    spec.model_spec = "stars:n=12,k=4";
    spec.strategy = "greedy";
    spec.trials = 16;
    spec.seed = 99;

    const auto r1 = run_experiment(spec);
    const auto r2 = run_experiment(spec);
    SECTION("byte-identical rerun") {
        REQUIRE(r1.to_csv() == r2.to_csv());
        REQUIRE(r1.summary_json().dump(2) == r2.summary_json().dump(2));
    }
    SECTION("summary recomputable from rows") {
        REQUIRE(r1.failures == 0);
        std::vector<double> arrivals;
        for (const auto& row : r1.rows)
            for (const auto& [name, value] : row.values)
                if (name == "arrival") arrivals.push_back(value);
        REQUIRE(arrivals.size() == 16);
        const auto s = summarize(arrivals);
        const auto j = r1.summary_json();
        CHECK(j.at("summary").at("arrival").at("mean") == format_fixed(s.mean));
        CHECK(j.at("summary").at("arrival").at("q50") == format_fixed(s.q50));
        CHECK(j.at("summary").at("arrival").at("sd") == format_fixed(s.sd));
    }
    SECTION("single trial summary equals the row") {
        ExperimentSpec one = spec;
        one.trials = 1;
        const auto r = run_experiment(one);
        const auto j = r.summary_json();
        const double arrival = r.rows[0].values[0].second;
        CHECK(j.at("summary").at("arrival").at("mean") == format_fixed(arrival));
        CHECK(j.at("summary").at("arrival").at("min") == format_fixed(arrival));
        CHECK(j.at("summary").at("arrival").at("max") == format_fixed(arrival));
    }
    SECTION("failed rows are excluded and counted") {
        ExperimentSpec failing = spec;
        failing.strategy = "online:rabbit-chase";  // stars are not a ladder
        const auto r = run_experiment(failing);
        CHECK(r.failures == failing.trials);
        CHECK(r.summary_json().at("failures") == failing.trials);
    }
    SECTION("experiment spec JSON round trip") {
        const auto j = spec.to_json();
        const auto back = ExperimentSpec::from_json(j);
        CHECK(back.model_spec == spec.model_spec);
        CHECK(back.strategy == spec.strategy);
        CHECK(back.trials == spec.trials);
        CHECK(back.seed == spec.seed);
    }
}

TEST_CASE("summaries and intervals", "[io]") {
    const auto s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);
    CHECK(s.q50 == 2.0);  // nearest-rank
    CHECK_THAT(s.sd, Catch::Matchers::WithinAbs(1.29099, 0.0001));
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo > 0.40);
    CHECK(hi < 0.60);
    CHECK_THROWS_AS(summarize({}), TempexError);
}
