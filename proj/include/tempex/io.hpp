#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tempex/model.hpp"
#include "tempex/models.hpp"
#include "tempex/schedule.hpp"
#include "tempex/search.hpp"

namespace tempex {

using json = nlohmann::json;

inline constexpr const char* kModelFormat = "tempex-model-v1";
inline constexpr const char* kWindowFormat = "tempex-window-v1";
inline constexpr const char* kScheduleFormat = "tempex-schedule-v1";
inline constexpr const char* kClosenessFormat = "tempex-closeness-v1";
inline constexpr const char* kBallFormat = "tempex-ball-v1";

inline std::string format_fixed(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

/// Model JSON. Masses are written as the exact quantized weights, so a
/// write/read round trip reproduces the model bit for bit.
inline json model_to_json(const Model& model) {
    json trees = json::array();
    for (std::size_t i = 0; i < model.catalog.size(); ++i) {
        json edges = json::array();
        for (const auto& [a, b] : model.catalog[i].edges) edges.push_back({a, b});
        trees.push_back({{"mass", model.weights[i]}, {"edges", std::move(edges)}});
    }
    return {{"format", kModelFormat}, {"n", model.n}, {"trees", std::move(trees)}};
}

inline ModelPtr model_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != kModelFormat)
        fail(ErrorCode::ParseError, "expected a tempex-model-v1 document");
    const int n = j.at("n").get<int>();
    std::vector<Tree> trees;
    std::vector<double> masses;
    for (const auto& tj : j.at("trees")) {
        masses.push_back(tj.at("mass").get<double>());
        std::vector<Edge> edges;
        for (const auto& ej : tj.at("edges"))
            edges.push_back(make_edge(ej.at(0).get<int>(), ej.at(1).get<int>()));
        trees.push_back(validate_tree(n, edges));
    }
    return build_model(n, std::move(trees), masses);
}

inline ModelPtr load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return model_from_json(j);
}

/// Window dump: CSV with columns time,tree_index and a format header line.
inline std::string window_to_csv(const TemporalWindow& w) {
    std::ostringstream out;
    out << "# format: " << kWindowFormat << "\n";
    out << "time,tree_index\n";
    for (int t = w.t0; t <= w.t1; ++t) out << t << "," << w.snapshot_index(t) << "\n";
    return out.str();
}

inline json walk_to_json(const Walk& walk) {
    json moves = json::array();
    for (int i = 1; i < static_cast<int>(walk.positions.size()); ++i)
        moves.push_back({walk.start_time + i - 1, walk.positions[static_cast<std::size_t>(i)]});
    return {{"start", walk.empty() ? 0 : walk.start()}, {"moves", std::move(moves)}};
}

inline json schedule_to_json(const Schedule& s) {
    json j = walk_to_json(s.walk);
    j["format"] = kScheduleFormat;
    if (s.arrival) j["arrival"] = *s.arrival;
    else j["arrival"] = nullptr;
    json legs = json::array();
    for (const Leg& leg : s.legs) {
        json lj = {{"kind", leg.kind}, {"from", leg.from},     {"to", leg.to},
                   {"depart", leg.depart}, {"arrive", leg.arrive}};
        if (leg.extensions > 0) lj["extensions"] = leg.extensions;
        legs.push_back(std::move(lj));
    }
    j["legs"] = std::move(legs);
    return j;
}

inline json online_run_to_json(const OnlineRun& run) {
    json j = walk_to_json(run.walk);
    j["format"] = kScheduleFormat;
    j["policy"] = run.policy;
    if (run.dexp) j["dexp"] = *run.dexp;
    else j["dexp"] = nullptr;
    json events = json::array();
    for (const auto& e : run.events) events.push_back({{"name", e.name}, {"time", e.time}});
    j["events"] = std::move(events);
    return j;
}

inline json closeness_to_json(const ClosenessGraph& g) {
    json pairs = json::array();
    for (Vertex u = 1; u <= g.n; ++u) {
        for (Vertex w = u + 1; w <= g.n; ++w) {
            if (!g.measured[static_cast<std::size_t>(u)] && !g.measured[static_cast<std::size_t>(w)])
                continue;
            if (!g.close(u, w)) continue;
            pairs.push_back({{"u", u},
                             {"w", w},
                             {"frequency", format_fixed(g.pair_frequency(u, w))}});
        }
    }
    return {{"format", kClosenessFormat},
            {"n", g.n},
            {"t", g.t},
            {"p", g.p},
            {"trials", g.trials},
            {"seed", g.seed},
            {"sources", g.sources},
            {"close_pairs", std::move(pairs)}};
}

inline json ball_to_json(const Ball& b) {
    json freqs = json::array();
    for (Vertex v : b.members)
        freqs.push_back({{"vertex", v},
                         {"frequency", format_fixed(b.frequency[static_cast<std::size_t>(v)])}});
    return {{"format", kBallFormat},
            {"centre", b.centre},
            {"t", b.t},
            {"p", b.p},
            {"trials", b.trials},
            {"seed", b.seed},
            {"members", std::move(freqs)}};
}

/// Named model specs addressable from the CLI:
///   stars:n=..,k=..  ladder:n=..  bdeg:d=..,n=..  apex:n=..  stgraph:file=..
/// Anything else is treated as a path to a model JSON file.
inline ModelPtr parse_model_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) fail(ErrorCode::ParseError, "expected key=value in model spec");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto get_int = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) fail(ErrorCode::ParseError, "model spec is missing " + key);
        return std::stoi(it->second);
    };
    if (head == "stars") return star_catalog(get_int("n"), get_int("k"));
    if (head == "ladder") return ladder_model(get_int("n"));
    if (head == "bdeg") return bounded_degree_model(get_int("d"), get_int("n"));
    if (head == "apex") return apex_path_model(get_int("n"));
    if (head == "stgraph") {
        auto it = kv.find("file");
        if (it == kv.end()) fail(ErrorCode::ParseError, "stgraph spec needs file=...");
        std::ifstream in(it->second);
        if (!in) fail(ErrorCode::ParseError, "cannot open " + it->second);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
        }
        const int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& ej : j.at("edges"))
            edges.push_back(make_edge(ej.at(0).get<int>(), ej.at(1).get<int>()));
        return spanning_trees_uniform(n, edges);
    }
    return load_model_file(spec);
}

}  // namespace tempex
