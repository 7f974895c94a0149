// tempex command line: sampling, exploration, oracles, predictions,
// experiments, and the acceptance suite over random spanning tree models.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tempex/tempex.hpp"
#include "tempex/verify.hpp"

namespace {

using namespace tempex;

int cmd_model(const std::string& action, const std::string& spec) {
    const ModelPtr model = parse_model_spec(spec);
    if (action == "validate") {
        std::cout << "ok: " << model->catalog.size() << " trees on [" << model->n << "]\n";
        return 0;
    }
    const auto edges = union_edges(*model);
    json info = {{"n", model->n},
                 {"trees", model->catalog.size()},
                 {"union_edges", edges.size()}};
    double min_p = 1.0, max_p = 0.0;
    for (const Edge& e : edges) {
        const double p = edge_probability(*model, e);
        min_p = std::min(min_p, p);
        max_p = std::max(max_p, p);
    }
    info["min_edge_probability"] = min_p;
    info["max_edge_probability"] = max_p;
    std::cout << info.dump(2) << "\n";
    return 0;
}

int cmd_sample(const std::string& spec, std::uint64_t seed, int t0, int t1,
               const std::string& out) {
    const auto w = materialize(parse_model_spec(spec), seed, t0, t1);
    const std::string csv = window_to_csv(w);
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        if (!f) fail(ErrorCode::ParseError, "cannot write " + out);
        f << csv;
        std::cout << "wrote " << out << " (" << w.length() << " snapshots)\n";
    }
    return 0;
}

int cmd_explore(const std::string& spec, const std::string& strategy, std::uint64_t seed,
                Vertex start, int max_time, const std::string& out) {
    const ModelPtr model = parse_model_spec(spec);
    const int budget = max_time > 0 ? max_time : 400 * model->n * model->n + 1000;
    json j;
    if (strategy == "greedy") {
        j = schedule_to_json(greedy_schedule(model, seed, start, budget));
    } else if (strategy == "linear") {
        const auto plan = build_backbone_plan(model);
        j = schedule_to_json(linear_schedule(model, seed, plan, start, budget));
    } else if (strategy == "meta") {
        const int t = static_cast<int>(700.0 * std::sqrt(static_cast<double>(model->n)));
        const auto g = estimate_closeness(model, t, 1.0 / 9.0, 64, derive_seed(seed, 0xC105Eull), {});
        const auto meta = build_meta_graph(*model, g);
        j = schedule_to_json(meta_graph_schedule(model, seed, meta, start, budget));
    } else if (strategy == "star-decomposition") {
        const auto run = star_exploration_schedule(model, seed, start, budget);
        j = schedule_to_json(run.schedule);
        j["coupon_time"] = run.coupon_time;
        j["t_ell"] = run.leaf_phase;
    } else if (strategy.rfind("online:", 0) == 0) {
        const std::string name = strategy.substr(7);
        std::unique_ptr<OnlinePolicy> policy;
        if (name == "stand-still") policy = stand_still_online();
        else if (name == "mst-euler") policy = mst_euler_online();
        else if (name == "centre-chase") policy = centre_chase_online();
        else if (name == "rabbit-chase") policy = rabbit_chase_online(model->n / 2);
        else fail(ErrorCode::BadParams, "unknown online policy: " + name);
        j = online_run_to_json(run_online(model, seed, *policy, start, budget));
    } else {
        fail(ErrorCode::BadParams, "unknown strategy: " + strategy);
    }
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        f << j.dump(2) << "\n";
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& spec, std::uint64_t seed, int t0, int t1,
               const std::string& mode, std::vector<int> targets) {
    const ModelPtr model = parse_model_spec(spec);
    const auto w = materialize(model, seed, t0, t1);
    if (targets.empty())
        for (Vertex v = 1; v <= model->n; ++v) targets.push_back(v);
    const OracleMode m = mode == "worst" ? OracleMode::WorstStart : OracleMode::BestStart;
    const auto result = exact_visit_time(w, targets, m);
    json j = {{"mode", mode}, {"targets", result.targets}};
    if (result.value) j["value"] = *result.value;
    else j["value"] = "infeasible within window";
    if (result.arg_start)
        j[m == OracleMode::BestStart ? "argmin_start" : "argmax_start"] = *result.arg_start;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_predict(const std::string& quantity, int k, int t, double theta, int n, int d, double c) {
    if (quantity == "tau1-bounds") {
        const auto b = predict_tau1_bounds(k);
        std::cout << "[" << format_fixed(b.lo, 3) << ", " << format_fixed(b.hi, 3) << "]\n";
    } else if (quantity == "birthday-survival") {
        std::cout << format_fixed(predict_birthday_survival(k, t), 6) << "\n";
    } else if (quantity == "coupon-mean") {
        std::cout << format_fixed(predict_coupon_mean(k, theta), 6) << "\n";
    } else if (quantity == "star-exploration") {
        const auto p = predict_star_exploration(n, k, c);
        json j = {{"centre_lower", p.centre_lower}, {"centre_upper", p.centre_upper}};
        if (p.weak_t) j["weak_T"] = *p.weak_t;
        if (p.f_minus) j["f_minus"] = *p.f_minus;
        if (p.f_plus) j["f_plus"] = *p.f_plus;
        std::cout << j.dump(2) << "\n";
    } else if (quantity == "degree-lower") {
        std::cout << format_fixed(predict_degree_lower(d, n), 6) << "\n";
    } else if (quantity == "online-star-lower") {
        std::cout << format_fixed(predict_online_star_lower(n), 6) << "\n";
    } else {
        fail(ErrorCode::BadParams, "unknown quantity: " + quantity);
    }
    return 0;
}

int cmd_experiment(const std::string& spec_path, const std::string& out_prefix) {
    std::ifstream in(spec_path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + spec_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    const auto spec = ExperimentSpec::from_json(j);
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = run_experiment(spec);
    const auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count() /
                      1000.0;
    const std::string prefix = out_prefix.empty() ? "experiment" : out_prefix;
    {
        std::ofstream rows(prefix + "-rows.csv");
        rows << report.to_csv();
    }
    {
        std::ofstream summary(prefix + "-summary.json");
        summary << report.summary_json().dump(2) << "\n";
    }
    std::cout << "wrote " << prefix << "-rows.csv and " << prefix << "-summary.json ("
              << report.spec.trials << " trials, " << report.failures << " failures, "
              << format_fixed(secs, 1) << "s)\n";
    return 0;
}

int cmd_verify(const std::string& suite, bool quick) {
    bool known = suite == "all";
    for (const auto& c : acceptance_criteria())
        known = known || suite == c.suite || suite == c.id;
    if (!known) {
        std::cerr << "usage error: unknown suite '" << suite << "'\n";
        return 2;
    }
    const auto results = verify_suite(suite, quick);
    int failures = 0;
    for (const auto& r : results) {
        std::cout << format_verify_line(r) << "\n";
        if (!r.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-spanning-tree temporal graph exploration toolkit"};
    app.require_subcommand(1);

    std::string spec, action, strategy = "greedy", mode = "best", out, quantity, spec_path;
    std::string suite = "all";
    std::uint64_t seed = 1;
    int t0 = 1, t1 = 100, start = 1, max_time = 0, k = 2, t = 1, n = 4, d = 5;
    double theta = 0.0, c = 2.0;
    std::vector<int> targets;
    bool quick = false;

    auto* model_cmd = app.add_subcommand("model", "validate or describe a model");
    model_cmd->add_option("action", action, "validate | info")->required();
    model_cmd->add_option("spec", spec, "model spec or JSON file")->required();

    auto* sample_cmd = app.add_subcommand("sample", "materialize a window and dump it as CSV");
    sample_cmd->add_option("spec", spec)->required();
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--t0", t0);
    sample_cmd->add_option("--t1", t1);
    sample_cmd->add_option("--out", out);

    auto* explore_cmd = app.add_subcommand("explore", "run an exploration strategy");
    explore_cmd->add_option("spec", spec)->required();
    explore_cmd->add_option("--strategy", strategy,
                            "meta | linear | greedy | star-decomposition | online:<policy>");
    explore_cmd->add_option("--seed", seed);
    explore_cmd->add_option("--start", start);
    explore_cmd->add_option("--max-time", max_time);
    explore_cmd->add_option("--out", out);

    auto* oracle_cmd = app.add_subcommand("oracle", "exact exploration time of a seeded window");
    oracle_cmd->add_option("spec", spec)->required();
    oracle_cmd->add_option("--seed", seed);
    oracle_cmd->add_option("--t0", t0);
    oracle_cmd->add_option("--t1", t1);
    oracle_cmd->add_option("--mode", mode, "best | worst");
    oracle_cmd->add_option("--targets", targets);

    auto* predict_cmd = app.add_subcommand("predict", "closed-form predictions");
    predict_cmd
        ->add_option("quantity", quantity,
                     "tau1-bounds | birthday-survival | coupon-mean | star-exploration | "
                     "degree-lower | online-star-lower")
        ->required();
    predict_cmd->add_option("--k", k);
    predict_cmd->add_option("--t", t);
    predict_cmd->add_option("--theta", theta);
    predict_cmd->add_option("--n", n);
    predict_cmd->add_option("--d", d);
    predict_cmd->add_option("--C", c);

    auto* experiment_cmd = app.add_subcommand("experiment", "run a batch experiment spec");
    experiment_cmd->add_option("spec_file", spec_path)->required();
    experiment_cmd->add_option("--out-prefix", out);

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    verify_cmd->add_option("--suite", suite,
                           "all | oracle | walks | dfs | birthday | stars | ladder | linear | "
                           "closeness | coupling | repro | A1..A13");
    verify_cmd->add_flag("--quick", quick, "10x fewer trials; results are advisory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (model_cmd->parsed()) {
            if (action != "validate" && action != "info") {
                std::cerr << "usage error: model action must be validate or info\n";
                return 2;
            }
            return cmd_model(action, spec);
        }
        if (sample_cmd->parsed()) return cmd_sample(spec, seed, t0, t1, out);
        if (explore_cmd->parsed()) return cmd_explore(spec, strategy, seed, start, max_time, out);
        if (oracle_cmd->parsed()) {
            if (mode != "best" && mode != "worst") {
                std::cerr << "usage error: mode must be best or worst\n";
                return 2;
            }
            return cmd_oracle(spec, seed, t0, t1, mode, targets);
        }
        if (predict_cmd->parsed()) return cmd_predict(quantity, k, t, theta, n, d, c);
        if (experiment_cmd->parsed()) return cmd_experiment(spec_path, out);
        if (verify_cmd->parsed()) return cmd_verify(suite, quick);
    } catch (const TempexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
