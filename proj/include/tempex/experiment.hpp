#pragma once

#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "tempex/greedy.hpp"
#include "tempex/io.hpp"
#include "tempex/meta.hpp"
#include "tempex/stars.hpp"
#include "tempex/stats.hpp"

namespace tempex {

inline constexpr const char* kExperimentFormat = "tempex-experiment-v1";
inline constexpr const char* kReportFormat = "tempex-report-v1";

struct ExperimentSpec {
    std::string model_spec;
    std::string strategy;
    json params = json::object();
    int trials = 1;
    std::uint64_t seed = 1;
    std::vector<std::string> measure;  // empty: all measurements the strategy emits

    static ExperimentSpec from_json(const json& j) {
        if (j.value("format", kExperimentFormat) != kExperimentFormat)
            fail(ErrorCode::ParseError, "expected a tempex-experiment-v1 document");
        ExperimentSpec s;
        s.model_spec = j.at("model").get<std::string>();
        s.strategy = j.at("strategy").get<std::string>();
        s.params = j.value("params", json::object());
        s.trials = j.value("trials", 1);
        s.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("measure")) s.measure = j.at("measure").get<std::vector<std::string>>();
        if (s.trials < 1) fail(ErrorCode::BadParams, "trials must be >= 1");
        return s;
    }

    json to_json() const {
        return {{"format", kExperimentFormat}, {"model", model_spec}, {"strategy", strategy},
                {"params", params},            {"trials", trials},    {"seed", seed},
                {"measure", measure}};
    }
};

struct TrialRow {
    int trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::vector<std::pair<std::string, double>> values;  // insertion-ordered measurements
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<std::string> columns;
    std::vector<TrialRow> rows;  // ordered by trial index
    int failures = 0;

    std::string to_csv() const {
        std::ostringstream out;
        out << "trial,seed,ok";
        for (const auto& c : columns) out << "," << c;
        out << "\n";
        for (const auto& row : rows) {
            out << row.trial << "," << row.seed << "," << (row.ok ? 1 : 0);
            for (const auto& c : columns) {
                out << ",";
                for (const auto& [name, value] : row.values)
                    if (name == c) {
                        out << format_fixed(value);
                        break;
                    }
            }
            out << "\n";
        }
        return out.str();
    }

    /// Summary JSON; excludes failed rows and reports the failure count.
    /// Deliberately carries no volatile fields (timings), so a rerun with the
    /// same spec is byte-identical.
    json summary_json() const {
        json per_measure = json::object();
        for (const auto& c : columns) {
            std::vector<double> values;
            for (const auto& row : rows) {
                if (!row.ok) continue;
                for (const auto& [name, value] : row.values)
                    if (name == c) {
                        values.push_back(value);
                        break;
                    }
            }
            if (values.empty()) continue;
            const Summary s = summarize(std::move(values));
            per_measure[c] = {{"count", s.count},
                              {"mean", format_fixed(s.mean)},
                              {"sd", format_fixed(s.sd)},
                              {"min", format_fixed(s.min)},
                              {"max", format_fixed(s.max)},
                              {"q05", format_fixed(s.q05)},
                              {"q50", format_fixed(s.q50)},
                              {"q95", format_fixed(s.q95)},
                              {"ci95", {format_fixed(s.ci_lo), format_fixed(s.ci_hi)}}};
        }
        return {{"format", kReportFormat},
                {"spec", spec.to_json()},
                {"failures", failures},
                {"summary", std::move(per_measure)}};
    }
};

namespace detail {

/// Deterministic trial-level parallelism: results land in a preallocated
/// vector by trial index; worker count never affects the report.
template <typename Fn>
void parallel_trials(int trials, Fn&& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(trials));
    if (workers <= 1) {
        for (int i = 0; i < trials; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= trials) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// One trial of a named strategy; returns insertion-ordered measurements.
inline std::vector<std::pair<std::string, double>> run_strategy_trial(
    const ModelPtr& model, const std::string& strategy, const json& params, std::uint64_t seed) {
    const int n = model->n;
    const int max_time = params.value("max_time", 400 * n * n + 1000);
    const Vertex start = params.value("start", 1);
    std::vector<std::pair<std::string, double>> out;

    auto emit_schedule = [&](const Schedule& s, std::initializer_list<std::pair<std::string, double>> extra) {
        out.emplace_back("arrival", static_cast<double>(s.arrival.value()));
        out.emplace_back("legs", static_cast<double>(s.legs.size()));
        for (const auto& kv : extra) out.push_back(kv);
    };

    if (strategy == "greedy") {
        emit_schedule(greedy_schedule(model, seed, start, max_time), {});
    } else if (strategy == "linear") {
        const BackbonePlan plan = build_backbone_plan(model);
        const Schedule s = linear_schedule(model, seed, plan, start, max_time);
        double ext = 0;
        for (const Leg& leg : s.legs) ext += leg.extensions;
        emit_schedule(s, {{"extensions", ext}});
    } else if (strategy == "meta") {
        const int t = params.value("t", static_cast<int>(700.0 * std::sqrt(static_cast<double>(n))));
        const double p = params.value("p", 1.0 / 9.0);
        const int ctrials = params.value("closeness_trials", 64);
        const ClosenessGraph closeness =
            estimate_closeness(model, t, p, ctrials, derive_seed(seed, 0xC105Eull), {});
        const MetaGraph meta = build_meta_graph(*model, closeness);
        emit_schedule(meta_graph_schedule(model, seed, meta, start, max_time),
                      {{"components", static_cast<double>(meta.components.size())}});
    } else if (strategy == "star-decomposition") {
        const StarRun run = star_exploration_schedule(model, seed, start, max_time);
        emit_schedule(run.schedule, {{"coupon_time", static_cast<double>(run.coupon_time)},
                                     {"t_ell", static_cast<double>(run.leaf_phase)},
                                     {"catches", static_cast<double>(run.centre_catches)},
                                     {"intervals", static_cast<double>(run.intervals)}});
    } else if (strategy.rfind("online:", 0) == 0) {
        const std::string policy_name = strategy.substr(7);
        std::unique_ptr<OnlinePolicy> policy;
        if (policy_name == "stand-still") policy = stand_still_online();
        else if (policy_name == "mst-euler") policy = mst_euler_online();
        else if (policy_name == "centre-chase") policy = centre_chase_online();
        else if (policy_name == "rabbit-chase") policy = rabbit_chase_online(params.value("k", n / 2));
        else fail(ErrorCode::BadParams, "unknown online policy: " + policy_name);
        const int horizon = params.value("horizon", max_time);
        const OnlineRun run = run_online(model, seed, *policy, start, horizon);
        out.emplace_back("completed", run.dexp ? 1.0 : 0.0);
        out.emplace_back("dexp", run.dexp ? static_cast<double>(*run.dexp)
                                          : static_cast<double>(horizon + 1));
        double catches = 0, catch_time = 0;
        for (const auto& e : run.events) {
            if (e.name == "centre-catch") ++catches;
            if (e.name == "rabbit-catch") catch_time = e.time;
        }
        out.emplace_back("catches", catches);
        if (policy_name == "rabbit-chase") out.emplace_back("catch_time", catch_time);
    } else {
        fail(ErrorCode::BadParams, "unknown strategy: " + strategy);
    }
    return out;
}

/// Runs `trials` seeded trials in parallel and assembles the deterministic
/// report (rows merged by trial index).
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
    ExperimentReport report;
    report.spec = spec;
    const ModelPtr model = parse_model_spec(spec.model_spec);
    report.rows.resize(static_cast<std::size_t>(spec.trials));
    detail::parallel_trials(spec.trials, [&](int i) {
        TrialRow& row = report.rows[static_cast<std::size_t>(i)];
        row.trial = i;
        row.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
        try {
            row.values = run_strategy_trial(model, spec.strategy, spec.params, row.seed);
            row.ok = true;
        } catch (const TempexError& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    for (const auto& row : report.rows)
        if (!row.ok) ++report.failures;
    // column order: measurement order of the first successful row, filtered
    // by the requested measure list
    for (const auto& row : report.rows) {
        if (!row.ok) continue;
        for (const auto& [name, value] : row.values) {
            if (!spec.measure.empty() &&
                std::find(spec.measure.begin(), spec.measure.end(), name) == spec.measure.end())
                continue;
            if (std::find(report.columns.begin(), report.columns.end(), name) == report.columns.end())
                report.columns.push_back(name);
        }
        break;
    }
    return report;
}

}  // namespace tempex
