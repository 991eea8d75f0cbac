/**
 * Copyright 2026 The heraldic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "heraldic/experiment.hpp"
#include "heraldic/validate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

namespace heraldic {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_keys(const json& j, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw config_error("config: '" + ctx + "' must be an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw config_error("config: unknown key '" + ctx + item.key() + "'");
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error(std::string("config: bad value for '") + key + "'");
    }
}

std::vector<int> parse_gadget(const json& j, const char* key, int n_core) {
    if (!j.contains(key)) return {};
    const json& v = j.at(key);
    std::vector<int> modes;
    if (v.is_number_integer()) {
        const int count = v.get<int>();
        if (count < 0) throw config_error(std::string("config: '") + key + "' < 0");
        for (int i = 0; i < count; ++i) modes.push_back(i % n_core);
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number_integer())
                throw config_error(std::string("config: '") + key +
                                   "' entries must be integers");
            modes.push_back(e.get<int>());
        }
    } else {
        throw config_error(std::string("config: '") + key +
                           "' must be a count or a mode list");
    }
    for (int m : modes)
        if (m < 0 || m >= n_core)
            throw config_error(std::string("config: '") + key +
                               "' mode index out of range");
    return modes;
}

std::string out_dir(const ExperimentConfig& config, const RunContext& ctx) {
    return ctx.out_dir.empty() ? config.output_dir : ctx.out_dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

json metrics_json(const HeraldMetrics& m) {
    json j;
    j["p"] = m.p;
    j["fidelity"] = m.fidelity;
    j["p_effective"] = m.p_effective ? json(*m.p_effective) : json();
    j["fidelity_effective"] =
        m.fidelity_effective ? json(*m.fidelity_effective) : json();
    return j;
}

std::string csv_num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct SweepRow {
    int n_add = 0, n_sub = 0, n_herald = 0;
    double p = kNan, fidelity = kNan, p_eff = kNan, f_eff = kNan;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool feasible = false;
};

} // namespace

ExperimentConfig parse_config(const json& j) {
    require_keys(j, "",
                 {"target", "n_herald", "additions", "subtractions", "weights",
                  "optimizer", "postselect", "sweep", "robustness", "output_dir"});
    ExperimentConfig c;
    c.target = get_or<std::string>(j, "target", c.target);
    if (c.target != "bell" && c.target != "ghz" && c.target != "w")
        throw config_error("config: target must be bell, ghz or w");
    c.n_herald = get_or<int>(j, "n_herald", c.n_herald);
    if (c.n_herald < 1) throw config_error("config: n_herald must be >= 1");

    const int n_qubits =
        static_cast<int>(target_by_name(c.target).components.front().pattern.size()) / 2;
    const int n_core = 2 * n_qubits + c.n_herald;
    c.additions = parse_gadget(j, "additions", n_core);
    c.subtractions = parse_gadget(j, "subtractions", n_core);

    if (j.contains("weights")) {
        const json& w = j.at("weights");
        require_keys(w, "weights.", {"w1", "w2", "eps"});
        c.weights.w1 = get_or<double>(w, "w1", c.weights.w1);
        c.weights.w2 = get_or<double>(w, "w2", c.weights.w2);
        c.weights.eps = get_or<double>(w, "eps", c.weights.eps);
    }
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        require_keys(o, "optimizer.",
                     {"max_iters", "fd_step", "restarts", "seed", "init_scale",
                      "init_step", "time_budget_s"});
        c.optimizer.max_iters = get_or<int>(o, "max_iters", c.optimizer.max_iters);
        c.optimizer.fd_step = get_or<double>(o, "fd_step", c.optimizer.fd_step);
        c.optimizer.restarts = get_or<int>(o, "restarts", c.optimizer.restarts);
        c.optimizer.seed = get_or<std::uint64_t>(o, "seed", c.optimizer.seed);
        c.optimizer.init_scale =
            get_or<double>(o, "init_scale", c.optimizer.init_scale);
        c.optimizer.init_step =
            get_or<double>(o, "init_step", c.optimizer.init_step);
        c.optimizer.time_budget_s =
            get_or<double>(o, "time_budget_s", c.optimizer.time_budget_s);
        if (c.optimizer.max_iters < 1)
            throw config_error("config: optimizer.max_iters must be >= 1");
        if (c.optimizer.fd_step <= 0.0)
            throw config_error("config: optimizer.fd_step must be > 0");
    }
    c.postselect = get_or<bool>(j, "postselect", c.postselect);
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        require_keys(s, "sweep.",
                     {"additions", "subtractions", "heralds", "cell_time_budget_s"});
        c.sweep.additions =
            get_or<std::vector<int>>(s, "additions", c.sweep.additions);
        c.sweep.subtractions =
            get_or<std::vector<int>>(s, "subtractions", c.sweep.subtractions);
        c.sweep.heralds = get_or<std::vector<int>>(s, "heralds", c.sweep.heralds);
        c.sweep.cell_time_budget_s =
            get_or<double>(s, "cell_time_budget_s", c.sweep.cell_time_budget_s);
        if (c.sweep.additions.empty() || c.sweep.subtractions.empty() ||
            c.sweep.heralds.empty())
            throw config_error("config: sweep ranges must be non-empty");
    }
    if (j.contains("robustness")) {
        const json& r = j.at("robustness");
        require_keys(r, "robustness.", {"levels", "trials", "optimum"});
        c.robustness.levels =
            get_or<std::vector<double>>(r, "levels", c.robustness.levels);
        c.robustness.trials = get_or<int>(r, "trials", c.robustness.trials);
        c.robustness.optimum =
            get_or<std::string>(r, "optimum", c.robustness.optimum);
        if (c.robustness.trials < 1)
            throw config_error("config: robustness.trials must be >= 1");
    }
    c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("config: parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

json resolved_config(const ExperimentConfig& c) {
    json j;
    j["target"] = c.target;
    j["n_herald"] = c.n_herald;
    j["additions"] = c.additions;
    j["subtractions"] = c.subtractions;
    j["weights"] = {{"w1", c.weights.w1}, {"w2", c.weights.w2}, {"eps", c.weights.eps}};
    j["optimizer"] = {{"max_iters", c.optimizer.max_iters},
                      {"fd_step", c.optimizer.fd_step},
                      {"restarts", c.optimizer.restarts},
                      {"seed", c.optimizer.seed},
                      {"init_scale", c.optimizer.init_scale},
                      {"init_step", c.optimizer.init_step},
                      {"time_budget_s", c.optimizer.time_budget_s}};
    j["postselect"] = c.postselect;
    j["sweep"] = {{"additions", c.sweep.additions},
                  {"subtractions", c.sweep.subtractions},
                  {"heralds", c.sweep.heralds},
                  {"cell_time_budget_s", c.sweep.cell_time_budget_s}};
    j["robustness"] = {{"levels", c.robustness.levels},
                       {"trials", c.robustness.trials},
                       {"optimum", c.robustness.optimum}};
    j["output_dir"] = c.output_dir;
    return j;
}

CircuitSpec spec_from_config(const ExperimentConfig& c) {
    const int n_qubits =
        static_cast<int>(target_by_name(c.target).components.front().pattern.size()) / 2;
    CircuitSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_herald = c.n_herald;
    spec.additions = c.additions;
    spec.subtractions = c.subtractions;
    return spec;
}

int run_optimize(const ExperimentConfig& config, const RunContext& ctx) {
    const fs::path dir = out_dir(config, ctx);
    fs::create_directories(dir);
    const CircuitSpec spec = spec_from_config(config);
    const TargetState target = target_by_name(config.target);

    const auto t0 = std::chrono::steady_clock::now();
    OptimizationTrace trace;
    try {
        trace = optimize(spec, target, config.weights, config.optimizer,
                         config.postselect);
    } catch (const infeasible_error& e) {
        json diag = {{"error", "infeasible"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return kInfeasible;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string jsonl;
    for (const auto& rec : trace.iterations) {
        json line = {{"iteration", rec.iteration},
                     {"cost", rec.cost},
                     {"p", rec.p},
                     {"fidelity", rec.fidelity}};
        line["p_effective"] = rec.p_effective ? json(*rec.p_effective) : json();
        line["fidelity_effective"] =
            rec.fidelity_effective ? json(*rec.fidelity_effective) : json();
        jsonl += line.dump() + "\n";
    }
    write_text(dir / "trace.jsonl", jsonl);

    json summary;
    summary["target"] = config.target;
    summary["seed"] = config.optimizer.seed;
    summary["postselect"] = config.postselect;
    summary["best_cost"] = trace.best_cost;
    summary["best_restart"] = trace.best_restart;
    summary["termination"] = trace.termination;
    summary["iterations"] = trace.iterations.back().iteration;
    summary["metrics"] = metrics_json(trace.best_metrics);
    const Eigen::VectorXd flat = trace.best.flatten();
    summary["best_xi"] = std::vector<double>(flat.data(), flat.data() + flat.size());
    summary["wall_time_s"] = wall;
    summary["config"] = resolved_config(config);
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    write_text(dir / "resolved_config.json", resolved_config(config).dump(2) + "\n");

    if (!ctx.quiet) {
        std::cout << "best cost " << trace.best_cost << " p "
                  << trace.best_metrics.p << " fidelity "
                  << trace.best_metrics.fidelity << " (" << wall << " s)\n";
    }
    return kOk;
}

int run_sweep(const ExperimentConfig& config, const RunContext& ctx) {
    const fs::path dir = out_dir(config, ctx);
    fs::create_directories(dir);
    const TargetState target = target_by_name(config.target);
    const int n_qubits =
        static_cast<int>(target.components.front().pattern.size()) / 2;

    std::vector<SweepRow> rows;
    for (int a : config.sweep.additions)
        for (int s : config.sweep.subtractions)
            for (int h : config.sweep.heralds) {
                SweepRow row;
                row.n_add = a;
                row.n_sub = s;
                row.n_herald = h;
                rows.push_back(row);
            }
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].seed = config.optimizer.seed + 7919ull * i;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            SweepRow& row = rows[i];
            CircuitSpec spec =
                make_circuit_spec(n_qubits, row.n_herald, row.n_add, row.n_sub);
            OptimizerOptions opts = config.optimizer;
            opts.seed = row.seed;
            if (config.sweep.cell_time_budget_s > 0.0)
                opts.time_budget_s = config.sweep.cell_time_budget_s;
            try {
                const OptimizationTrace trace =
                    optimize(spec, target, config.weights, opts, config.postselect);
                row.p = trace.best_metrics.p;
                row.fidelity = trace.best_metrics.fidelity;
                row.iterations = trace.iterations.back().iteration;
                row.feasible = true;
                try {
                    const HeraldMetrics ps = evaluate(spec, trace.best, target, true);
                    row.p_eff = *ps.p_effective;
                    row.f_eff = *ps.fidelity_effective;
                } catch (const infeasible_error&) {
                    // leave the post-selected columns as nan
                }
            } catch (const infeasible_error&) {
                row.feasible = false;
            }
            if (!ctx.quiet) {
                static std::mutex mu;
                std::lock_guard<std::mutex> lock(mu);
                std::cout << "cell +" << row.n_add << "/-" << row.n_sub << " h"
                          << row.n_herald << (row.feasible ? " done" : " infeasible")
                          << "\n";
            }
        }
    };
    const int n_workers =
        std::max(1, std::min<int>(ctx.workers, static_cast<int>(rows.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string csv =
        "n_add,n_sub,n_herald,p,fidelity,p_eff,f_eff,iterations,seed,feasible\n";
    for (const auto& row : rows) {
        csv += std::to_string(row.n_add) + "," + std::to_string(row.n_sub) + "," +
               std::to_string(row.n_herald) + "," + csv_num(row.p) + "," +
               csv_num(row.fidelity) + "," + csv_num(row.p_eff) + "," +
               csv_num(row.f_eff) + "," + std::to_string(row.iterations) + "," +
               std::to_string(row.seed) + "," + (row.feasible ? "1" : "0") + "\n";
    }
    write_text(dir / "sweep.csv", csv);
    write_text(dir / "resolved_config.json", resolved_config(config).dump(2) + "\n");
    return kOk;
}

int run_robustness(const ExperimentConfig& config, const RunContext& ctx) {
    if (config.robustness.optimum.empty())
        throw config_error("config: robustness.optimum is required");
    std::ifstream in(config.robustness.optimum);
    if (!in)
        throw config_error("config: cannot open robustness.optimum file " +
                           config.robustness.optimum);
    json summary;
    try {
        in >> summary;
    } catch (const json::exception& e) {
        throw config_error("config: bad optimum summary: " + std::string(e.what()));
    }
    if (!summary.contains("best_xi"))
        throw config_error("config: optimum summary lacks best_xi");
    const std::vector<double> flat_v = summary.at("best_xi").get<std::vector<double>>();

    const CircuitSpec spec = spec_from_config(config);
    const TargetState target = target_by_name(config.target);
    const int dim = ParameterVector::zeros(spec.n_core()).size();
    if (static_cast<int>(flat_v.size()) != dim)
        throw config_error("config: optimum best_xi length does not match the spec");
    Eigen::VectorXd flat =
        Eigen::Map<const Eigen::VectorXd>(flat_v.data(), flat_v.size());
    const ParameterVector xi = ParameterVector::unflatten(spec.n_core(), flat);

    const fs::path dir = out_dir(config, ctx);
    fs::create_directories(dir);

    std::vector<RobustnessSample> samples;
    try {
        samples = robustness_study(spec, target, xi, config.robustness.levels,
                                   config.robustness.trials, config.optimizer.seed);
    } catch (const infeasible_error& e) {
        json diag = {{"error", "infeasible"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return kInfeasible;
    }

    std::string csv = "delta,trial,param_change,dp_rel,df_rel,feasible\n";
    int trial = 0;
    double prev_delta = samples.empty() ? 0.0 : samples.front().delta;
    for (const auto& s : samples) {
        if (s.delta != prev_delta) {
            trial = 0;
            prev_delta = s.delta;
        }
        csv += csv_num(s.delta) + "," + std::to_string(trial++) + "," +
               csv_num(s.param_change) + "," + csv_num(s.dp_rel) + "," +
               csv_num(s.df_rel) + "," + (s.feasible ? "1" : "0") + "\n";
    }
    write_text(dir / "robustness.csv", csv);
    write_text(dir / "resolved_config.json", resolved_config(config).dump(2) + "\n");
    return kOk;
}

int run_validate(const RunContext& ctx) {
    const std::vector<ValidationCheck> checks = run_validation_suite();
    bool all_pass = true;
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        if (!ctx.quiet)
            std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                      << "  max error " << c.max_error << " (tolerance "
                      << c.tolerance << ")\n";
    }
    if (!ctx.out_dir.empty()) {
        fs::create_directories(ctx.out_dir);
        json j = json::array();
        for (const auto& c : checks)
            j.push_back({{"name", c.name},
                         {"pass", c.pass},
                         {"max_error", c.max_error},
                         {"tolerance", c.tolerance}});
        write_text(fs::path(ctx.out_dir) / "validate.json", j.dump(2) + "\n");
    }
    return all_pass ? kOk : kValidationFailure;
}

} // namespace heraldic
