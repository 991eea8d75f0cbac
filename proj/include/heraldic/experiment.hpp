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

#ifndef HERALDIC_EXPERIMENT_HPP
#define HERALDIC_EXPERIMENT_HPP

#include "heraldic/optimizer.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace heraldic {

/// Schema violation or missing referenced input; maps to exit code 2.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kInfeasible = 3,
    kValidationFailure = 4,
};

struct SweepConfig {
    std::vector<int> additions = {0, 1, 2, 3, 4};
    std::vector<int> subtractions = {0, 1, 2};
    std::vector<int> heralds = {1, 2, 3};
    double cell_time_budget_s = 0.0;  // 0 disables
};

struct RobustnessConfig {
    std::vector<double> levels = {0.001, 0.005, 0.01};
    int trials = 200;
    std::string optimum;  // path to a prior optimize summary.json
};

struct ExperimentConfig {
    std::string target = "bell";
    int n_herald = 2;
    std::vector<int> additions;     // core source mode per added photon
    std::vector<int> subtractions;  // core source mode per subtracted photon
    CostWeights weights;
    OptimizerOptions optimizer;
    bool postselect = false;
    SweepConfig sweep;
    RobustnessConfig robustness;
    std::string output_dir = "out";
};

/// Strict parse: unknown keys anywhere in the document are rejected with a
/// diagnostic naming the key.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

nlohmann::json resolved_config(const ExperimentConfig& config);
CircuitSpec spec_from_config(const ExperimentConfig& config);

struct RunContext {
    std::string out_dir;  // overrides config.output_dir when non-empty
    int workers = 1;
    bool quiet = false;
};

/// Writes trace.jsonl, summary.json and resolved_config.json.
int run_optimize(const ExperimentConfig& config, const RunContext& ctx);

/// Writes sweep.csv (complete grid, infeasible cells flagged) and
/// resolved_config.json. Cells run concurrently up to ctx.workers.
int run_sweep(const ExperimentConfig& config, const RunContext& ctx);

/// Writes robustness.csv around the optimum referenced by the config.
int run_robustness(const ExperimentConfig& config, const RunContext& ctx);

/// Runs the oracle suite; prints one line per check.
int run_validate(const RunContext& ctx);

} // namespace heraldic

#endif
