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

#ifndef HERALDIC_OPTIMIZER_HPP
#define HERALDIC_OPTIMIZER_HPP

#include "heraldic/herald.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace heraldic {

struct CostWeights {
    double w1 = 10.0;
    double w2 = 1.0;
    double eps = 1e-4;
};

struct OptimizerOptions {
    int max_iters = 300;
    double fd_step = 1e-4;
    int restarts = 20;
    std::uint64_t seed = 0;
    double init_scale = 0.5;
    double init_step = 0.05;    // initial line-search step length
    double backtrack = 0.5;     // shrink factor on rejected steps
    double grow = 1.3;          // growth factor on accepted steps
    double min_step = 1e-12;    // line search gives up below this
    int gradient_check_every = 50;  // Richardson consistency cadence; 0 disables
    double time_budget_s = 0.0;     // wall-clock budget; 0 disables
};

struct IterationRecord {
    int iteration = 0;
    double cost = 0.0;
    double p = 0.0;
    double fidelity = 0.0;
    std::optional<double> p_effective;
    std::optional<double> fidelity_effective;
};

struct OptimizationTrace {
    std::vector<IterationRecord> iterations;  // accepted iterates, best restart
    ParameterVector best;
    double best_cost = 0.0;
    HeraldMetrics best_metrics;
    int best_restart = -1;
    std::string termination;  // "max_iters" or "no_decrease"
};

struct RobustnessSample {
    double delta = 0.0;        // perturbation level
    double param_change = 0.0; // |xi' - xi| / |xi|
    double dp_rel = 0.0;
    double df_rel = 0.0;
    bool feasible = true;
};

/// Central finite differences; probe points where the objective is infinite
/// fall back to one-sided differences. Throws if the objective is infinite
/// at xi itself.
Eigen::VectorXd
finite_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& objective,
                     const Eigen::VectorXd& xi, double fd_step);

/// Multi-restart gradient descent with backtracking line search; only
/// cost-decreasing steps are accepted. Deterministic for a fixed seed.
/// With `postselect` the cost is evaluated on the post-selected metrics.
OptimizationTrace optimize(const CircuitSpec& spec, const TargetState& target,
                           const CostWeights& weights,
                           const OptimizerOptions& options,
                           bool postselect = false);

/// Perturbs every parameter by an independent uniform relative amount in
/// [-delta, +delta] (absolute below magnitude 1e-3) and re-evaluates the
/// metrics; `trials` samples per level.
std::vector<RobustnessSample>
robustness_study(const CircuitSpec& spec, const TargetState& target,
                 const ParameterVector& xi_star,
                 const std::vector<double>& delta_levels, int trials,
                 std::uint64_t seed);

} // namespace heraldic

#endif
