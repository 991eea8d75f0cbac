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

#include "heraldic/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace heraldic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluation {
    double cost = kInf;
    HeraldMetrics metrics;
    bool feasible = false;
};

Evaluation evaluate_cost(const CircuitSpec& spec, const TargetState& target,
                         const CostWeights& w, bool postselect,
                         const Eigen::VectorXd& flat) {
    Evaluation ev;
    try {
        const auto xi = ParameterVector::unflatten(
            static_cast<int>(spec.n_core()), flat);
        ev.metrics = evaluate(spec, xi, target, postselect);
    } catch (const infeasible_error&) {
        return ev;
    }
    const double p = postselect ? *ev.metrics.p_effective : ev.metrics.p;
    const double f =
        postselect ? *ev.metrics.fidelity_effective : ev.metrics.fidelity;
    ev.cost = cost(p, f, flat, w.w1, w.w2, w.eps);
    ev.feasible = std::isfinite(ev.cost);
    return ev;
}

IterationRecord make_record(int iter, const Evaluation& ev) {
    IterationRecord rec;
    rec.iteration = iter;
    rec.cost = ev.cost;
    rec.p = ev.metrics.p;
    rec.fidelity = ev.metrics.fidelity;
    rec.p_effective = ev.metrics.p_effective;
    rec.fidelity_effective = ev.metrics.fidelity_effective;
    return rec;
}

} // namespace

Eigen::VectorXd
finite_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& objective,
                     const Eigen::VectorXd& xi, double fd_step) {
    if (fd_step <= 0.0)
        throw std::invalid_argument("finite_diff_gradient: fd_step must be positive");
    const double f0 = objective(xi);
    if (!std::isfinite(f0))
        throw std::invalid_argument("finite_diff_gradient: objective infinite at xi");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(xi.size());
    Eigen::VectorXd probe = xi;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
        probe(i) = xi(i) + fd_step;
        const double fp = objective(probe);
        probe(i) = xi(i) - fd_step;
        const double fm = objective(probe);
        probe(i) = xi(i);
        if (std::isfinite(fp) && std::isfinite(fm))
            g(i) = (fp - fm) / (2.0 * fd_step);
        else if (std::isfinite(fp))
            g(i) = (fp - f0) / fd_step;
        else if (std::isfinite(fm))
            g(i) = (f0 - fm) / fd_step;
        // both probes infeasible: leave the coordinate at zero
    }
    return g;
}

OptimizationTrace optimize(const CircuitSpec& spec, const TargetState& target,
                           const CostWeights& weights,
                           const OptimizerOptions& options,
                           bool postselect) {
    if (options.max_iters < 1)
        throw std::invalid_argument("optimize: max_iters must be >= 1");
    if (options.fd_step <= 0.0)
        throw std::invalid_argument("optimize: fd_step must be positive");
    if (options.restarts < 1)
        throw std::invalid_argument("optimize: restarts must be >= 1");

    const int dim = ParameterVector::zeros(spec.n_core()).size();
    const auto objective = [&](const Eigen::VectorXd& flat) {
        return evaluate_cost(spec, target, weights, postselect, flat).cost;
    };

    OptimizationTrace best;
    best.best_cost = kInf;
    bool any_feasible = false;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out_of_time = [&] {
        if (options.time_budget_s <= 0.0) return false;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count() > options.time_budget_s;
    };

    for (int restart = 0; restart < options.restarts; ++restart) {
        if (restart > 0 && out_of_time()) break;
        std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ull *
                                               static_cast<std::uint64_t>(restart + 1));
        std::uniform_real_distribution<double> u(-options.init_scale,
                                                 options.init_scale);
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = u(rng);

        Evaluation cur = evaluate_cost(spec, target, weights, postselect, x);
        if (!cur.feasible) continue;
        any_feasible = true;

        std::vector<IterationRecord> trace;
        trace.push_back(make_record(0, cur));
        double step = options.init_step;
        std::string termination = "max_iters";

        for (int iter = 1; iter <= options.max_iters; ++iter) {
            if (out_of_time()) {
                termination = "time_budget";
                break;
            }
            Eigen::VectorXd g = finite_diff_gradient(objective, x, options.fd_step);
            if (options.gradient_check_every > 0 &&
                iter % options.gradient_check_every == 0) {
                // Richardson consistency: halving the step must agree to O(h^2).
                const Eigen::VectorXd g2 =
                    finite_diff_gradient(objective, x, options.fd_step / 2.0);
                const double dev = (g - g2).norm();
                if (dev > 1e-2 * (1.0 + g2.norm()))
                    throw std::runtime_error(
                        "optimize: finite-difference gradient failed the "
                        "half-step consistency check");
            }
            const double gnorm = g.norm();
            if (gnorm == 0.0) {
                termination = "no_decrease";
                break;
            }

            bool accepted = false;
            while (step >= options.min_step) {
                const Eigen::VectorXd cand = x - (step / gnorm) * g;
                Evaluation ev = evaluate_cost(spec, target, weights, postselect, cand);
                if (ev.feasible && ev.cost < cur.cost) {
                    x = cand;
                    cur = ev;
                    trace.push_back(make_record(iter, cur));
                    step *= options.grow;
                    accepted = true;
                    break;
                }
                step *= options.backtrack;
            }
            if (!accepted) {
                termination = "no_decrease";
                break;
            }
        }

        if (cur.cost < best.best_cost) {
            best.iterations = std::move(trace);
            best.best = ParameterVector::unflatten(spec.n_core(), x);
            best.best_cost = cur.cost;
            best.best_metrics = cur.metrics;
            best.best_restart = restart;
            best.termination = termination;
        }
    }

    if (!any_feasible)
        throw infeasible_error("optimize: every restart initialization was infeasible");
    return best;
}

std::vector<RobustnessSample>
robustness_study(const CircuitSpec& spec, const TargetState& target,
                 const ParameterVector& xi_star,
                 const std::vector<double>& delta_levels, int trials,
                 std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("robustness_study: trials must be >= 1");
    const HeraldMetrics base = evaluate(spec, xi_star, target, false);
    if (base.p <= 0.0 || base.fidelity <= 0.0)
        throw infeasible_error("robustness_study: infeasible reference point");
    const Eigen::VectorXd flat = xi_star.flatten();
    const double base_norm = flat.norm();

    std::vector<RobustnessSample> samples;
    samples.reserve(delta_levels.size() * static_cast<std::size_t>(trials));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double delta : delta_levels) {
        for (int t = 0; t < trials; ++t) {
            Eigen::VectorXd pert = flat;
            for (Eigen::Index i = 0; i < pert.size(); ++i) {
                const double eps = delta * u(rng);
                // Relative perturbation, absolute for near-zero parameters.
                if (std::abs(flat(i)) > 1e-3)
                    pert(i) = flat(i) * (1.0 + eps);
                else
                    pert(i) = flat(i) + eps;
            }
            RobustnessSample s;
            s.delta = delta;
            s.param_change =
                base_norm > 0.0 ? (pert - flat).norm() / base_norm : (pert - flat).norm();
            try {
                const HeraldMetrics m = evaluate(
                    spec, ParameterVector::unflatten(spec.n_core(), pert), target,
                    false);
                s.dp_rel = (m.p - base.p) / base.p;
                s.df_rel = (m.fidelity - base.fidelity) / base.fidelity;
            } catch (const infeasible_error&) {
                s.feasible = false;
            }
            samples.push_back(s);
        }
    }
    return samples;
}

} // namespace heraldic
