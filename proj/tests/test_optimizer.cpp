// Copyright 2026 The heraldic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "heraldic/optimizer.hpp"

using namespace heraldic;

TEST_CASE("finite difference gradient on analytic objectives") {
    auto quad = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    Eigen::VectorXd xi(2);
    xi << 1.0, 2.0;
    Eigen::VectorXd g = finite_diff_gradient(quad, xi, 1e-4);
    CHECK(g(0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(g(1) == doctest::Approx(4.0).epsilon(1e-6));

    auto constant = [](const Eigen::VectorXd&) { return 3.0; };
    CHECK(finite_diff_gradient(constant, xi, 1e-4).norm() == 0.0);

    auto bad = [](const Eigen::VectorXd&) {
        return std::numeric_limits<double>::infinity();
    };
    CHECK_THROWS_AS(finite_diff_gradient(bad, xi, 1e-4), std::invalid_argument);
}

TEST_CASE("gradient falls back to one-sided near infeasible walls") {
    // Objective infinite for x0 > 1: central probe at 1 + h must not poison
    // the gradient.
    auto wall = [](const Eigen::VectorXd& x) {
        if (x(0) > 1.0) return std::numeric_limits<double>::infinity();
        return x.squaredNorm();
    };
    Eigen::VectorXd xi(1);
    xi << 1.0;
    Eigen::VectorXd g = finite_diff_gradient(wall, xi, 1e-4);
    CHECK(g(0) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("Richardson consistency on a circuit objective") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto target_one = TargetState{"one", {{{1, 0}, 1.0}}};
    CostWeights w;
    auto objective = [&](const Eigen::VectorXd& flat) {
        try {
            auto m = evaluate(spec, ParameterVector::unflatten(spec.n_core(), flat),
                              target_one, false);
            return cost(m.p, m.fidelity, flat, w.w1, w.w2, w.eps);
        } catch (const infeasible_error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    Eigen::VectorXd xi(ParameterVector::zeros(spec.n_core()).size());
    for (int i = 0; i < xi.size(); ++i) xi(i) = u(rng);

    const Eigen::VectorXd g1 = finite_diff_gradient(objective, xi, 1e-3);
    const Eigen::VectorXd g2 = finite_diff_gradient(objective, xi, 5e-4);
    // Central differences converge at O(h^2): halving the step shrinks the
    // truncation error fourfold, so the two estimates agree closely.
    CHECK((g1 - g2).norm() < 1e-4 * (1.0 + g2.norm()));
}

TEST_CASE("optimization on a single heralded photon source") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto target_one = TargetState{"one", {{{1, 0}, 1.0}}};
    OptimizerOptions opts;
    opts.max_iters = 60;
    opts.restarts = 3;
    opts.seed = 42;
    auto trace = optimize(spec, target_one, CostWeights{}, opts);

    CHECK(trace.best_restart >= 0);
    CHECK(trace.best_metrics.fidelity > 0.95);
    CHECK(trace.best_metrics.p > 0.01);

    // Accepted-cost monotonicity.
    for (std::size_t i = 1; i < trace.iterations.size(); ++i)
        CHECK(trace.iterations[i].cost < trace.iterations[i - 1].cost);

    // Determinism.
    auto trace2 = optimize(spec, target_one, CostWeights{}, opts);
    CHECK(trace2.best_cost == trace.best_cost);
    CHECK(trace2.best_restart == trace.best_restart);
    CHECK(trace2.iterations.size() == trace.iterations.size());
    CHECK((trace2.best.flatten() - trace.best.flatten()).norm() == 0.0);
}

TEST_CASE("regularization pulls the solution norm down") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto target_one = TargetState{"one", {{{1, 0}, 1.0}}};
    OptimizerOptions opts;
    opts.max_iters = 40;
    opts.restarts = 1;
    int hold = 0;
    const int seeds = 5;
    for (int s = 0; s < seeds; ++s) {
        opts.seed = 100 + s;
        CostWeights with;       // eps = 1e-4
        CostWeights without;
        without.eps = 0.0;
        auto a = optimize(spec, target_one, with, opts);
        auto b = optimize(spec, target_one, without, opts);
        if (a.best.flatten().norm() <= b.best.flatten().norm() + 1e-6) ++hold;
    }
    CHECK(hold * 2 > seeds);  // majority
}

TEST_CASE("robustness study") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto target_one = TargetState{"one", {{{1, 0}, 1.0}}};
    OptimizerOptions opts;
    opts.max_iters = 60;
    opts.restarts = 3;
    opts.seed = 9;
    auto trace = optimize(spec, target_one, CostWeights{}, opts);

    auto samples = robustness_study(spec, target_one, trace.best,
                                    {0.0, 0.001, 0.01}, 20, 77);
    REQUIRE(samples.size() == 60);
    double env_small = 0.0, env_large = 0.0;
    for (const auto& s : samples) {
        REQUIRE(s.feasible);
        if (s.delta == 0.0) {
            CHECK(s.param_change == 0.0);
            CHECK(s.dp_rel == 0.0);
            CHECK(s.df_rel == 0.0);
        } else if (s.delta == 0.001) {
            env_small = std::max(env_small, std::abs(s.dp_rel));
        } else {
            env_large = std::max(env_large, std::abs(s.dp_rel));
        }
    }
    // Larger perturbations move the metrics more.
    CHECK(env_large >= env_small);
}

TEST_CASE("option validation") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto target_one = TargetState{"one", {{{1, 0}, 1.0}}};
    OptimizerOptions opts;
    opts.max_iters = 0;
    CHECK_THROWS_AS(optimize(spec, target_one, CostWeights{}, opts),
                    std::invalid_argument);
    opts.max_iters = 10;
    opts.fd_step = 0.0;
    CHECK_THROWS_AS(optimize(spec, target_one, CostWeights{}, opts),
                    std::invalid_argument);
}
