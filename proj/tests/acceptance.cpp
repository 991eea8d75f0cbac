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

// Acceptance harness: one line per criterion, nonzero exit if any fail.
// The numerical-core criteria are hard oracles; the optimization criteria
// are stochastic budgeted targets evaluated at fixed seeds.

#include "heraldic/circuit.hpp"
#include "heraldic/fock.hpp"
#include "heraldic/hafnian.hpp"
#include "heraldic/herald.hpp"
#include "heraldic/optimizer.hpp"
#include "heraldic/symplectic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace heraldic;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

Eigen::MatrixXcd random_symmetric(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            m(i, j) = std::complex<double>(u(rng), u(rng));
            m(j, i) = m(i, j);
        }
    return m;
}

// ---------------------------------------------------------------- criteria

void criterion_hafnian_oracle() {
    const double t_start = now_s();
    std::mt19937_64 rng(20260826);
    double worst = 0.0;
    for (int dim = 2; dim <= 10; ++dim) {
        for (int trial = 0; trial < 500; ++trial) {
            auto m = random_symmetric(dim, rng);
            auto ref = hafnian::hafnian_bruteforce(m);
            double rel = std::abs(hafnian::hafnian(m) - ref) /
                         std::max(1.0, std::abs(ref));
            worst = std::max(worst, rel);
            if (trial % 5 == 0) {
                Eigen::VectorXcd loops = m.diagonal();
                auto lref = hafnian::loop_hafnian_bruteforce(m, loops);
                double lrel = std::abs(hafnian::loop_hafnian(m, loops) - lref) /
                              std::max(1.0, std::abs(lref));
                worst = std::max(worst, lrel);
            }
        }
    }
    const double elapsed = now_s() - t_start;
    report("hafnian-oracle", worst <= 1e-9 && elapsed < 60.0,
           "max rel err " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_closed_forms() {
    double worst_even = 0.0, worst_zero = 0.0;
    for (double r : {0.2, 0.5, 1.0}) {
        auto state = apply(single_mode_squeezer(r), vacuum_state(1), {0});
        double t = std::tanh(r), fact = 1.0;
        for (int n = 0; n <= 4; ++n) {
            if (n > 0) fact *= (2.0 * n - 1.0) / (2.0 * n);
            double expect = fact * std::pow(t, 2 * n) / std::cosh(r);
            worst_even = std::max(
                worst_even, std::abs(fock_probability(state, {2 * n}) - expect));
            worst_zero =
                std::max(worst_zero, fock_probability(state, {2 * n + 1}));
        }
        auto tms = apply(two_mode_squeezer(r), vacuum_state(2), {0, 1});
        for (int n = 0; n <= 4; ++n) {
            double expect = std::pow(t, 2 * n) / (std::cosh(r) * std::cosh(r));
            worst_even = std::max(
                worst_even, std::abs(fock_probability(tms, {n, n}) - expect));
            worst_zero =
                std::max(worst_zero, fock_probability(tms, {n, n + 1}));
        }
    }
    report("closed-form-distributions", worst_even <= 1e-10 && worst_zero <= 1e-12,
           "even/diag err " + fmt(worst_even) + ", forbidden " + fmt(worst_zero));
}

GaussianState random_pure_state(int modes, double r_max, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto state = vacuum_state(modes);
    for (int m = 0; m < modes; ++m)
        state = apply(single_mode_squeezer(r_max * u(rng)), state, {m});
    for (int a = 0; a < modes; ++a)
        for (int b = a + 1; b < modes; ++b)
            state = apply(beamsplitter(0.5 * 3.14159265358979 * u(rng),
                                       3.14159265358979 * u(rng)),
                          state, {a, b});
    return state;
}

void criterion_amplitude_consistency() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        auto state = random_pure_state(3, 0.6, rng);
        auto form = pure_amplitude_form(state);
        for (const auto& pattern : enumerate_patterns(3, 6, 6)) {
            double p = fock_probability(state, pattern);
            double a2 = std::norm(fock_amplitude(form, pattern));
            worst = std::max(worst, std::abs(p - a2));
        }
    }
    report("amplitude-consistency", worst <= 1e-9, "max |amp^2 - P| " + fmt(worst));
}

void criterion_truncated_normalization() {
    double worst = 0.0;
    for (double r : {0.2, 0.5, 0.8}) {
        auto state = apply(single_mode_squeezer(r), vacuum_state(1), {0});
        double total = 0.0;
        for (int n = 0; n <= 8; ++n) total += fock_probability(state, {n});
        worst = std::max(worst, std::abs(1.0 - total));
    }
    report("truncated-normalization", worst <= 1e-3,
           "max |1 - sum_{n<=8} P| " + fmt(worst) + " over |r| <= 0.8");
}

void criterion_structural_invariants() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_symp = 0.0, worst_unit = 0.0, worst_purity = 0.0;
    const auto omega4 = symplectic_form(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto bs = beamsplitter(u(rng), u(rng));
        worst_symp = std::max(
            worst_symp,
            (bs.s.transpose() * omega4 * bs.s - omega4).cwiseAbs().maxCoeff());
        auto sq = single_mode_squeezer(u(rng));
        const auto omega2 = symplectic_form(1);
        worst_symp = std::max(
            worst_symp,
            (sq.s.transpose() * omega2 * sq.s - omega2).cwiseAbs().maxCoeff());
    }
    for (int n : {2, 3, 4, 6}) {
        auto xi = ParameterVector::zeros(n);
        std::mt19937_64 mesh_rng(n);
        for (int i = 0; i < xi.mesh_theta.size(); ++i) {
            xi.mesh_theta(i) = u(mesh_rng);
            xi.mesh_phi(i) = u(mesh_rng);
        }
        for (int i = 0; i < n; ++i) {
            xi.squeeze(i) = 0.4 * u(mesh_rng);
            xi.out_phase(i) = u(mesh_rng);
        }
        InterferometerMesh mesh;
        mesh.n_modes = n;
        auto pairs = mesh_layout(n);
        for (std::size_t c = 0; c < pairs.size(); ++c)
            mesh.cells.push_back({pairs[c], xi.mesh_theta(c), xi.mesh_phi(c)});
        mesh.output_phases = xi.out_phase;
        auto unitary = mesh_unitary(mesh);
        worst_unit = std::max(worst_unit,
                              (unitary.adjoint() * unitary -
                               Eigen::MatrixXcd::Identity(n, n))
                                  .cwiseAbs()
                                  .maxCoeff());
        if (n >= 3) {
            auto spec = make_circuit_spec(1, n - 2, 0, 0);
            auto [state, map] = build_state(spec, xi);
            worst_purity = std::max(worst_purity,
                                    std::abs(purity_det(state) - 1.0));
        }
    }

    // herald probability from the reduced state vs joint-pattern summation
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto xi = ParameterVector::zeros(3);
    std::mt19937_64 prng(31);
    Eigen::VectorXd flat(xi.size());
    for (int i = 0; i < flat.size(); ++i) flat(i) = 0.25 * u(prng);
    xi = ParameterVector::unflatten(3, flat);
    auto [state, map] = build_state(spec, xi);
    PhotonPattern herald = {1};
    double p_reduced = herald_probability(state, map, herald);
    double p_joint = 0.0;
    for (const auto& out : enumerate_patterns(2, 8, 8))
        p_joint += fock_probability(state, {out[0], out[1], herald[0]});
    double herald_err = std::abs(p_reduced - p_joint);

    bool pass = worst_symp <= 1e-10 && worst_unit <= 1e-10 &&
                worst_purity <= 1e-8 && herald_err <= 1e-6;
    report("structural-invariants", pass,
           "symplectic " + fmt(worst_symp) + ", unitarity " + fmt(worst_unit) +
               ", purity " + fmt(worst_purity) + ", herald sum " +
               fmt(herald_err));
}

double brute_force_p_eff(const GaussianState& state, const ModeMap& map,
                         const PhotonPattern& herald, int n_qubits, int cutoff) {
    // joint probability of the herald pattern with every rail pair occupied
    std::vector<int> keep = map.outputs;
    for (size_t i = 0; i < map.non_outputs().size(); ++i)
        keep.push_back(map.non_outputs()[i]);
    auto joint = partial_trace(state, keep);
    double total = 0.0;
    for (const auto& out : enumerate_patterns(2 * n_qubits, cutoff, cutoff)) {
        bool occupied = true;
        for (int q = 0; q < n_qubits; ++q)
            if (out[2 * q] + out[2 * q + 1] == 0) occupied = false;
        if (!occupied) continue;
        PhotonPattern full = out;
        for (int h : herald) full.push_back(h);
        total += fock_probability(joint, full);
    }
    return total;
}

void criterion_inclusion_exclusion() {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n_qubits : {1, 2}) {
        auto spec = make_circuit_spec(n_qubits, n_qubits, 0, 0);
        const int n = spec.n_core();
        Eigen::VectorXd flat(n * (n + 1));
        for (int i = 0; i < flat.size(); ++i) flat(i) = 0.22 * u(rng);
        auto xi = ParameterVector::unflatten(n, flat);
        auto [state, map] = build_state(spec, xi);
        auto target = n_qubits == 1 ? TargetState{"one", {{{1, 0}, 1.0}}}
                                    : target_bell();
        auto herald = full_herald_pattern(spec, target.total_photons());
        auto form = pure_amplitude_form(state);
        auto [p_eff, f_eff] =
            postselected_metrics(state, form, map, herald, target);
        double ref = brute_force_p_eff(state, map, herald, n_qubits, 8);
        worst = std::max(worst, std::abs(p_eff - ref));
    }
    report("inclusion-exclusion", worst <= 1e-6, "max |p_eff - sum| " + fmt(worst));
}

struct OptRun {
    OptimizationTrace trace;
    bool feasible = true;
};

OptRun run_opt(const CircuitSpec& spec, const TargetState& target, int restarts,
               int iters, std::uint64_t seed, bool postselect) {
    OptimizerOptions opt;
    opt.restarts = restarts;
    opt.max_iters = iters;
    opt.seed = seed;
    OptRun r;
    try {
        r.trace = optimize(spec, target, CostWeights{}, opt, postselect);
    } catch (const infeasible_error&) {
        r.feasible = false;
    }
    return r;
}

OptRun g_bell_add;  // reused by convergence + robustness criteria
OptRun g_ghz_ps;    // reused by the convergence criterion

void criterion_bell_additions() {
    g_bell_add = run_opt(make_circuit_spec(2, 2, 2, 0), target_bell(), 20, 300,
                         1001, false);
    const auto& m = g_bell_add.trace.best_metrics;
    bool pass = g_bell_add.feasible && m.fidelity >= 0.99 && m.p >= 0.002 &&
                m.p <= 0.008;
    report("bell-2-additions", pass,
           "p " + fmt(m.p) + " (want [0.002, 0.008]), F " + fmt(m.fidelity) +
               " (want >= 0.99), 20 restarts x 300 iters");
}

void criterion_bell_postselected() {
    auto run = run_opt(make_circuit_spec(2, 2, 0, 0), target_bell(), 20, 300,
                       1002, true);
    const auto& m = run.trace.best_metrics;
    double p_eff = m.p_effective.value_or(0.0);
    double f_eff = m.fidelity_effective.value_or(0.0);
    bool pass = run.feasible && p_eff >= 0.029 && f_eff >= 0.999;
    report("bell-postselected", pass,
           "p_eff " + fmt(p_eff) + " (want >= 0.029), F_eff " + fmt(f_eff) +
               " (want >= 0.999)");
}

void criterion_ghzw_postselected() {
    g_ghz_ps = run_opt(make_circuit_spec(3, 4, 0, 0), target_ghz(), 10, 300,
                       1003, true);
    {
        const auto& m = g_ghz_ps.trace.best_metrics;
        double p_eff = m.p_effective.value_or(0.0);
        double f_eff = m.fidelity_effective.value_or(0.0);
        bool pass = g_ghz_ps.feasible && p_eff >= 1.4e-3 && f_eff >= 0.89;
        report("ghz-postselected", pass,
               "p_eff " + fmt(p_eff) + " (want >= 1.4e-3), F_eff " + fmt(f_eff) +
                   " (want >= 0.89)");
    }
    auto w = run_opt(make_circuit_spec(3, 4, 0, 0), target_w(), 10, 300, 1004,
                     true);
    const auto& m = w.trace.best_metrics;
    double p_eff = m.p_effective.value_or(0.0);
    double f_eff = m.fidelity_effective.value_or(0.0);
    bool pass = w.feasible && p_eff >= 1.4e-3 && f_eff >= 0.90;
    report("w-postselected", pass,
           "p_eff " + fmt(p_eff) + " (want >= 1.4e-3), F_eff " + fmt(f_eff) +
               " (want >= 0.90)");
}

void criterion_ghzw_additions() {
    auto ghz = run_opt(make_circuit_spec(3, 4, 2, 0), target_ghz(), 6, 300,
                       1005, true);
    double f_ghz = ghz.trace.best_metrics.fidelity_effective.value_or(0.0);
    report("ghz-2-additions", ghz.feasible && f_ghz >= 0.99,
           "F_eff " + fmt(f_ghz) + " (want >= 0.99)");
    auto w = run_opt(make_circuit_spec(3, 4, 2, 0), target_w(), 6, 300, 1006,
                     true);
    double f_w = w.trace.best_metrics.fidelity_effective.value_or(0.0);
    report("w-2-additions", w.feasible && f_w >= 0.99,
           "F_eff " + fmt(f_w) + " (want >= 0.99)");
}

void criterion_convergence_profile() {
    auto deviation_at_150 = [](const OptRun& run) {
        if (!run.feasible || run.trace.iterations.empty()) return 1.0;
        double final_cost = run.trace.iterations.back().cost;
        double at_150 = run.trace.iterations.front().cost;
        for (const auto& rec : run.trace.iterations)
            if (rec.iteration <= 150) at_150 = rec.cost;
        return std::abs(at_150 - final_cost) /
               std::max(1e-12, std::abs(final_cost));
    };
    double bell = deviation_at_150(g_bell_add);
    double ghz = deviation_at_150(g_ghz_ps);
    report("convergence-profile", bell <= 0.01 && ghz <= 0.01,
           "cost deviation at iter 150: bell " + fmt(bell) + ", ghz " +
               fmt(ghz) + " (want <= 0.01)");
}

void criterion_robustness() {
    if (!g_bell_add.feasible) {
        report("robustness-envelope", false, "no feasible optimum to perturb");
        return;
    }
    auto spec = make_circuit_spec(2, 2, 2, 0);
    auto samples = robustness_study(spec, target_bell(), g_bell_add.trace.best,
                                    {0.01}, 200, 2024);
    int outliers = 0;
    for (const auto& s : samples)
        if (!s.feasible || std::abs(s.dp_rel) > 0.005 ||
            std::abs(s.df_rel) > 0.03)
            ++outliers;
    double frac = double(outliers) / double(samples.size());
    report("robustness-envelope", frac <= 0.02,
           fmt(100.0 * frac) + "% of 200 trials outside |dp/p| <= 0.5%, " +
               "|dF/F| <= 3% at delta 1% (want <= 2%)");
}

void criterion_sweep_trend() {
    std::vector<double> best_pf;
    std::ostringstream detail;
    for (int k = 0; k <= 2; ++k) {
        double best = 0.0;
        for (int sub = 0; sub <= 2; ++sub) {
            auto run = run_opt(make_circuit_spec(2, 2, k, sub), target_bell(),
                               6, 300, 3000 + 10 * k + sub, false);
            if (!run.feasible) continue;
            const auto& m = run.trace.best_metrics;
            best = std::max(best, m.p * m.fidelity);
        }
        best_pf.push_back(best);
        detail << (k ? ", " : "") << "+" << k << ": " << fmt(best);
    }
    bool pass = best_pf[1] >= best_pf[0] - 1e-12 &&
                best_pf[2] >= best_pf[1] - 1e-12;
    report("sweep-trend", pass,
           "best p*F per addition column { " + detail.str() +
               " } (want non-decreasing)");
}

} // namespace

int main() {
    criterion_hafnian_oracle();
    criterion_closed_forms();
    criterion_amplitude_consistency();
    criterion_truncated_normalization();
    criterion_structural_invariants();
    criterion_inclusion_exclusion();
    criterion_bell_additions();
    criterion_bell_postselected();
    criterion_ghzw_postselected();
    criterion_ghzw_additions();
    criterion_convergence_profile();
    criterion_robustness();
    criterion_sweep_trend();
    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
