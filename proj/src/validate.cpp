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

#include "heraldic/validate.hpp"

#include <cmath>
#include <random>

#include "heraldic/hafnian.hpp"
#include "heraldic/herald.hpp"

namespace heraldic {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd random_symmetric(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = cplx(u(rng), u(rng));
    return m;
}

ValidationCheck check_hafnian(std::mt19937_64& rng) {
    ValidationCheck c{"hafnian vs matching enumeration", false, 0.0, 1e-9};
    for (int n = 2; n <= 8; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const Eigen::MatrixXcd m = random_symmetric(n, rng);
            const cplx ref = hafnian::hafnian_bruteforce(m);
            const cplx got = hafnian::hafnian(m);
            const double scale = std::max(1.0, std::abs(ref));
            c.max_error = std::max(c.max_error, std::abs(got - ref) / scale);

            Eigen::VectorXcd loops = m.diagonal();
            const cplx lref = hafnian::loop_hafnian_bruteforce(m, loops);
            const cplx lgot = hafnian::loop_hafnian(m, loops);
            const double lscale = std::max(1.0, std::abs(lref));
            c.max_error = std::max(c.max_error, std::abs(lgot - lref) / lscale);
        }
    }
    c.pass = c.max_error <= c.tolerance;
    return c;
}

ValidationCheck check_squeezed_distribution() {
    ValidationCheck c{"squeezed vacuum photon statistics", false, 0.0, 1e-10};
    for (double r : {0.2, 0.5, 1.0}) {
        const GaussianState st = apply(single_mode_squeezer(r), vacuum_state(1), {0});
        double fact = 1.0;  // (2n)! / (2^n n!)^2 running value
        for (int n = 0; n <= 4; ++n) {
            if (n > 0)
                fact *= static_cast<double>(2 * n - 1) / (2 * n);
            const double expect =
                fact * std::pow(std::tanh(r), 2 * n) / std::cosh(r);
            c.max_error = std::max(
                c.max_error, std::abs(fock_probability(st, {2 * n}) - expect));
            if (n > 0)
                c.max_error = std::max(c.max_error,
                                       std::abs(fock_probability(st, {2 * n - 1})));
        }
    }
    c.pass = c.max_error <= c.tolerance;
    return c;
}

ValidationCheck check_tms_distribution() {
    ValidationCheck c{"two-mode squeezed photon statistics", false, 0.0, 1e-10};
    for (double r : {0.3, 0.8}) {
        const GaussianState st =
            apply(two_mode_squeezer(r), vacuum_state(2), {0, 1});
        for (int n = 0; n <= 5; ++n) {
            const double expect = std::pow(std::tanh(r), 2 * n) /
                                  std::pow(std::cosh(r), 2);
            c.max_error = std::max(
                c.max_error, std::abs(fock_probability(st, {n, n}) - expect));
            c.max_error =
                std::max(c.max_error, std::abs(fock_probability(st, {n, n + 1})));
        }
    }
    c.pass = c.max_error <= c.tolerance;
    return c;
}

ValidationCheck check_amplitude_probability(std::mt19937_64& rng) {
    ValidationCheck c{"amplitude-probability consistency", false, 0.0, 1e-9};
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int rep = 0; rep < 4; ++rep) {
        GaussianState st = vacuum_state(3);
        for (int j = 0; j < 3; ++j)
            st = apply(single_mode_squeezer(u(rng)), st, {j});
        InterferometerMesh mesh;
        mesh.n_modes = 3;
        for (int pair : mesh_layout(3))
            mesh.cells.push_back({pair, u(rng), u(rng)});
        st = apply(unitary_to_symplectic(mesh_unitary(mesh)), st, {0, 1, 2});

        const HusimiForm h = husimi_form(st);
        const PureAmplitudeForm form = pure_amplitude_form(st);
        for (const auto& pattern : enumerate_patterns(3, 5, 5)) {
            const double p = fock_probability(h, pattern);
            const double a2 = std::norm(fock_amplitude(form, pattern));
            c.max_error = std::max(c.max_error, std::abs(p - a2));
        }
    }
    c.pass = c.max_error <= c.tolerance;
    return c;
}

ValidationCheck check_postselection(std::mt19937_64& rng) {
    ValidationCheck c{"post-selection inclusion-exclusion", false, 0.0, 1e-6};
    const CircuitSpec spec = make_circuit_spec(1, 1, 0, 0);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    Eigen::VectorXd flat(ParameterVector::zeros(spec.n_core()).size());
    for (int i = 0; i < flat.size(); ++i) flat(i) = u(rng);
    auto [st, map] = build_state(spec, ParameterVector::unflatten(spec.n_core(), flat));
    const PureAmplitudeForm form = pure_amplitude_form(st);
    const TargetState one{"one", {{{1, 0}, 1.0}}};
    const auto [p_eff, f_eff] = postselected_metrics(st, form, map, {1}, one);

    double total = 0.0;
    for (const auto& out : enumerate_patterns(2, 12, 12)) {
        if (out[0] == 0 && out[1] == 0) continue;
        total += fock_probability(st, {out[0], out[1], 1});
    }
    c.max_error = std::abs(p_eff - total) / total;
    c.pass = c.max_error <= c.tolerance && f_eff >= 0.0 && f_eff <= 1.0;
    return c;
}

} // namespace

std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ValidationCheck> checks;
    checks.push_back(check_hafnian(rng));
    checks.push_back(check_squeezed_distribution());
    checks.push_back(check_tms_distribution());
    checks.push_back(check_amplitude_probability(rng));
    checks.push_back(check_postselection(rng));
    return checks;
}

} // namespace heraldic
