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
#include <complex>
#include <random>

#include "heraldic/herald.hpp"

using namespace heraldic;
using cplx = std::complex<double>;

namespace {

ModeMap two_mode_map() {
    ModeMap map;
    map.outputs = {0};
    map.heralds = {1};
    return map;
}

ParameterVector random_params(int n_core, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd flat(ParameterVector::zeros(n_core).size());
    for (int i = 0; i < flat.size(); ++i) flat(i) = u(rng);
    return ParameterVector::unflatten(n_core, flat);
}

} // namespace

TEST_CASE("herald probability on two-mode squeezed pair") {
    for (double r : {0.3, 0.8}) {
        auto st = apply(two_mode_squeezer(r), vacuum_state(2), {0, 1});
        const double p = herald_probability(st, two_mode_map(), {1});
        const double t = std::tanh(r);
        CHECK(p == doctest::Approx(t * t / std::pow(std::cosh(r), 2)).epsilon(1e-10));
    }

    CHECK(herald_probability(vacuum_state(2), two_mode_map(), {0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(herald_probability(vacuum_state(2), two_mode_map(), {0, 0}),
                    std::invalid_argument);
}

TEST_CASE("herald probability equals marginalizing the outputs") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto xi = random_params(spec.n_core(), 5, 0.3);
    auto [st, map] = build_state(spec, xi);
    const PhotonPattern herald = {1};
    const double p = herald_probability(st, map, herald);

    double total = 0.0;
    for (const auto& out : enumerate_patterns(2, 12, 12)) {
        PhotonPattern joint = out;
        joint.push_back(1);
        total += fock_probability(st, joint);
    }
    CHECK(p == doctest::Approx(total).epsilon(1e-6));
}

TEST_CASE("heralded two-mode squeezer emits an exact single photon") {
    auto st = apply(two_mode_squeezer(0.7), vacuum_state(2), {0, 1});
    auto form = pure_amplitude_form(st);
    const double p = herald_probability(st, two_mode_map(), {1});

    TargetState one{"one", {{{1}, 1.0}}};
    CHECK(heralded_fidelity(form, two_mode_map(), {1}, one, p) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // Amplitudes of a two-mode squeezed pair vanish off the diagonal.
    TargetState vac{"vac", {{{0}, 1.0}}};
    CHECK(heralded_fidelity(form, two_mode_map(), {1}, vac, p) ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(heralded_fidelity(form, two_mode_map(), {1}, one, 0.0),
                    infeasible_error);
}

TEST_CASE("fidelity is gauge invariant under output phase shifts") {
    auto spec = make_circuit_spec(2, 2, 0, 0);
    auto xi = random_params(spec.n_core(), 17, 0.4);
    auto target = target_bell();
    auto m0 = evaluate(spec, xi, target);

    const double phi = 0.9;
    auto xi2 = xi;
    xi2.out_phase(1) += phi;
    TargetState rotated = target;
    for (auto& c : rotated.components)
        c.coeff *= std::exp(cplx(0.0, c.pattern[1] * phi));
    auto m1 = evaluate(spec, xi2, rotated);

    CHECK(m1.p == doctest::Approx(m0.p).epsilon(1e-10));
    CHECK(m1.fidelity == doctest::Approx(m0.fidelity).epsilon(1e-8));
}

TEST_CASE("postselection: inclusion-exclusion matches direct enumeration") {
    auto spec = make_circuit_spec(1, 1, 0, 0);
    auto xi = random_params(spec.n_core(), 23, 0.3);
    auto [st, map] = build_state(spec, xi);
    auto form = pure_amplitude_form(st);
    const PhotonPattern herald = {1};
    TargetState one{"one", {{{1, 0}, 1.0}}};

    auto [p_eff, f_eff] = postselected_metrics(st, form, map, herald, one);

    // Direct: joint probability of herald with any non-vacuum pair word.
    double total = 0.0;
    for (const auto& out : enumerate_patterns(2, 12, 12)) {
        if (out[0] == 0 && out[1] == 0) continue;
        PhotonPattern joint = out;
        joint.push_back(1);
        total += fock_probability(st, joint);
    }
    CHECK(p_eff == doctest::Approx(total).epsilon(1e-6));

    const double p = herald_probability(st, map, herald);
    const double f = heralded_fidelity(form, map, herald, one, p);
    CHECK(p_eff <= p + 1e-12);
    CHECK(f_eff >= f - 1e-9);  // target lives in the post-selected subspace
}

TEST_CASE("postselected metrics through evaluate on a Bell circuit") {
    auto spec = make_circuit_spec(2, 2, 0, 0);
    auto xi = random_params(spec.n_core(), 31, 0.35);
    auto m = evaluate(spec, xi, target_bell(), true);
    REQUIRE(m.p_effective.has_value());
    REQUIRE(m.fidelity_effective.has_value());
    CHECK(*m.p_effective > 0.0);
    CHECK(*m.p_effective <= 1.0);
    CHECK(*m.fidelity_effective >= m.fidelity - 1e-9);
    CHECK(*m.fidelity_effective <= 1.0 + 1e-9);
}

TEST_CASE("cost function") {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    CHECK(cost(1.0, 1.0, zero) == doctest::Approx(0.0));
    CHECK(cost(std::exp(-1.0), 1.0, zero) == doctest::Approx(10.0).epsilon(1e-12));

    Eigen::VectorXd xi(2);
    xi << 3.0, 4.0;
    CHECK(cost(1.0, 1.0, xi) == doctest::Approx(1e-4 * 25.0).epsilon(1e-12));

    CHECK(cost(0.2, 0.9, zero) > cost(0.3, 0.9, zero));
    CHECK(cost(0.2, 0.8, zero) > cost(0.2, 0.9, zero));
    CHECK(std::isinf(cost(0.0, 1.0, zero)));
    CHECK(std::isinf(cost(0.5, 0.0, zero)));
}
