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

#include "heraldic/herald.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace heraldic {

namespace {

void check_pattern(const ModeMap& map, const PhotonPattern& herald_pattern) {
    if (herald_pattern.size() != map.non_outputs().size())
        throw std::invalid_argument("herald pattern length != non-output mode count");
}

// Pattern over all modes of the full state: target word on the output
// modes, herald pattern on the rest (mode-map ordering).
PhotonPattern join_pattern(const ModeMap& map, const PhotonPattern& outputs,
                           const PhotonPattern& herald_pattern) {
    if (outputs.size() != map.outputs.size())
        throw std::invalid_argument("target pattern length != output mode count");
    const std::vector<int> aux = map.non_outputs();
    PhotonPattern full(map.outputs.size() + aux.size(), 0);
    for (std::size_t i = 0; i < map.outputs.size(); ++i)
        full[map.outputs[i]] = outputs[i];
    for (std::size_t i = 0; i < aux.size(); ++i)
        full[aux[i]] = herald_pattern[i];
    return full;
}

std::complex<double> target_overlap(const PureAmplitudeForm& form,
                                    const ModeMap& map,
                                    const PhotonPattern& herald_pattern,
                                    const TargetState& target) {
    std::complex<double> acc = 0.0;
    for (const auto& c : target.components)
        acc += std::conj(c.coeff) *
               fock_amplitude(form, join_pattern(map, c.pattern, herald_pattern));
    return acc;
}

} // namespace

double herald_probability(const GaussianState& state, const ModeMap& map,
                          const PhotonPattern& herald_pattern) {
    check_pattern(map, herald_pattern);
    const GaussianState reduced = partial_trace(state, map.non_outputs());
    return fock_probability(reduced, herald_pattern);
}

double heralded_fidelity(const PureAmplitudeForm& form, const ModeMap& map,
                         const PhotonPattern& herald_pattern,
                         const TargetState& target, double p) {
    check_pattern(map, herald_pattern);
    if (p <= 0.0)
        throw infeasible_error("heralded_fidelity: zero herald probability");
    const double num = std::norm(target_overlap(form, map, herald_pattern, target));
    double f = num / p;
    if (f > 1.0 + 1e-9)
        throw std::runtime_error("heralded_fidelity: fidelity exceeds 1");
    return std::min(f, 1.0);
}

std::pair<double, double> postselected_metrics(const GaussianState& state,
                                               const PureAmplitudeForm& form,
                                               const ModeMap& map,
                                               const PhotonPattern& herald_pattern,
                                               const TargetState& target) {
    check_pattern(map, herald_pattern);
    if (map.outputs.size() % 2 != 0)
        throw std::invalid_argument("postselected_metrics: odd output mode count");
    const int n_pairs = static_cast<int>(map.outputs.size()) / 2;
    const std::vector<int> aux = map.non_outputs();

    // p_eff = sum over pair subsets S of (-1)^|S| P(herald and S all vacuum);
    // projecting rail pairs onto vacuum keeps the state Gaussian, so every
    // term is exact.
    double p_eff = 0.0;
    for (unsigned mask = 0; mask < (1u << n_pairs); ++mask) {
        std::vector<int> keep = aux;
        PhotonPattern pattern = herald_pattern;
        int bits = 0;
        for (int q = 0; q < n_pairs; ++q) {
            if (!(mask & (1u << q))) continue;
            ++bits;
            keep.push_back(map.outputs[2 * q]);
            keep.push_back(map.outputs[2 * q + 1]);
            pattern.push_back(0);
            pattern.push_back(0);
        }
        const double term = fock_probability(partial_trace(state, keep), pattern);
        p_eff += (bits % 2 == 0 ? term : -term);
    }
    if (p_eff <= 1e-300)
        throw infeasible_error("postselected_metrics: zero effective probability");
    p_eff = std::min(p_eff, 1.0);

    const double num = std::norm(target_overlap(form, map, herald_pattern, target));
    double f_eff = num / p_eff;
    if (f_eff > 1.0 + 1e-9)
        throw std::runtime_error("postselected_metrics: fidelity exceeds 1");
    return {p_eff, std::min(f_eff, 1.0)};
}

double cost(double p, double fidelity, const Eigen::VectorXd& xi, double w1,
            double w2, double eps) {
    if (p <= 0.0 || fidelity <= 0.0)
        return std::numeric_limits<double>::infinity();
    return -w1 * std::log(p) - w2 * std::log(fidelity) + eps * xi.squaredNorm();
}

HeraldMetrics evaluate(const CircuitSpec& spec, const ParameterVector& xi,
                       const TargetState& target, bool postselect) {
    auto [state, map] = build_state(spec, xi);
    const PhotonPattern herald = full_herald_pattern(spec, target.total_photons());

    HeraldMetrics m;
    m.p = herald_probability(state, map, herald);
    if (m.p <= 0.0)
        throw infeasible_error("evaluate: zero herald probability");
    const PureAmplitudeForm form = pure_amplitude_form(state);
    m.fidelity = heralded_fidelity(form, map, herald, target, m.p);
    if (postselect) {
        auto [pe, fe] = postselected_metrics(state, form, map, herald, target);
        m.p_effective = pe;
        m.fidelity_effective = fe;
    }
    return m;
}

} // namespace heraldic
