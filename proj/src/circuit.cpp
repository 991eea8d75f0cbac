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

#include "heraldic/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldic {

using cplx = std::complex<double>;

CircuitSpec make_circuit_spec(int n_qubits, int n_herald, int n_add, int n_sub) {
    if (n_qubits < 1 || n_herald < 0 || n_add < 0 || n_sub < 0)
        throw std::invalid_argument("make_circuit_spec: invalid layout");
    CircuitSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_herald = n_herald;
    for (int i = 0; i < n_add; ++i) spec.additions.push_back(i % spec.n_core());
    for (int i = 0; i < n_sub; ++i) spec.subtractions.push_back(i % spec.n_core());
    return spec;
}

ParameterVector ParameterVector::zeros(int n_core) {
    ParameterVector xi;
    xi.squeeze = Eigen::VectorXd::Zero(n_core);
    xi.mesh_theta = Eigen::VectorXd::Zero(n_core * (n_core - 1) / 2);
    xi.mesh_phi = Eigen::VectorXd::Zero(n_core * (n_core - 1) / 2);
    xi.out_phase = Eigen::VectorXd::Zero(n_core);
    return xi;
}

ParameterVector ParameterVector::unflatten(int n_core, const Eigen::VectorXd& flat) {
    if (flat.size() != n_core * (n_core + 1))
        throw std::invalid_argument("ParameterVector: flat length mismatch");
    const int cells = n_core * (n_core - 1) / 2;
    ParameterVector xi;
    xi.squeeze = flat.segment(0, n_core);
    xi.mesh_theta = flat.segment(n_core, cells);
    xi.mesh_phi = flat.segment(n_core + cells, cells);
    xi.out_phase = flat.segment(n_core + 2 * cells, n_core);
    return xi;
}

Eigen::VectorXd ParameterVector::flatten() const {
    Eigen::VectorXd flat(size());
    flat << squeeze, mesh_theta, mesh_phi, out_phase;
    return flat;
}

std::vector<int> ModeMap::non_outputs() const {
    std::vector<int> v = heralds;
    v.insert(v.end(), addition_ancillas.begin(), addition_ancillas.end());
    v.insert(v.end(), subtraction_ancillas.begin(), subtraction_ancillas.end());
    return v;
}

int TargetState::total_photons() const {
    if (components.empty())
        throw std::invalid_argument("TargetState: no components");
    return heraldic::total_photons(components.front().pattern);
}

namespace {

TargetState make_target(std::string name,
                        std::vector<PhotonPattern> patterns) {
    TargetState t;
    t.name = std::move(name);
    const double c = 1.0 / std::sqrt(static_cast<double>(patterns.size()));
    for (auto& p : patterns) t.components.push_back({std::move(p), c});
    return t;
}

} // namespace

TargetState target_bell() {
    return make_target("bell", {{1, 0, 1, 0}, {0, 1, 0, 1}});
}

TargetState target_ghz() {
    return make_target("ghz", {{1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1}});
}

TargetState target_w() {
    return make_target(
        "w", {{1, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 1, 0}, {0, 1, 1, 0, 1, 0}});
}

TargetState target_by_name(const std::string& name) {
    if (name == "bell") return target_bell();
    if (name == "ghz") return target_ghz();
    if (name == "w") return target_w();
    throw std::invalid_argument("unknown target state: " + name);
}

std::pair<GaussianState, ModeMap> build_state(const CircuitSpec& spec,
                                              const ParameterVector& xi) {
    const int n_core = spec.n_core();
    if (xi.n_core() != n_core)
        throw std::invalid_argument("build_state: parameter vector size mismatch");
    for (int m : spec.additions)
        if (m < 0 || m >= n_core)
            throw std::invalid_argument("build_state: addition index out of range");
    for (int m : spec.subtractions)
        if (m < 0 || m >= n_core)
            throw std::invalid_argument("build_state: subtraction index out of range");

    ModeMap map;
    for (int i = 0; i < spec.n_outputs(); ++i) map.outputs.push_back(i);
    for (int i = spec.n_outputs(); i < n_core; ++i) map.heralds.push_back(i);
    int next = n_core;
    for (std::size_t i = 0; i < spec.additions.size(); ++i)
        map.addition_ancillas.push_back(next++);
    for (std::size_t i = 0; i < spec.subtractions.size(); ++i)
        map.subtraction_ancillas.push_back(next++);

    GaussianState st = vacuum_state(spec.n_total());

    // Photon addition feeds the source mode before its squeezer.
    const SymplecticTransform tms = two_mode_squeezer(spec.r_add);
    for (std::size_t i = 0; i < spec.additions.size(); ++i)
        st = apply(tms, st, {spec.additions[i], map.addition_ancillas[i]});

    for (int j = 0; j < n_core; ++j)
        if (xi.squeeze(j) != 0.0)
            st = apply(single_mode_squeezer(xi.squeeze(j)), st, {j});

    // Subtraction taps the squeezed mode with a weak beamsplitter.
    const SymplecticTransform tap =
        beamsplitter(std::acos(std::sqrt(spec.tau_sub)), 0.0);
    for (std::size_t i = 0; i < spec.subtractions.size(); ++i)
        st = apply(tap, st, {spec.subtractions[i], map.subtraction_ancillas[i]});

    InterferometerMesh mesh;
    mesh.n_modes = n_core;
    const std::vector<int> pairs = mesh_layout(n_core);
    for (std::size_t c = 0; c < pairs.size(); ++c)
        mesh.cells.push_back({pairs[c], xi.mesh_theta(c), xi.mesh_phi(c)});
    mesh.output_phases = xi.out_phase;
    std::vector<int> core_modes(n_core);
    for (int i = 0; i < n_core; ++i) core_modes[i] = i;
    st = apply(unitary_to_symplectic(mesh_unitary(mesh)), st, core_modes);

    return {std::move(st), std::move(map)};
}

PhotonPattern full_herald_pattern(const CircuitSpec& spec,
                                  int target_total_photons) {
    const int n_gadget =
        static_cast<int>(spec.additions.size() + spec.subtractions.size());
    PhotonPattern heralds;
    if (!spec.herald_counts.empty()) {
        if (static_cast<int>(spec.herald_counts.size()) != spec.n_herald)
            throw std::invalid_argument("full_herald_pattern: herald_counts size mismatch");
        heralds = spec.herald_counts;
    } else {
        heralds.assign(spec.n_herald, 1);
        // Zero-mean Gaussian states only populate even total photon number,
        // so the joint target + detection pattern must be even.
        if ((target_total_photons + n_gadget + spec.n_herald) % 2 != 0 &&
            spec.n_herald > 0)
            heralds.back() = 0;
    }
    PhotonPattern pattern = heralds;
    pattern.insert(pattern.end(), n_gadget, 1);
    return pattern;
}

} // namespace heraldic
