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

#ifndef HERALDIC_CIRCUIT_HPP
#define HERALDIC_CIRCUIT_HPP

#include "heraldic/fock.hpp"
#include "heraldic/symplectic.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace heraldic {

/// Heralded-generation circuit layout: dual-rail qubits, herald modes, and
/// photon addition/subtraction gadgets attached to core source modes.
///
/// Mode numbering: outputs 0..2q-1, heralds 2q..n_core-1, then one ancilla
/// per addition and one per subtraction.
struct CircuitSpec {
    int n_qubits = 1;
    int n_herald = 0;
    std::vector<int> additions;      // core source mode per added photon
    std::vector<int> subtractions;   // core source mode per subtracted photon
    double r_add = 0.8;              // fixed gadget squeezing, not optimized
    double tau_sub = 0.1;            // fixed gadget tap transmissivity
    PhotonPattern herald_counts;     // empty selects the parity-adjusted default

    int n_outputs() const { return 2 * n_qubits; }
    int n_core() const { return n_outputs() + n_herald; }
    int n_total() const {
        return n_core() + static_cast<int>(additions.size() + subtractions.size());
    }
};

/// Spec with n_add/n_sub gadget photons assigned round-robin over core modes.
CircuitSpec make_circuit_spec(int n_qubits, int n_herald, int n_add, int n_sub);

/// Optimizable parameters: one squeezer per core mode, a rectangular mesh
/// (theta, phi per cell) and output phases; n_core^2 + n_core in total.
struct ParameterVector {
    Eigen::VectorXd squeeze;
    Eigen::VectorXd mesh_theta;
    Eigen::VectorXd mesh_phi;
    Eigen::VectorXd out_phase;

    static ParameterVector zeros(int n_core);
    static ParameterVector unflatten(int n_core, const Eigen::VectorXd& flat);
    Eigen::VectorXd flatten() const;
    int n_core() const { return static_cast<int>(squeeze.size()); }
    int size() const { return n_core() * (n_core() + 1); }
};

/// Labels each mode of the built state.
struct ModeMap {
    std::vector<int> outputs;
    std::vector<int> heralds;
    std::vector<int> addition_ancillas;
    std::vector<int> subtraction_ancillas;

    /// Heralds, then addition ancillas, then subtraction ancillas; the
    /// ordering used for herald patterns and reduced states.
    std::vector<int> non_outputs() const;
};

struct TargetComponent {
    PhotonPattern pattern;
    std::complex<double> coeff;
};

/// Dual-rail target state as (Fock pattern, coefficient) pairs.
struct TargetState {
    std::string name;
    std::vector<TargetComponent> components;

    int total_photons() const;  // identical across components
};

TargetState target_bell();
TargetState target_ghz();
TargetState target_w();
TargetState target_by_name(const std::string& name);

/// Builds the full Gaussian state of the circuit: additions (before the
/// source squeezers), per-core-mode squeezers, subtraction taps, then the
/// mesh over the core modes.
std::pair<GaussianState, ModeMap> build_state(const CircuitSpec& spec,
                                              const ParameterVector& xi);

/// Detection pattern over non-output modes: unit clicks on gadget ancillas,
/// herald_counts on heralds. Defaults to all-click heralds, dropping the
/// last herald to zero when needed so the total photon number of
/// target + heralds + gadgets is even.
PhotonPattern full_herald_pattern(const CircuitSpec& spec,
                                  int target_total_photons);

} // namespace heraldic

#endif
