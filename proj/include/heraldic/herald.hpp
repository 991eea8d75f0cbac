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

#ifndef HERALDIC_HERALD_HPP
#define HERALDIC_HERALD_HPP

#include "heraldic/circuit.hpp"
#include "heraldic/fock.hpp"

#include <optional>
#include <stdexcept>

namespace heraldic {

/// Configuration that cannot be evaluated (e.g. parity-forbidden herald
/// pattern giving zero success probability). Sweeps mark such cells
/// infeasible instead of crashing.
class infeasible_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct HeraldMetrics {
    double p = 0.0;
    double fidelity = 0.0;
    std::optional<double> p_effective;
    std::optional<double> fidelity_effective;
};

/// Probability of detecting `herald_pattern` on the non-output modes,
/// computed on the reduced state of those modes.
double herald_probability(const GaussianState& state, const ModeMap& map,
                          const PhotonPattern& herald_pattern);

/// Conditional fidelity of the heralded output with the target:
/// F = |sum_k conj(c_k) amp(pattern_k joined with herald)|^2 / p.
double heralded_fidelity(const PureAmplitudeForm& form, const ModeMap& map,
                         const PhotonPattern& herald_pattern,
                         const TargetState& target, double p);

/// Metrics after an additional non-vacuum filter on every dual-rail pair.
/// p_eff is exact: inclusion-exclusion over pair-vacuum events, each term a
/// Gaussian reduced-state probability.
std::pair<double, double> postselected_metrics(const GaussianState& state,
                                               const PureAmplitudeForm& form,
                                               const ModeMap& map,
                                               const PhotonPattern& herald_pattern,
                                               const TargetState& target);

/// f = -w1 ln(p) - w2 ln(F) + eps |xi|^2; +inf when p or F is non-positive.
double cost(double p, double fidelity, const Eigen::VectorXd& xi,
            double w1 = 10.0, double w2 = 1.0, double eps = 1e-4);

/// Builds the circuit state for (spec, xi) and evaluates all metrics against
/// `target` under the default herald pattern.
HeraldMetrics evaluate(const CircuitSpec& spec, const ParameterVector& xi,
                       const TargetState& target, bool postselect = false);

} // namespace heraldic

#endif
