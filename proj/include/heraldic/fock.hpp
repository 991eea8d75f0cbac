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

#ifndef HERALDIC_FOCK_HPP
#define HERALDIC_FOCK_HPP

#include "heraldic/hafnian.hpp"
#include "heraldic/symplectic.hpp"

#include <complex>

namespace heraldic {

// Complex-mode basis ordering inside the doubled 2M space is
// (a_1..a_M, a_1^dag..a_M^dag).

/// Husimi representation of a Gaussian state: the quantities entering the
/// hafnian probability formula.
struct HusimiForm {
    int n_modes = 0;
    Eigen::MatrixXcd v_q;       // Husimi covariance, Hermitian positive definite
    Eigen::MatrixXcd a;         // complex symmetric kernel
    Eigen::VectorXcd f;         // loop vector, zero unless displaced
    bool displaced = false;
    double sqrt_det_vq = 1.0;
    double exp_prefactor = 1.0; // exp(-x^dag V_Q^{-1} x / 2)
};

/// Fock amplitudes of a pure zero-mean Gaussian state:
/// amp(n) = prefactor * Haf(B_n) / sqrt(n!).
struct PureAmplitudeForm {
    int n_modes = 0;
    Eigen::MatrixXcd b;   // complex symmetric, spectral norm < 1
    double prefactor = 1.0;
};

HusimiForm husimi_form(const GaussianState& state);

double fock_probability(const HusimiForm& form, const PhotonPattern& pattern,
                        bool force_loop_path = false);
double fock_probability(const GaussianState& state, const PhotonPattern& pattern);

/// Requires a pure (det 2V = 1 within 1e-6) zero-mean state.
PureAmplitudeForm pure_amplitude_form(const GaussianState& state);

std::complex<double> fock_amplitude(const PureAmplitudeForm& form,
                                    const PhotonPattern& pattern);

/// All photon patterns over `modes` modes with total photons <= total_cutoff
/// and per-mode counts <= per_mode_cutoff.
std::vector<PhotonPattern> enumerate_patterns(int modes, int total_cutoff,
                                              int per_mode_cutoff);

} // namespace heraldic

#endif
