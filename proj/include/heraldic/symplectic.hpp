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

#ifndef HERALDIC_SYMPLECTIC_HPP
#define HERALDIC_SYMPLECTIC_HPP

#include <Eigen/Dense>
#include <vector>

namespace heraldic {

// Quadrature ordering is interleaved (q1, p1, ..., qN, pN) throughout, with
// vacuum covariance I/2. Squeezers squeeze q for r > 0.

/// Multimode Gaussian state: first and second quadrature moments.
struct GaussianState {
    int n_modes = 0;
    Eigen::VectorXd mean;  // length 2 * n_modes
    Eigen::MatrixXd cov;   // 2N x 2N, symmetric
};

/// Linear phase-space map x -> s x + d.
struct SymplecticTransform {
    Eigen::MatrixXd s;
    Eigen::VectorXd d;

    int n_modes() const { return static_cast<int>(s.rows()) / 2; }
};

struct MeshCell {
    int pair = 0;  // acts on modes (pair, pair + 1)
    double theta = 0.0;
    double phi = 0.0;
};

/// Rectangular beamsplitter mesh plus output phases; all-zero parameters
/// realize the identity.
struct InterferometerMesh {
    int n_modes = 0;
    std::vector<MeshCell> cells;
    Eigen::VectorXd output_phases;
};

/// Standard symplectic form for the interleaved ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

GaussianState vacuum_state(int n_modes);

/// det(2V); equals 1 for pure states.
double purity_det(const GaussianState& state);

SymplecticTransform single_mode_squeezer(double r);
SymplecticTransform two_mode_squeezer(double r);

/// Two-mode beamsplitter with transmissivity cos^2(theta) and relative
/// phase phi.
SymplecticTransform beamsplitter(double theta, double phi);

/// Cell pair indices of the rectangular mesh layout for n modes,
/// n(n-1)/2 entries.
std::vector<int> mesh_layout(int n_modes);

Eigen::MatrixXcd mesh_unitary(const InterferometerMesh& mesh);

/// Embeds a passive N-mode unitary as an orthogonal symplectic on 2N
/// quadratures. Throws if u is not unitary within tol.
SymplecticTransform unitary_to_symplectic(const Eigen::MatrixXcd& u,
                                          double tol = 1e-8);

/// Applies t to the listed modes of the state; other modes are untouched.
GaussianState apply(const SymplecticTransform& t, const GaussianState& state,
                    const std::vector<int>& modes);

/// Restriction of mean and covariance to the kept modes.
GaussianState partial_trace(const GaussianState& state,
                            const std::vector<int>& keep);

} // namespace heraldic

#endif
