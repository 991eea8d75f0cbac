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

#include "heraldic/symplectic.hpp"

#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

namespace heraldic {

using cplx = std::complex<double>;

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("vacuum_state: n_modes must be >= 1");
    GaussianState st;
    st.n_modes = n_modes;
    st.mean = Eigen::VectorXd::Zero(2 * n_modes);
    st.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return st;
}

double purity_det(const GaussianState& state) {
    return (2.0 * state.cov).determinant();
}

SymplecticTransform single_mode_squeezer(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("squeezer: r must be finite");
    SymplecticTransform t;
    t.s = Eigen::MatrixXd::Zero(2, 2);
    t.s(0, 0) = std::exp(-r);
    t.s(1, 1) = std::exp(r);
    t.d = Eigen::VectorXd::Zero(2);
    return t;
}

SymplecticTransform two_mode_squeezer(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("two_mode_squeezer: r must be finite");
    const double c = std::cosh(r), s = std::sinh(r);
    SymplecticTransform t;
    t.s = Eigen::MatrixXd::Zero(4, 4);
    // q1' = c q1 + s q2, p1' = c p1 - s p2 and symmetrically for mode 2.
    t.s(0, 0) = c; t.s(0, 2) = s;
    t.s(1, 1) = c; t.s(1, 3) = -s;
    t.s(2, 2) = c; t.s(2, 0) = s;
    t.s(3, 3) = c; t.s(3, 1) = -s;
    t.d = Eigen::VectorXd::Zero(4);
    return t;
}

SymplecticTransform beamsplitter(double theta, double phi) {
    Eigen::MatrixXcd u(2, 2);
    const cplx ephi = std::exp(cplx(0.0, phi));
    u << std::cos(theta), -ephi * std::sin(theta),
         std::conj(ephi) * std::sin(theta), std::cos(theta);
    return unitary_to_symplectic(u);
}

std::vector<int> mesh_layout(int n_modes) {
    std::vector<int> pairs;
    for (int layer = 0; layer < n_modes; ++layer)
        for (int i = layer % 2; i + 1 < n_modes; i += 2)
            pairs.push_back(i);
    return pairs;
}

Eigen::MatrixXcd mesh_unitary(const InterferometerMesh& mesh) {
    const int n = mesh.n_modes;
    if (n < 1) throw std::invalid_argument("mesh_unitary: empty mesh");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (const MeshCell& cell : mesh.cells) {
        if (cell.pair < 0 || cell.pair + 1 >= n)
            throw std::out_of_range("mesh_unitary: cell mode index out of range");
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(n, n);
        const cplx ephi = std::exp(cplx(0.0, cell.phi));
        const double c = std::cos(cell.theta), s = std::sin(cell.theta);
        t(cell.pair, cell.pair) = c;
        t(cell.pair, cell.pair + 1) = -ephi * s;
        t(cell.pair + 1, cell.pair) = std::conj(ephi) * s;
        t(cell.pair + 1, cell.pair + 1) = c;
        u = t * u;
    }
    if (mesh.output_phases.size() > 0) {
        if (mesh.output_phases.size() != n)
            throw std::invalid_argument("mesh_unitary: output phase count mismatch");
        Eigen::VectorXcd diag(n);
        for (int i = 0; i < n; ++i) diag(i) = std::exp(cplx(0.0, mesh.output_phases(i)));
        u = diag.asDiagonal() * u;
    }
    return u;
}

SymplecticTransform unitary_to_symplectic(const Eigen::MatrixXcd& u, double tol) {
    const int n = static_cast<int>(u.rows());
    if (u.cols() != n) throw std::invalid_argument("unitary_to_symplectic: non-square input");
    const double dev =
        (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > tol)
        throw std::invalid_argument("unitary_to_symplectic: input is not unitary");
    SymplecticTransform t;
    t.s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            const double re = u(k, j).real(), im = u(k, j).imag();
            t.s(2 * k, 2 * j) = re;
            t.s(2 * k, 2 * j + 1) = -im;
            t.s(2 * k + 1, 2 * j) = im;
            t.s(2 * k + 1, 2 * j + 1) = re;
        }
    t.d = Eigen::VectorXd::Zero(2 * n);
    return t;
}

namespace {

void check_mode_subset(const std::vector<int>& modes, int n_modes, int expected) {
    if (expected >= 0 && static_cast<int>(modes.size()) != expected)
        throw std::invalid_argument("mode list size does not match transform");
    std::set<int> seen;
    for (int m : modes) {
        if (m < 0 || m >= n_modes) throw std::out_of_range("mode index out of range");
        if (!seen.insert(m).second)
            throw std::invalid_argument("duplicate mode index");
    }
}

} // namespace

GaussianState apply(const SymplecticTransform& t, const GaussianState& state,
                    const std::vector<int>& modes) {
    check_mode_subset(modes, state.n_modes, t.n_modes());
    const int dim = 2 * state.n_modes;
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd dfull = Eigen::VectorXd::Zero(dim);
    for (std::size_t a = 0; a < modes.size(); ++a) {
        for (int alpha = 0; alpha < 2; ++alpha) {
            dfull(2 * modes[a] + alpha) = t.d(2 * a + alpha);
            for (std::size_t b = 0; b < modes.size(); ++b)
                for (int beta = 0; beta < 2; ++beta) {
                    const int row = 2 * modes[a] + alpha;
                    const int col = 2 * modes[b] + beta;
                    full(row, col) = t.s(2 * a + alpha, 2 * b + beta);
                }
        }
    }
    GaussianState out;
    out.n_modes = state.n_modes;
    out.mean = full * state.mean + dfull;
    out.cov = full * state.cov * full.transpose();
    return out;
}

GaussianState partial_trace(const GaussianState& state,
                            const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    check_mode_subset(keep, state.n_modes, -1);
    GaussianState out;
    out.n_modes = static_cast<int>(keep.size());
    out.mean = Eigen::VectorXd(2 * out.n_modes);
    out.cov = Eigen::MatrixXd(2 * out.n_modes, 2 * out.n_modes);
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (int alpha = 0; alpha < 2; ++alpha) {
            out.mean(2 * a + alpha) = state.mean(2 * keep[a] + alpha);
            for (std::size_t b = 0; b < keep.size(); ++b)
                for (int beta = 0; beta < 2; ++beta)
                    out.cov(2 * a + alpha, 2 * b + beta) =
                        state.cov(2 * keep[a] + alpha, 2 * keep[b] + beta);
        }
    return out;
}

} // namespace heraldic
