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

#include "heraldic/fock.hpp"

#include <stdexcept>

namespace heraldic {

using cplx = std::complex<double>;

namespace {

// Interleaved (q1,p1,...) vector/matrix restricted to grouped (q..., p...).
Eigen::MatrixXd to_grouped(const Eigen::MatrixXd& v, int m) {
    Eigen::MatrixXd g(2 * m, 2 * m);
    auto gi = [m](int i) { return i < m ? 2 * i : 2 * (i - m) + 1; };
    for (int i = 0; i < 2 * m; ++i)
        for (int j = 0; j < 2 * m; ++j) g(i, j) = v(gi(i), gi(j));
    return g;
}

Eigen::VectorXd to_grouped_vec(const Eigen::VectorXd& v, int m) {
    Eigen::VectorXd g(2 * m);
    for (int i = 0; i < m; ++i) {
        g(i) = v(2 * i);
        g(m + i) = v(2 * i + 1);
    }
    return g;
}

} // namespace

HusimiForm husimi_form(const GaussianState& state) {
    const int m = state.n_modes;
    const Eigen::MatrixXd vg = to_grouped(state.cov, m);

    // T maps grouped quadratures to (a, a^dag): a = (q + ip)/sqrt(2).
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < m; ++i) {
        t(i, i) = inv_sqrt2;
        t(i, m + i) = cplx(0.0, inv_sqrt2);
        t(m + i, i) = inv_sqrt2;
        t(m + i, m + i) = cplx(0.0, -inv_sqrt2);
    }

    HusimiForm h;
    h.n_modes = m;
    h.v_q = t * vg.cast<cplx>() * t.adjoint() +
            0.5 * Eigen::MatrixXcd::Identity(2 * m, 2 * m);

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(h.v_q);
    const cplx det = lu.determinant();
    if (!(det.real() > 1e-12) || std::abs(det.imag()) > 1e-8 * std::abs(det))
        throw std::invalid_argument("husimi_form: singular or unphysical V_Q");
    h.sqrt_det_vq = std::sqrt(det.real());

    const Eigen::MatrixXcd vq_inv =
        lu.solve(Eigen::MatrixXcd::Identity(2 * m, 2 * m));
    Eigen::MatrixXcd x_swap = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    x_swap.topRightCorner(m, m) = Eigen::MatrixXcd::Identity(m, m);
    x_swap.bottomLeftCorner(m, m) = Eigen::MatrixXcd::Identity(m, m);
    Eigen::MatrixXcd a =
        x_swap * (Eigen::MatrixXcd::Identity(2 * m, 2 * m) - vq_inv);
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8)
        throw std::invalid_argument("husimi_form: kernel asymmetry exceeds tolerance");
    h.a = 0.5 * (a + a.transpose().eval());

    h.f = Eigen::VectorXcd::Zero(2 * m);
    if (state.mean.cwiseAbs().maxCoeff() > 1e-12) {
        const Eigen::VectorXd xg = to_grouped_vec(state.mean, m);
        const Eigen::VectorXcd xc = t * xg.cast<cplx>();
        // Row vector F = x^dag V_Q^{-1}, stored as a column.
        h.f = vq_inv.transpose() * xc.conjugate();
        const cplx quad = xc.dot(vq_inv * xc);  // x^dag V_Q^{-1} x
        h.exp_prefactor = std::exp(-0.5 * quad.real());
        h.displaced = true;
    }
    return h;
}

double fock_probability(const HusimiForm& form, const PhotonPattern& pattern,
                        bool force_loop_path) {
    if (static_cast<int>(pattern.size()) != form.n_modes)
        throw std::invalid_argument("fock_probability: pattern length mismatch");
    const Eigen::MatrixXcd a_s = hafnian::repeated_submatrix(form.a, pattern);
    cplx val;
    if (form.displaced || force_loop_path) {
        std::vector<int> counts(2 * form.n_modes);
        for (int j = 0; j < form.n_modes; ++j)
            counts[j] = counts[form.n_modes + j] = pattern[j];
        const Eigen::VectorXcd loops = hafnian::repeat_entries(form.f, counts);
        val = hafnian::loop_hafnian(a_s, loops);
    } else {
        val = hafnian::hafnian(a_s);
    }
    const double denom = pattern_factorial(pattern) * form.sqrt_det_vq;
    const cplx p_complex = form.exp_prefactor * val / denom;
    if (std::abs(p_complex.imag()) > 1e-8)
        throw std::runtime_error("fock_probability: non-real probability");
    double p = p_complex.real();
    if (p < -1e-9)
        throw std::runtime_error("fock_probability: negative probability");
    return std::clamp(p, 0.0, 1.0);
}

double fock_probability(const GaussianState& state, const PhotonPattern& pattern) {
    return fock_probability(husimi_form(state), pattern);
}

PureAmplitudeForm pure_amplitude_form(const GaussianState& state) {
    if (std::abs(purity_det(state) - 1.0) > 1e-6)
        throw std::invalid_argument("pure_amplitude_form: state is not pure");
    if (state.mean.size() > 0 && state.mean.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("pure_amplitude_form: state is displaced");
    const HusimiForm h = husimi_form(state);
    const int m = state.n_modes;
    // Pure states factorize as A = B (+) conj(B) over (modes, conjugates).
    const double off = std::max(h.a.topRightCorner(m, m).cwiseAbs().maxCoeff(),
                                h.a.bottomLeftCorner(m, m).cwiseAbs().maxCoeff());
    const double conj_dev =
        (h.a.bottomRightCorner(m, m) - h.a.topLeftCorner(m, m).conjugate())
            .cwiseAbs()
            .maxCoeff();
    if (off > 1e-8 || conj_dev > 1e-8)
        throw std::invalid_argument("pure_amplitude_form: kernel block structure violated");
    PureAmplitudeForm form;
    form.n_modes = m;
    form.b = h.a.bottomRightCorner(m, m);
    form.prefactor = 1.0 / std::sqrt(h.sqrt_det_vq);
    return form;
}

cplx fock_amplitude(const PureAmplitudeForm& form, const PhotonPattern& pattern) {
    if (static_cast<int>(pattern.size()) != form.n_modes)
        throw std::invalid_argument("fock_amplitude: pattern length mismatch");
    const Eigen::MatrixXcd b_s = hafnian::repeat_indices(form.b, pattern);
    return form.prefactor * hafnian::hafnian(b_s) /
           std::sqrt(pattern_factorial(pattern));
}

std::vector<PhotonPattern> enumerate_patterns(int modes, int total_cutoff,
                                              int per_mode_cutoff) {
    std::vector<PhotonPattern> out;
    PhotonPattern cur(modes, 0);
    // Odometer over per-mode counts with a running total bound.
    while (true) {
        if (total_photons(cur) <= total_cutoff) out.push_back(cur);
        int i = 0;
        while (i < modes) {
            if (cur[i] < per_mode_cutoff) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            ++i;
        }
        if (i == modes) break;
    }
    return out;
}

} // namespace heraldic
