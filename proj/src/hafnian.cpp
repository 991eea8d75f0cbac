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

#include "heraldic/hafnian.hpp"
#include "heraldic/simd_kernels.hpp"

#include <numeric>
#include <stdexcept>

namespace heraldic {

int total_photons(const PhotonPattern& pattern) {
    int total = 0;
    for (int c : pattern) {
        if (c < 0) throw std::invalid_argument("negative photon count");
        total += c;
    }
    return total;
}

double pattern_factorial(const PhotonPattern& pattern) {
    double f = 1.0;
    for (int c : pattern)
        for (int k = 2; k <= c; ++k) f *= k;
    return f;
}

namespace hafnian {

void require_symmetric(const Eigen::MatrixXcd& m, double rtol) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hafnian: matrix must be square");
    if (m.rows() == 0) return;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > rtol * scale)
        throw std::invalid_argument("hafnian: matrix is not symmetric");
}

namespace {

constexpr int kOracleMaxDim = 12;

// Recursive matching enumeration over the remaining index list.
cplx matchings(const Eigen::MatrixXcd& m, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int first = idx.front();
    cplx total = 0.0;
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const int partner = idx[j];
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (k != j) rest.push_back(idx[k]);
        total += m(first, partner) * matchings(m, rest);
    }
    return total;
}

cplx loop_matchings(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& loops,
                    std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int first = idx.front();
    std::vector<int> rest(idx.begin() + 1, idx.end());
    cplx total = loops(first) * loop_matchings(m, loops, rest);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        std::vector<int> rest2;
        rest2.reserve(rest.size() - 1);
        for (std::size_t k = 0; k < rest.size(); ++k)
            if (k != j) rest2.push_back(rest[k]);
        total += m(first, rest[j]) * loop_matchings(m, loops, rest2);
    }
    return total;
}

// Coefficients of exp(sum_k b[k] z^k) truncated at z^order; b is 1-based
// conceptually, stored b[0] = z^1 coefficient.
std::vector<cplx> poly_exp(const std::vector<cplx>& b, int order) {
    std::vector<cplx> q(order + 1, 0.0);
    q[0] = 1.0;
    for (int j = 1; j <= order; ++j) {
        cplx acc = 0.0;
        for (int k = 1; k <= j; ++k) acc += double(k) * b[k - 1] * q[j - k];
        q[j] = acc / double(j);
    }
    return q;
}

// Partner index inside the consecutive-pair partition: 2k <-> 2k+1.
inline int pair_partner(int i) { return i ^ 1; }

// One inclusion-exclusion term: z^m coefficient of the generating function
// of the pair subset encoded by `sel` (pair indices), with optional loops.
cplx subset_term(const Eigen::MatrixXcd& a, const Eigen::VectorXcd* loops,
                 const std::vector<int>& sel, int m) {
    const int s = static_cast<int>(sel.size());
    const int dim = 2 * s;
    // B = X A_S with X the per-pair swap.
    Eigen::MatrixXcd asub(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r)
            asub(r, c) = a(2 * sel[r / 2] + r % 2, 2 * sel[c / 2] + c % 2);
    Eigen::MatrixXcd b(dim, dim);
    for (int r = 0; r < dim; ++r) b.row(r) = asub.row(pair_partner(r));

    std::vector<cplx> traces = detail::power_traces(b, m);
    std::vector<cplx> coeff(m);
    for (int k = 1; k <= m; ++k) coeff[k - 1] = traces[k - 1] / double(2 * k);

    if (loops) {
        Eigen::VectorXcd v(dim);
        for (int r = 0; r < dim; ++r) v(r) = (*loops)(2 * sel[r / 2] + r % 2);
        // w_1 = X v, w_{k+1} = B w_k; loop correction E_k = v.w_k / 2.
        Eigen::VectorXcd w(dim), wn(dim);
        for (int r = 0; r < dim; ++r) w(r) = v(pair_partner(r));
        for (int k = 1; k <= m; ++k) {
            coeff[k - 1] += 0.5 * simd::cdotu(dim, v.data(), w.data());
            if (k < m) {
                simd::cmatvec(dim, dim, b.data(), dim, w.data(), wn.data());
                w.swap(wn);
            }
        }
    }
    return poly_exp(coeff, m)[m];
}

cplx powertrace_hafnian(const Eigen::MatrixXcd& a, const Eigen::VectorXcd* loops) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    const int m = n / 2;
    cplx total = 0.0;
    std::vector<int> sel;
    sel.reserve(m);
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        sel.clear();
        for (int p = 0; p < m; ++p)
            if (mask & (1u << p)) sel.push_back(p);
        const double sign = ((m - sel.size()) % 2 == 0) ? 1.0 : -1.0;
        total += sign * subset_term(a, loops, sel, m);
    }
    return total;
}

} // namespace

cplx hafnian_bruteforce(const Eigen::MatrixXcd& m) {
    require_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n > kOracleMaxDim)
        throw std::invalid_argument("hafnian_bruteforce: dimension too large");
    if (n % 2 != 0) return 0.0;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return matchings(m, idx);
}

cplx loop_hafnian_bruteforce(const Eigen::MatrixXcd& m,
                             const Eigen::VectorXcd& loops) {
    require_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n > kOracleMaxDim)
        throw std::invalid_argument("loop_hafnian_bruteforce: dimension too large");
    if (loops.size() != n)
        throw std::invalid_argument("loop_hafnian_bruteforce: loops length mismatch");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return loop_matchings(m, loops, idx);
}

cplx hafnian(const Eigen::MatrixXcd& m) {
    require_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1.0;
    if (n % 2 != 0) return 0.0;
    return powertrace_hafnian(m, nullptr);
}

cplx loop_hafnian(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& loops) {
    require_symmetric(m);
    int n = static_cast<int>(m.rows());
    if (loops.size() != n)
        throw std::invalid_argument("loop_hafnian: loops length mismatch");
    if (n == 0) return 1.0;
    Eigen::MatrixXcd a = m;
    Eigen::VectorXcd d = loops;
    a.diagonal() = d;
    if (n % 2 != 0) {
        // Pad with an uncoupled index carrying a unit self-loop.
        Eigen::MatrixXcd ap = Eigen::MatrixXcd::Zero(n + 1, n + 1);
        ap.topLeftCorner(n, n) = a;
        ap(n, n) = 1.0;
        Eigen::VectorXcd dp(n + 1);
        dp.head(n) = d;
        dp(n) = 1.0;
        a = ap;
        d = dp;
        ++n;
    }
    return powertrace_hafnian(a, &d);
}

Eigen::MatrixXcd repeat_indices(const Eigen::MatrixXcd& m,
                                const std::vector<int>& counts) {
    if (static_cast<Eigen::Index>(counts.size()) != m.rows())
        throw std::invalid_argument("repeat_indices: counts length mismatch");
    std::vector<int> idx;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) throw std::invalid_argument("repeat_indices: negative count");
        for (int k = 0; k < counts[i]; ++k) idx.push_back(static_cast<int>(i));
    }
    Eigen::MatrixXcd out(idx.size(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t r = 0; r < idx.size(); ++r)
            out(r, c) = m(idx[r], idx[c]);
    return out;
}

Eigen::VectorXcd repeat_entries(const Eigen::VectorXcd& v,
                                const std::vector<int>& counts) {
    if (static_cast<Eigen::Index>(counts.size()) != v.size())
        throw std::invalid_argument("repeat_entries: counts length mismatch");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (int k = 0; k < counts[i]; ++k) out.push_back(v(i));
    return Eigen::Map<Eigen::VectorXcd>(out.data(), out.size());
}

Eigen::MatrixXcd repeated_submatrix(const Eigen::MatrixXcd& m,
                                    const PhotonPattern& pattern) {
    const int modes = static_cast<int>(pattern.size());
    if (m.rows() != 2 * modes)
        throw std::invalid_argument("repeated_submatrix: pattern length mismatch");
    std::vector<int> counts(2 * modes);
    for (int j = 0; j < modes; ++j) {
        counts[j] = pattern[j];
        counts[modes + j] = pattern[j];
    }
    return repeat_indices(m, counts);
}

namespace detail {

void hessenberg_reduce(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (n < 3) return;
    std::vector<cplx> v(n), u(n);
    for (int k = 0; k + 2 < n; ++k) {
        const int len = n - k - 1;
        cplx* x = &a(k + 1, k);
        const double normx = std::sqrt(simd::cdotc(len, x, x).real());
        if (normx == 0.0) continue;
        const cplx x0 = x[0];
        const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -phase * normx;
        for (int i = 0; i < len; ++i) v[i] = x[i];
        v[0] -= alpha;
        const double vnorm2 = simd::cdotc(len, v.data(), v.data()).real();
        if (vnorm2 < 1e-300) continue;
        const double tau = 2.0 / vnorm2;
        x[0] = alpha;
        for (int i = 1; i < len; ++i) x[i] = 0.0;
        // Left: rows k+1..n-1 of columns k+1..n-1.
        for (int j = k + 1; j < n; ++j) {
            cplx* col = &a(k + 1, j);
            const cplx w = simd::cdotc(len, v.data(), col);
            simd::caxpy(len, -tau * w, v.data(), col);
        }
        // Right: all rows of columns k+1..n-1.
        for (int i = 0; i < n; ++i) u[i] = 0.0;
        for (int j = k + 1; j < n; ++j)
            simd::caxpy(n, v[j - k - 1], &a(0, j), u.data());
        for (int j = k + 1; j < n; ++j)
            simd::caxpy(n, -tau * std::conj(v[j - k - 1]), u.data(), &a(0, j));
    }
}

std::vector<cplx> hessenberg_charpoly(const Eigen::MatrixXcd& h) {
    const int n = static_cast<int>(h.rows());
    // p[k] holds the characteristic polynomial of the leading k x k block,
    // coefficient of x^j at position j.
    std::vector<std::vector<cplx>> p(n + 1);
    p[0] = {1.0};
    for (int k = 1; k <= n; ++k) {
        std::vector<cplx> pk(k + 1, 0.0);
        // (x - h_{k-1,k-1}) * p[k-1]
        for (int j = 0; j < k; ++j) {
            pk[j + 1] += p[k - 1][j];
            pk[j] -= h(k - 1, k - 1) * p[k - 1][j];
        }
        cplx beta = 1.0;
        for (int m = k - 1; m >= 1; --m) {
            beta *= h(m, m - 1);
            const cplx c = beta * h(m - 1, k - 1);
            for (int j = 0; j < m; ++j) pk[j] -= c * p[m - 1][j];
        }
        p[k] = std::move(pk);
    }
    std::vector<cplx> a(n);
    for (int i = 1; i <= n; ++i) a[i - 1] = p[n][n - i];
    return a;
}

std::vector<cplx> power_traces(const Eigen::MatrixXcd& b, int kmax) {
    const int n = static_cast<int>(b.rows());
    Eigen::MatrixXcd h = b;
    hessenberg_reduce(h);
    const std::vector<cplx> a = hessenberg_charpoly(h);
    std::vector<cplx> t(kmax, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        cplx acc = 0.0;
        const int jmax = std::min(k - 1, n);
        for (int j = 1; j <= jmax; ++j) acc += a[j - 1] * t[k - j - 1];
        if (k <= n) acc += double(k) * a[k - 1];
        t[k - 1] = -acc;
    }
    return t;
}

} // namespace detail

} // namespace hafnian
} // namespace heraldic
