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

#ifndef HERALDIC_HAFNIAN_HPP
#define HERALDIC_HAFNIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace heraldic {

/// Photon counts, one entry per mode.
using PhotonPattern = std::vector<int>;

int total_photons(const PhotonPattern& pattern);
double pattern_factorial(const PhotonPattern& pattern);

namespace hafnian {

using cplx = std::complex<double>;

/// Throws std::invalid_argument unless m equals its transpose within rtol
/// (relative to the largest entry magnitude).
void require_symmetric(const Eigen::MatrixXcd& m, double rtol = 1e-10);

/// Exact sum over perfect matchings. Enumeration oracle, dimension <= 12.
cplx hafnian_bruteforce(const Eigen::MatrixXcd& m);

/// Exact sum over matchings allowing self-pairings weighted by `loops`.
/// Enumeration oracle, dimension <= 12.
cplx loop_hafnian_bruteforce(const Eigen::MatrixXcd& m,
                             const Eigen::VectorXcd& loops);

/// Production hafnian: inclusion-exclusion over index pairs with power
/// traces from a Hessenberg characteristic-polynomial reduction,
/// O(n^3 2^(n/2)) overall.
cplx hafnian(const Eigen::MatrixXcd& m);

/// Production loop hafnian; the diagonal of m is ignored and replaced by
/// `loops`. Odd dimensions are handled by padding with a unit self-loop.
cplx loop_hafnian(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& loops);

/// Repeats row/column i of m counts[i] times (0 removes it).
Eigen::MatrixXcd repeat_indices(const Eigen::MatrixXcd& m,
                                const std::vector<int>& counts);
Eigen::VectorXcd repeat_entries(const Eigen::VectorXcd& v,
                                const std::vector<int>& counts);

/// For a 2M x 2M matrix in the doubled (modes, conjugate modes) layout,
/// repeats index j and M+j pattern[j] times each.
Eigen::MatrixXcd repeated_submatrix(const Eigen::MatrixXcd& m,
                                    const PhotonPattern& pattern);

namespace detail {
/// In-place unitary-similarity reduction to upper Hessenberg form.
void hessenberg_reduce(Eigen::MatrixXcd& a);
/// Monic characteristic polynomial coefficients a_1..a_n of an upper
/// Hessenberg matrix: p(x) = x^n + a_1 x^(n-1) + ... + a_n.
std::vector<cplx> hessenberg_charpoly(const Eigen::MatrixXcd& h);
/// Power sums tr(B^k), k = 1..kmax, via Newton's identities.
std::vector<cplx> power_traces(const Eigen::MatrixXcd& b, int kmax);
} // namespace detail

} // namespace hafnian
} // namespace heraldic

#endif
