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

#ifndef HERALDIC_SIMD_KERNELS_HPP
#define HERALDIC_SIMD_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace heraldic::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Backend selected at startup from CPU features; the HERALDIC_SIMD
/// environment variable ("scalar" or "avx2") overrides the autodetection.
Backend active_backend();
const char* backend_name();

/// y += alpha * x
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);

/// sum_i x_i * y_i (unconjugated)
cplx cdotu(std::size_t n, const cplx* x, const cplx* y);

/// sum_i conj(x_i) * y_i
cplx cdotc(std::size_t n, const cplx* x, const cplx* y);

/// y = A * x for a column-major dense A with `rows` rows, `cols` columns and
/// leading dimension lda. Built on caxpy so it inherits the active backend.
void cmatvec(std::size_t rows, std::size_t cols, const cplx* a, std::size_t lda,
             const cplx* x, cplx* y);

namespace detail {

void scalar_caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx scalar_cdotu(std::size_t n, const cplx* x, const cplx* y);
cplx scalar_cdotc(std::size_t n, const cplx* x, const cplx* y);

#ifdef HERALDIC_BUILD_AVX2
void avx2_caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx avx2_cdotu(std::size_t n, const cplx* x, const cplx* y);
cplx avx2_cdotc(std::size_t n, const cplx* x, const cplx* y);
#endif

} // namespace detail

} // namespace heraldic::simd

#endif
