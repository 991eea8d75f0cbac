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

#include "heraldic/simd_kernels.hpp"

#ifdef HERALDIC_BUILD_AVX2

#include <immintrin.h>

namespace heraldic::simd::detail {

// Two complex doubles per ymm register, interleaved (re, im, re, im).

void avx2_caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // swap re/im
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
    }
    if (i < n) scalar_caxpy(n - i, alpha, x + i, y + i);
}

static inline cplx reduce_accum(__m256d acc_re_im) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc_re_im);
    return {lanes[0] + lanes[2], lanes[1] + lanes[3]};
}

cplx avx2_cdotu(std::size_t n, const cplx* x, const cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xr = _mm256_movedup_pd(xv);            // (xr, xr)
        const __m256d xi = _mm256_permute_pd(xv, 0b1111);    // (xi, xi)
        const __m256d ys = _mm256_permute_pd(yv, 0b0101);    // (yi, yr)
        // even: xr*yr - xi*yi, odd: xr*yi + xi*yr
        acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xr, yv, _mm256_mul_pd(xi, ys)));
    }
    cplx r = reduce_accum(acc);
    if (i < n) r += scalar_cdotu(n - i, x + i, y + i);
    return r;
}

cplx avx2_cdotc(std::size_t n, const cplx* x, const cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xr = _mm256_movedup_pd(xv);
        const __m256d xi = _mm256_permute_pd(xv, 0b1111);
        const __m256d ys = _mm256_permute_pd(yv, 0b0101);
        // even: xr*yr + xi*yi, odd: xr*yi - xi*yr
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, ys)));
    }
    cplx r = reduce_accum(acc);
    if (i < n) r += scalar_cdotc(n - i, x + i, y + i);
    return r;
}

} // namespace heraldic::simd::detail

#endif // HERALDIC_BUILD_AVX2
