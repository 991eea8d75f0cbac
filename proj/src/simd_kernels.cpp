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

#include <cstdlib>
#include <cstring>

namespace heraldic::simd {

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("HERALDIC_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
#ifdef HERALDIC_BUILD_AVX2
        if (std::strcmp(env, "avx2") == 0) return Backend::Avx2;
#endif
    }
#ifdef HERALDIC_BUILD_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
    return Backend::Scalar;
}

const Backend g_backend = detect_backend();

} // namespace

Backend active_backend() { return g_backend; }

const char* backend_name() {
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
#ifdef HERALDIC_BUILD_AVX2
    if (g_backend == Backend::Avx2) {
        detail::avx2_caxpy(n, alpha, x, y);
        return;
    }
#endif
    detail::scalar_caxpy(n, alpha, x, y);
}

cplx cdotu(std::size_t n, const cplx* x, const cplx* y) {
#ifdef HERALDIC_BUILD_AVX2
    if (g_backend == Backend::Avx2) return detail::avx2_cdotu(n, x, y);
#endif
    return detail::scalar_cdotu(n, x, y);
}

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
#ifdef HERALDIC_BUILD_AVX2
    if (g_backend == Backend::Avx2) return detail::avx2_cdotc(n, x, y);
#endif
    return detail::scalar_cdotc(n, x, y);
}

void cmatvec(std::size_t rows, std::size_t cols, const cplx* a, std::size_t lda,
             const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = cplx(0.0, 0.0);
    for (std::size_t j = 0; j < cols; ++j)
        caxpy(rows, x[j], a + j * lda, y);
}

} // namespace heraldic::simd
