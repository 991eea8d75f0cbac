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

namespace heraldic::simd::detail {

// Reference kernels. Written over the raw re/im lanes so the compiler does
// not have to reassociate through std::complex operator overloads.

void scalar_caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    const double* xr = reinterpret_cast<const double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = xr[2 * i], b = xr[2 * i + 1];
        yr[2 * i] += ar * a - ai * b;
        yr[2 * i + 1] += ar * b + ai * a;
    }
}

cplx scalar_cdotu(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = xr[2 * i], b = xr[2 * i + 1];
        const double c = yr[2 * i], d = yr[2 * i + 1];
        re += a * c - b * d;
        im += a * d + b * c;
    }
    return {re, im};
}

cplx scalar_cdotc(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = xr[2 * i], b = xr[2 * i + 1];
        const double c = yr[2 * i], d = yr[2 * i + 1];
        re += a * c + b * d;
        im += a * d - b * c;
    }
    return {re, im};
}

} // namespace heraldic::simd::detail
