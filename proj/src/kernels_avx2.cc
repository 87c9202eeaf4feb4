// Copyright 2026 The eosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eosim/kernels.h"

#ifdef EOSIM_SIMD_AVX2

#include <immintrin.h>

namespace eosim {
namespace kernels {

namespace {

// Multiplies two packed complex doubles by the complex scalar (ar, ai).
__attribute__((target("avx2,fma"))) inline __m256d cmul_scalar(__m256d v, __m256d ar, __m256d ai) {
    __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

}  // namespace

__attribute__((target("avx2,fma"))) void exchange_avx2(std::complex<double> *amps, size_t dim, size_t i, size_t j,
                                                       std::complex<double> a, std::complex<double> b) {
    if (i > j) {
        std::swap(i, j);
    }
    if (i == 0) {
        // Partners of neighboring indices are not contiguous; nothing to vectorize.
        exchange_scalar(amps, dim, i, j, a, b);
        return;
    }
    const size_t mi = size_t{1} << i;
    const size_t mj = size_t{1} << j;
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real());
    const __m256d bi = _mm256_set1_pd(b.imag());
    double *base = reinterpret_cast<double *>(amps);
    for (size_t s = 0; s < dim; s += 2) {
        if (!(s & mi) || (s & mj)) {
            continue;
        }
        size_t t = s ^ mi ^ mj;
        __m256d xs = _mm256_loadu_pd(base + 2 * s);
        __m256d xt = _mm256_loadu_pd(base + 2 * t);
        __m256d ns = _mm256_add_pd(cmul_scalar(xs, ar, ai), cmul_scalar(xt, br, bi));
        __m256d nt = _mm256_add_pd(cmul_scalar(xs, br, bi), cmul_scalar(xt, ar, ai));
        _mm256_storeu_pd(base + 2 * s, ns);
        _mm256_storeu_pd(base + 2 * t, nt);
    }
}

__attribute__((target("avx2,fma"))) void diag_multiply_avx2(std::complex<double> *amps,
                                                            const std::complex<double> *phases, size_t dim) {
    double *x = reinterpret_cast<double *>(amps);
    const double *p = reinterpret_cast<const double *>(phases);
    size_t s = 0;
    for (; s + 2 <= dim; s += 2) {
        __m256d xv = _mm256_loadu_pd(x + 2 * s);
        __m256d pv = _mm256_loadu_pd(p + 2 * s);
        __m256d pr = _mm256_movedup_pd(pv);
        __m256d pi = _mm256_permute_pd(pv, 0b1111);
        __m256d xsw = _mm256_permute_pd(xv, 0b0101);
        _mm256_storeu_pd(x + 2 * s, _mm256_fmaddsub_pd(xv, pr, _mm256_mul_pd(xsw, pi)));
    }
    for (; s < dim; s++) {
        amps[s] *= phases[s];
    }
}

}  // namespace kernels
}  // namespace eosim

#endif
