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

#ifdef EOSIM_SIMD_NEON

#include <arm_neon.h>

namespace eosim {
namespace kernels {

namespace {

inline float64x2_t cmul(float64x2_t v, double ar, double ai) {
    // (vr + i vi)(ar + i ai) = (vr ar - vi ai) + i (vi ar + vr ai)
    float64x2_t swapped = vextq_f64(v, v, 1);
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_n_f64(vmulq_n_f64(v, ar), vmulq_f64(swapped, sign), ai);
}

}  // namespace

void exchange_neon(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                   std::complex<double> b) {
    const size_t mi = size_t{1} << i;
    const size_t mj = size_t{1} << j;
    double *base = reinterpret_cast<double *>(amps);
    for (size_t s = 0; s < dim; s++) {
        if (!(s & mi) || (s & mj)) {
            continue;
        }
        size_t t = s ^ mi ^ mj;
        float64x2_t xs = vld1q_f64(base + 2 * s);
        float64x2_t xt = vld1q_f64(base + 2 * t);
        vst1q_f64(base + 2 * s, vaddq_f64(cmul(xs, a.real(), a.imag()), cmul(xt, b.real(), b.imag())));
        vst1q_f64(base + 2 * t, vaddq_f64(cmul(xs, b.real(), b.imag()), cmul(xt, a.real(), a.imag())));
    }
}

void diag_multiply_neon(std::complex<double> *amps, const std::complex<double> *phases, size_t dim) {
    double *x = reinterpret_cast<double *>(amps);
    for (size_t s = 0; s < dim; s++) {
        float64x2_t xv = vld1q_f64(x + 2 * s);
        vst1q_f64(x + 2 * s, cmul(xv, phases[s].real(), phases[s].imag()));
    }
}

}  // namespace kernels
}  // namespace eosim

#endif
