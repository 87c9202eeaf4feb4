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

namespace eosim {
namespace kernels {

void exchange_scalar(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                     std::complex<double> b) {
    const size_t mi = size_t{1} << i;
    const size_t mj = size_t{1} << j;
    for (size_t s = 0; s < dim; s++) {
        if ((s & mi) && !(s & mj)) {
            size_t t = s ^ mi ^ mj;
            std::complex<double> xs = amps[s];
            std::complex<double> xt = amps[t];
            amps[s] = a * xs + b * xt;
            amps[t] = b * xs + a * xt;
        }
    }
}

void diag_multiply_scalar(std::complex<double> *amps, const std::complex<double> *phases, size_t dim) {
    for (size_t s = 0; s < dim; s++) {
        amps[s] *= phases[s];
    }
}

}  // namespace kernels
}  // namespace eosim
