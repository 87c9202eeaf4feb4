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

#ifndef EOSIM_TEST_UTIL_H
#define EOSIM_TEST_UTIL_H

#include <random>

#include "eosim/spin_core.h"

namespace eosim {

inline StateVector random_state(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    StateVector s(n);
    for (auto &a : s.amps) {
        a = {g(rng), g(rng)};
    }
    s.normalize();
    return s;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    double m = 0;
    for (size_t k = 0; k < a.dim(); k++) {
        m = std::max(m, std::abs(a.amps[k] - b.amps[k]));
    }
    return m;
}

inline StateVector apply_dense(const Eigen::MatrixXcd &u, const StateVector &s) {
    Eigen::VectorXcd v(s.dim());
    for (size_t k = 0; k < s.dim(); k++) {
        v(k) = s.amps[k];
    }
    Eigen::VectorXcd w = u * v;
    StateVector out = s;
    for (size_t k = 0; k < s.dim(); k++) {
        out.amps[k] = w(k);
    }
    return out;
}

}  // namespace eosim

#endif
