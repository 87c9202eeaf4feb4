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

#include "eosim/spin_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "eosim/kernels.h"

namespace eosim {

StateVector::StateVector(size_t n) : n_spins(n), amps(size_t{1} << n, cplx{0, 0}) {
    if (n == 0 || n > 20) {
        throw SimError("unsupported spin count " + std::to_string(n));
    }
    amps[0] = 1;
}

StateVector StateVector::basis_state(size_t n, uint64_t index) {
    StateVector s(n);
    if (index >= s.dim()) {
        throw SimError("basis index out of range");
    }
    s.amps[0] = 0;
    s.amps[index] = 1;
    return s;
}

double StateVector::norm2() const {
    double t = 0;
    for (const auto &a : amps) {
        t += std::norm(a);
    }
    return t;
}

void StateVector::normalize() {
    double n = std::sqrt(norm2());
    if (n == 0 || !std::isfinite(n)) {
        throw SimError("cannot normalize a zero or non-finite state");
    }
    for (auto &a : amps) {
        a /= n;
    }
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.amps.size() != amps.size()) {
        throw SimError("dimension mismatch in inner product");
    }
    cplx t = 0;
    for (size_t k = 0; k < amps.size(); k++) {
        t += std::conj(amps[k]) * other.amps[k];
    }
    return t;
}

bool StateVector::operator==(const StateVector &other) const {
    return n_spins == other.n_spins && amps == other.amps;
}

size_t PulseSchedule::num_pulses() const {
    size_t n = 0;
    for (const auto &s : steps) {
        n += s.size();
    }
    return n;
}

void PulseSchedule::validate() const {
    for (size_t k = 0; k < steps.size(); k++) {
        const auto &step = steps[k];
        for (size_t a = 0; a < step.size(); a++) {
            for (size_t b = a + 1; b < step.size(); b++) {
                if (std::abs(step[a].barrier - step[b].barrier) < 2) {
                    throw SimError("step " + std::to_string(k) + " pulses barriers B" +
                                   std::to_string(step[a].barrier) + " and B" + std::to_string(step[b].barrier) +
                                   " together");
                }
            }
        }
    }
}

double normalize_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0;
    }
    return r;
}

std::pair<size_t, size_t> barrier_spins(int barrier, size_t n_spins, int first_dot) {
    int lo = barrier - 1 - first_dot;
    int hi = barrier - first_dot;
    if (lo < 0 || hi >= static_cast<int>(n_spins)) {
        throw SimError("barrier B" + std::to_string(barrier) + " does not couple two simulated dots");
    }
    return {static_cast<size_t>(lo), static_cast<size_t>(hi)};
}

namespace {

void check_pair(size_t i, size_t j, size_t n) {
    if (i == j || i >= n || j >= n) {
        throw SimError("invalid spin pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
}

std::pair<cplx, cplx> exchange_coefficients(double angle) {
    cplx e = std::polar(1.0, angle);
    return {(1.0 + e) / 2.0, (1.0 - e) / 2.0};
}

}  // namespace

Eigen::MatrixXcd exchange_unitary(size_t i, size_t j, double angle, size_t n_spins) {
    check_pair(i, j, n_spins);
    size_t dim = size_t{1} << n_spins;
    auto [a, b] = exchange_coefficients(angle);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t s = 0; s < dim; s++) {
        bool bi = (s >> i) & 1;
        bool bj = (s >> j) & 1;
        if (bi == bj) {
            u(s, s) = 1;
        } else {
            size_t t = s ^ (size_t{1} << i) ^ (size_t{1} << j);
            u(s, s) = a;
            u(s, t) = b;
        }
    }
    return u;
}

void apply_exchange(StateVector &state, size_t i, size_t j, double angle) {
    check_pair(i, j, state.n_spins);
    if (state.amps.size() != (size_t{1} << state.n_spins)) {
        throw SimError("state length does not match its spin count");
    }
    auto [a, b] = exchange_coefficients(angle);
    kernels::active().exchange(state.amps.data(), state.amps.size(), i, j, a, b);
}

void apply_pulse(StateVector &state, const ExchangePulse &pulse, int first_dot) {
    auto [i, j] = barrier_spins(pulse.barrier, state.n_spins, first_dot);
    apply_exchange(state, i, j, pulse.angle);
}

void apply_schedule(StateVector &state, const PulseSchedule &schedule, int first_dot) {
    schedule.validate();
    for (const auto &step : schedule.steps) {
        for (const auto &p : step) {
            apply_pulse(state, p, first_dot);
        }
    }
}

void zeeman_evolution(StateVector &state, const std::vector<double> &detunings, double time) {
    if (detunings.size() != state.n_spins) {
        throw SimError("one detuning per spin is required");
    }
    std::vector<cplx> phases(state.dim());
    for (size_t s = 0; s < state.dim(); s++) {
        double phi = 0;
        for (size_t i = 0; i < state.n_spins; i++) {
            phi += ((s >> i) & 1) ? detunings[i] : -detunings[i];
        }
        phases[s] = std::polar(1.0, phi * time / 2);
    }
    kernels::active().diag_multiply(state.amps.data(), phases.data(), state.dim());
}

double total_sz(const StateVector &state) {
    double t = 0;
    for (size_t s = 0; s < state.dim(); s++) {
        int ups = static_cast<int>(state.n_spins) - __builtin_popcountll(s);
        t += std::norm(state.amps[s]) * (ups - 0.5 * state.n_spins);
    }
    return t;
}

namespace {

// Applies the Casimir of a spin subset: S^2 = 3k/4 + sum_{i<j} (2 SWAP_ij - 1) / 2.
std::vector<cplx> apply_casimir(const std::vector<cplx> &x, const std::vector<size_t> &spins) {
    size_t k = spins.size();
    std::vector<cplx> out(x.size());
    double diag = 0.75 * k - 0.5 * (k * (k - 1) / 2);
    for (size_t s = 0; s < x.size(); s++) {
        out[s] = diag * x[s];
    }
    for (size_t a = 0; a < k; a++) {
        for (size_t b = a + 1; b < k; b++) {
            size_t mi = size_t{1} << spins[a];
            size_t mj = size_t{1} << spins[b];
            for (size_t s = 0; s < x.size(); s++) {
                bool bi = s & mi;
                bool bj = s & mj;
                size_t t = (bi == bj) ? s : (s ^ mi ^ mj);
                out[s] += x[t];
            }
        }
    }
    return out;
}

}  // namespace

double total_s2(const StateVector &state) {
    std::vector<size_t> all(state.n_spins);
    for (size_t k = 0; k < all.size(); k++) {
        all[k] = k;
    }
    auto y = apply_casimir(state.amps, all);
    cplx t = 0;
    for (size_t s = 0; s < state.dim(); s++) {
        t += std::conj(state.amps[s]) * y[s];
    }
    return t.real();
}

void project_subset_spin(std::vector<cplx> &amps, size_t n_spins, const std::vector<size_t> &spins, int two_s) {
    for (size_t a = 0; a < spins.size(); a++) {
        if (spins[a] >= n_spins) {
            throw SimError("spin index out of range");
        }
        for (size_t b = a + 1; b < spins.size(); b++) {
            if (spins[a] == spins[b]) {
                throw SimError("repeated spin in subset");
            }
        }
    }
    int k = static_cast<int>(spins.size());
    if (two_s < 0 || two_s > k || (k - two_s) % 2 != 0) {
        std::fill(amps.begin(), amps.end(), cplx{0, 0});
        return;
    }
    auto eig = [](int ts) {
        double s = ts / 2.0;
        return s * (s + 1);
    };
    // Lagrange interpolation of the projector onto one Casimir eigenvalue.
    for (int other = k; other >= 0; other -= 2) {
        if (other == two_s) {
            continue;
        }
        auto cy = apply_casimir(amps, spins);
        double denom = eig(two_s) - eig(other);
        for (size_t s = 0; s < amps.size(); s++) {
            amps[s] = (cy[s] - eig(other) * amps[s]) / denom;
        }
    }
}

double subset_spin_population(const StateVector &state, const std::vector<size_t> &spins, int two_s) {
    std::vector<cplx> y = state.amps;
    project_subset_spin(y, state.n_spins, spins, two_s);
    cplx t = 0;
    for (size_t s = 0; s < state.dim(); s++) {
        t += std::conj(state.amps[s]) * y[s];
    }
    return t.real();
}

}  // namespace eosim
