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

#include "eosim/eo_encoding.h"

#include <cmath>
#include <string>

namespace eosim {

QubitConfig QubitConfig::make(int first_dot, ReadoutPair readout) {
    QubitConfig c;
    c.dots = {first_dot, first_dot + 1, first_dot + 2};
    c.readout = readout;
    return c;
}

std::pair<int, int> QubitConfig::readout_dots() const {
    return readout == ReadoutPair::First ? std::pair{dots[0], dots[1]} : std::pair{dots[1], dots[2]};
}

int QubitConfig::gauge_dot() const {
    return readout == ReadoutPair::First ? dots[2] : dots[0];
}

int QubitConfig::z_barrier() const {
    return readout == ReadoutPair::First ? dots[1] : dots[2];
}

int QubitConfig::n_barrier() const {
    return readout == ReadoutPair::First ? dots[2] : dots[1];
}

QubitConfig QubitConfig::mirrored() const {
    QubitConfig c = *this;
    c.readout = readout == ReadoutPair::First ? ReadoutPair::Last : ReadoutPair::First;
    return c;
}

void QubitConfig::validate() const {
    if (dots[1] != dots[0] + 1 || dots[2] != dots[1] + 1) {
        throw SimError("qubit dots must be three consecutive dots");
    }
}

ConfigPair standard_configs() {
    return {QubitConfig::make(4, ReadoutPair::First), QubitConfig::make(7, ReadoutPair::Last)};
}

ConfigPair inner_configs() {
    return {QubitConfig::make(4, ReadoutPair::Last), QubitConfig::make(7, ReadoutPair::First)};
}

std::array<cplx, 8> triple_state(const QubitConfig &config, int logical, Gauge gauge) {
    // Positions of the readout pair (p, q) and gauge g within the triple bits.
    int p, q, g;
    double sign;
    if (config.readout == ReadoutPair::First) {
        p = 0, q = 1, g = 2, sign = 1;
    } else {
        p = 1, q = 2, g = 0, sign = -1;
    }
    auto idx = [&](int bp, int bq, int bg) {
        return (bp << p) | (bq << q) | (bg << g);
    };
    const double r2 = std::sqrt(0.5);
    const double r13 = std::sqrt(1.0 / 3);
    const double r23 = std::sqrt(2.0 / 3);
    std::array<cplx, 8> v{};
    int gb = static_cast<int>(gauge);
    if (logical == 0) {
        v[idx(0, 1, gb)] += r2;
        v[idx(1, 0, gb)] -= r2;
    } else if (gauge == Gauge::Up) {
        v[idx(0, 0, 1)] += sign * r23;
        v[idx(0, 1, 0)] -= sign * r13 * r2;
        v[idx(1, 0, 0)] -= sign * r13 * r2;
    } else {
        v[idx(0, 1, 1)] += sign * r13 * r2;
        v[idx(1, 0, 1)] += sign * r13 * r2;
        v[idx(1, 1, 0)] -= sign * r23;
    }
    return v;
}

std::vector<size_t> local_spins(const QubitConfig &config) {
    std::vector<size_t> out;
    for (int d : config.dots) {
        int k = d - kFirstDot;
        if (k < 0 || k >= kNumSpins) {
            throw SimError("dot QD" + std::to_string(d) + " is not simulated");
        }
        out.push_back(static_cast<size_t>(k));
    }
    return out;
}

namespace {

void check_disjoint(const ConfigPair &configs) {
    configs.first.validate();
    configs.second.validate();
    for (int a : configs.first.dots) {
        for (int b : configs.second.dots) {
            if (a == b) {
                throw SimError("qubit configurations overlap on QD" + std::to_string(a));
            }
        }
    }
}

// Product of two triple vectors placed on the configured dots.
void add_product(StateVector &out, cplx weight, const ConfigPair &configs, const std::array<cplx, 8> &v1,
                 const std::array<cplx, 8> &v2) {
    auto s1 = local_spins(configs.first);
    auto s2 = local_spins(configs.second);
    for (size_t s = 0; s < out.dim(); s++) {
        int i1 = 0, i2 = 0;
        for (int k = 0; k < 3; k++) {
            i1 |= static_cast<int>((s >> s1[k]) & 1) << k;
            i2 |= static_cast<int>((s >> s2[k]) & 1) << k;
        }
        out.amps[s] += weight * v1[i1] * v2[i2];
    }
}

}  // namespace

StateVector encode_two_qubit_state(const LogicalState &logical, const ConfigPair &configs) {
    check_disjoint(configs);
    double n1 = std::norm(logical.q1[0]) + std::norm(logical.q1[1]);
    double n2 = std::norm(logical.q2[0]) + std::norm(logical.q2[1]);
    if (std::abs(n1 - 1) > 1e-10 || std::abs(n2 - 1) > 1e-10) {
        throw SimError("logical amplitudes must be normalized");
    }
    std::array<cplx, 8> v1{}, v2{};
    for (int l = 0; l < 2; l++) {
        auto t1 = triple_state(configs.first, l, logical.gauge1);
        auto t2 = triple_state(configs.second, l, logical.gauge2);
        for (int k = 0; k < 8; k++) {
            v1[k] += logical.q1[l] * t1[k];
            v2[k] += logical.q2[l] * t2[k];
        }
    }
    StateVector out(kNumSpins);
    out.amps[0] = 0;
    add_product(out, 1, configs, v1, v2);
    return out;
}

StateVector encode_amplitudes(const std::array<cplx, 4> &amps, const ConfigPair &configs, GaugeSector sector) {
    check_disjoint(configs);
    StateVector out(kNumSpins);
    out.amps[0] = 0;
    const double r2 = std::sqrt(0.5);
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            cplx w = amps[2 * a + b];
            if (w == cplx{0, 0}) {
                continue;
            }
            if (sector == GaugeSector::DownDown) {
                add_product(out, w, configs, triple_state(configs.first, a, Gauge::Down),
                            triple_state(configs.second, b, Gauge::Down));
            } else {
                add_product(out, w * r2, configs, triple_state(configs.first, a, Gauge::Up),
                            triple_state(configs.second, b, Gauge::Down));
                add_product(out, -w * r2, configs, triple_state(configs.first, a, Gauge::Down),
                            triple_state(configs.second, b, Gauge::Up));
            }
        }
    }
    return out;
}

Eigen::MatrixXcd computational_basis(const ConfigPair &configs, GaugeSector sector) {
    Eigen::MatrixXcd b(size_t{1} << kNumSpins, 4);
    for (int k = 0; k < 4; k++) {
        std::array<cplx, 4> a{};
        a[k] = 1;
        auto s = encode_amplitudes(a, configs, sector);
        for (size_t r = 0; r < s.dim(); r++) {
            b(r, k) = s.amps[r];
        }
    }
    return b;
}

namespace {

std::pair<size_t, size_t> dot_pair_spins(const StateVector &state, int dot_a, int dot_b) {
    int i = dot_a - kFirstDot;
    int j = dot_b - kFirstDot;
    if (i == j || i < 0 || j < 0 || i >= static_cast<int>(state.n_spins) || j >= static_cast<int>(state.n_spins)) {
        throw SimError("invalid readout pair");
    }
    return {static_cast<size_t>(i), static_cast<size_t>(j)};
}

// Singlet projector on a pair: (x_s - x_swap(s)) / 2.
StateVector singlet_part(const StateVector &state, size_t i, size_t j) {
    StateVector out = state;
    size_t mi = size_t{1} << i, mj = size_t{1} << j;
    for (size_t s = 0; s < state.dim(); s++) {
        bool bi = s & mi, bj = s & mj;
        out.amps[s] = bi == bj ? cplx{0, 0} : (state.amps[s] - state.amps[s ^ mi ^ mj]) / 2.0;
    }
    return out;
}

}  // namespace

double singlet_probability(const StateVector &state, int dot_a, int dot_b) {
    auto [i, j] = dot_pair_spins(state, dot_a, dot_b);
    return singlet_part(state, i, j).norm2();
}

PsbResult psb_project(const StateVector &state, int dot_a, int dot_b, PsbOutcome outcome) {
    auto [i, j] = dot_pair_spins(state, dot_a, dot_b);
    StateVector s = singlet_part(state, i, j);
    double ps = s.norm2();
    double total = state.norm2();
    StateVector out = state;
    double p;
    if (outcome == PsbOutcome::Singlet) {
        out = s;
        p = ps / total;
    } else {
        for (size_t k = 0; k < out.dim(); k++) {
            out.amps[k] -= s.amps[k];
        }
        p = std::max(0.0, total - ps) / total;
    }
    if (!(p > 1e-300)) {
        throw SimError("projection onto a zero-probability readout outcome");
    }
    out.normalize();
    return {outcome, p, out};
}

PsbResult psb_measure(const StateVector &state, int dot_a, int dot_b, std::mt19937_64 &rng) {
    double ps = singlet_probability(state, dot_a, dot_b) / state.norm2();
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return psb_project(state, dot_a, dot_b, u < ps ? PsbOutcome::Singlet : PsbOutcome::Triplet);
}

double leakage_population(const StateVector &state, const QubitConfig &config) {
    return subset_spin_population(state, local_spins(config), 3);
}

double joint_leakage(const StateVector &state, const ConfigPair &configs) {
    std::vector<cplx> y = state.amps;
    project_subset_spin(y, state.n_spins, local_spins(configs.first), 1);
    project_subset_spin(y, state.n_spins, local_spins(configs.second), 1);
    double kept = 0;
    for (const auto &a : y) {
        kept += std::norm(a);
    }
    return std::max(0.0, state.norm2() - kept);
}

PulseSchedule mirroring_sequence(const QubitConfig &config) {
    PulseSchedule s;
    s.steps = {{{config.n_barrier(), kPi, s.t_p}}, {{config.z_barrier(), kPi, s.t_p}}, {{config.n_barrier(), kPi, s.t_p}}};
    return s;
}

Eigen::Matrix2cd logical_pulse_action(const QubitConfig &config, Axis axis, double angle) {
    // Works on a three-spin register holding only this qubit.
    Eigen::Matrix<cplx, 8, 2> basis;
    for (int l = 0; l < 2; l++) {
        auto v = triple_state(config, l, Gauge::Up);
        for (int k = 0; k < 8; k++) {
            basis(k, l) = v[k];
        }
    }
    int barrier = axis == Axis::Z ? config.z_barrier() : config.n_barrier();
    size_t lo = static_cast<size_t>(barrier - 1 - config.dots[0]);
    Eigen::MatrixXcd u = exchange_unitary(lo, lo + 1, angle, 3);
    return basis.adjoint() * u * basis;
}

}  // namespace eosim
