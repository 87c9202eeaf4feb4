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

#ifndef EOSIM_EO_ENCODING_H
#define EOSIM_EO_ENCODING_H

#include <array>
#include <random>
#include <utility>

#include "eosim/spin_core.h"

namespace eosim {

enum class ReadoutPair { First, Last };
enum class Gauge { Up = 0, Down = 1 };

/// Placement of one exchange-only qubit on three neighboring dots.
///
/// The readout pair defines the z axis: its singlet is logical |0>. The other
/// spin of the triple is the gauge spin. With readout pair (a, b) and gauge c:
///   |0, g>  = |S>_ab |g>_c
///   |1, up> = sqrt(2/3) |T+>_ab |dn>_c - sqrt(1/3) |T0>_ab |up>_c
///   |1, dn> = sqrt(1/3) |T0>_ab |dn>_c - sqrt(2/3) |T->_ab |up>_c
/// A Last-pair qubit uses the same formulas on (b, c) with gauge a, but with an
/// overall minus sign on |1>. The sign makes the mirroring sequence act as the
/// logical identity up to global phase.
struct QubitConfig {
    std::array<int, 3> dots{};
    ReadoutPair readout = ReadoutPair::First;

    static QubitConfig make(int first_dot, ReadoutPair readout);

    std::pair<int, int> readout_dots() const;
    int gauge_dot() const;
    int z_barrier() const;
    int n_barrier() const;
    QubitConfig mirrored() const;
    void validate() const;
    bool operator==(const QubitConfig &other) const = default;
};

using ConfigPair = std::pair<QubitConfig, QubitConfig>;

/// Device layout: Q1 on QD4-QD6 read out on QD4-QD5, Q2 on QD7-QD9 read out on QD8-QD9.
ConfigPair standard_configs();
/// Both qubits mirrored: readout pairs QD5-QD6 and QD7-QD8.
ConfigPair inner_configs();

/// Amplitudes of one qubit's three spins, indexed by the bits (a, b, c) = dots in order.
std::array<cplx, 8> triple_state(const QubitConfig &config, int logical, Gauge gauge);

struct LogicalState {
    std::array<cplx, 2> q1{1, 0};
    std::array<cplx, 2> q2{1, 0};
    Gauge gauge1 = Gauge::Down;
    Gauge gauge2 = Gauge::Down;
};

StateVector encode_two_qubit_state(const LogicalState &logical, const ConfigPair &configs);

/// How the two gauge spins are prepared when encoding an arbitrary two-qubit
/// state. DownDown is a product gauge; Singlet couples the gauges to total spin 0.
enum class GaugeSector { DownDown, Singlet };

/// Encodes four logical amplitudes indexed 2*q1 + q2.
StateVector encode_amplitudes(const std::array<cplx, 4> &amps, const ConfigPair &configs, GaugeSector sector);

/// Columns are the encoded |q1 q2> basis states (index 2*q1 + q2).
Eigen::MatrixXcd computational_basis(const ConfigPair &configs, GaugeSector sector);

double singlet_probability(const StateVector &state, int dot_a, int dot_b);

enum class PsbOutcome { Singlet, Triplet };
struct PsbResult {
    PsbOutcome outcome;
    double probability;
    StateVector collapsed;
};
PsbResult psb_measure(const StateVector &state, int dot_a, int dot_b, std::mt19937_64 &rng);
/// Projects onto the requested outcome without sampling; throws on a zero-probability branch.
PsbResult psb_project(const StateVector &state, int dot_a, int dot_b, PsbOutcome outcome);

/// Population of the qubit's total-spin-3/2 sector.
double leakage_population(const StateVector &state, const QubitConfig &config);
/// One minus the population with both triples in total spin 1/2.
double joint_leakage(const StateVector &state, const ConfigPair &configs);

PulseSchedule mirroring_sequence(const QubitConfig &config);

/// The 2x2 action of a z or n pulse on the encoded qubit (gauge independent).
enum class Axis { Z, N };
Eigen::Matrix2cd logical_pulse_action(const QubitConfig &config, Axis axis, double angle);

std::vector<size_t> local_spins(const QubitConfig &config);

}  // namespace eosim

#endif
