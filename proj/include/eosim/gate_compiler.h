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


#ifndef EOSIM_GATE_COMPILER_H
#define EOSIM_GATE_COMPILER_H

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "eosim/eo_encoding.h"
#include "eosim/spin_core.h"

namespace eosim {

enum class Entangler { None, SWAP, CNOT, ISWAP };
const char *entangler_name(Entangler g);
Entangler entangler_from_name(const std::string &name);
Eigen::Matrix4cd entangler_unitary(Entangler g);

/// Ordered exchange pulses on a fixed pair of qubit configurations. The
/// configurations can change across the sequence (a SWAP moves each qubit's
/// spins to the other triple), so input and output pairs are both tracked.
struct GateSequence {
    std::vector<ExchangePulse> pulses;
    std::string source;
    ConfigPair configs_in;
    ConfigPair configs_out;
    /// Pauli frame (single-qubit Clifford indices) with
    /// sequence = (frame1 x frame2) * target. Identity for most sequences.
    std::pair<int, int> left_frame{0, 0};
    // Pulse indices where an appended part begins. Parallel scheduling never
    // moves a pulse ahead of the part boundary it follows.
    std::vector<size_t> fences;

    size_t size() const {
        return pulses.size();
    }
    /// Appends `next`, which must start in this sequence's output configuration.
    void append(const GateSequence &next);
    PulseSchedule sequential(double t_p = 10.92e-9, double t_b = 10.92e-9) const;
};

/// Unitary key invariant under global phase, used to index Clifford tables.
using UnitaryKey = std::array<int16_t, 32>;
struct UnitaryKeyHash {
    size_t operator()(const UnitaryKey &k) const;
};
UnitaryKey unitary_key(const Eigen::Matrix2cd &u);
UnitaryKey unitary_key(const Eigen::Matrix4cd &u);

/// Single-qubit Clifford group, 24 elements indexed 0..23 with 0 the identity.
class Clifford1Group {
   public:
    static const Clifford1Group &instance();
    size_t size() const {
        return elems_.size();
    }
    const Eigen::Matrix2cd &unitary(int index) const {
        return elems_.at(index);
    }
    int index_of(const Eigen::Matrix2cd &u) const;
    /// Index of unitary(second) * unitary(first).
    int compose(int first, int second) const {
        return table_[first][second];
    }
    int inverse(int index) const {
        return inverse_[index];
    }
    /// 120 degree rotation about (1,1,1) and its square.
    int v() const {
        return v_;
    }
    int v2() const {
        return compose(v_, v_);
    }

   private:
    Clifford1Group();
    std::vector<Eigen::Matrix2cd> elems_;
    std::unordered_map<UnitaryKey, int, UnitaryKeyHash> index_;
    std::vector<std::array<int, 24>> table_;
    std::vector<int> inverse_;
    int v_ = -1;
};

/// Canonical form C = (L1 x L2) G (R1 x R2); R1, R2 are I, V or V^2 for the
/// CNOT and iSWAP classes and the identity otherwise.
struct Clifford2Form {
    int l1 = 0, l2 = 0;
    Entangler gate = Entangler::None;
    int r1 = 0, r2 = 0;
};

class Clifford2Group {
   public:
    static constexpr size_t kOrder = 11520;
    static const Clifford2Group &instance();

    size_t size() const {
        return elems_.size();
    }
    const Eigen::Matrix4cd &unitary(int index) const {
        return elems_.at(index);
    }
    const Clifford2Form &form(int index) const {
        return forms_.at(index);
    }
    Entangler entangler_class(int index) const {
        return forms_.at(index).gate;
    }
    /// Throws SimError if `u` is not a two-qubit Clifford.
    int index_of(const Eigen::Matrix4cd &u) const;
    bool contains(const Eigen::Matrix4cd &u) const;
    /// Index of unitary(second) * unitary(first).
    int compose(int first, int second) const;
    int inverse(int index) const;
    std::array<size_t, 4> class_sizes() const;

   private:
    Clifford2Group();
    std::vector<Eigen::Matrix4cd> elems_;
    std::vector<Clifford2Form> forms_;
    std::unordered_map<UnitaryKey, int, UnitaryKeyHash> index_;
};

/// Elements reachable from the generators H and S on each qubit plus CNOT,
/// found by breadth-first search. Independent of the canonical-form table.
std::vector<Eigen::Matrix4cd> enumerate_2q_clifford_bfs();

/// Class sizes (none, SWAP, CNOT, iSWAP) by membership in the double cosets
/// local * G * local, searched exhaustively over the 576-element local group.
std::array<size_t, 4> classify_double_cosets(const std::vector<Eigen::Matrix4cd> &elems,
                                             std::vector<Entangler> *classes = nullptr);

/// Minimal z/n pulse sequence for a single-qubit Clifford on one qubit.
std::vector<ExchangePulse> decompose_1q_pulses(int clifford, const QubitConfig &config);
GateSequence decompose_1q_clifford(int clifford, const QubitConfig &config);

/// Shipped pulse sequence for an entangler starting in `configs`.
GateSequence entangler_sequence(Entangler gate, const ConfigPair &configs);

GateSequence decompose_2q_clifford(int clifford, const ConfigPair &configs);
/// Two independent single-qubit Cliffords on the pair.
GateSequence local_clifford_sequence(int c1, int c2, const ConfigPair &configs);

/// Greedy as-soon-as-possible packing. A pulse lands one step after the latest
/// earlier pulse on the same or a neighboring barrier.
PulseSchedule parallelize_schedule(const GateSequence &seq, double t_p = 10.92e-9, double t_b = 10.92e-9);

struct Verification {
    double fidelity = 0;
    double leakage = 0;
    bool leaked = false;
    /// Induced 4x4 maps in the two gauge sectors (DownDown, Singlet).
    std::array<Eigen::Matrix4cd, 2> maps;
};

Eigen::Matrix4cd logical_map(const PulseSchedule &sched, const ConfigPair &in, const ConfigPair &out,
                             GaugeSector sector);
Verification verify_schedule(const PulseSchedule &sched, const Eigen::Matrix4cd &target, const ConfigPair &in,
                             const ConfigPair &out);
Verification verify_sequence(const GateSequence &seq, const Eigen::Matrix4cd &target);

/// Name used in sequence files: "standard" or "inner".
std::string config_pair_name(const ConfigPair &configs);
ConfigPair config_pair_from_name(const std::string &name);

}  // namespace eosim

#endif
