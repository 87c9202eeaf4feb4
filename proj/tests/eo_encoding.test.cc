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

#include <random>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace eosim;

namespace {

Eigen::MatrixXcd logical_map(const PulseSchedule &sched, const ConfigPair &in, const ConfigPair &out,
                             GaugeSector sector) {
    Eigen::MatrixXcd bi = computational_basis(in, sector);
    Eigen::MatrixXcd bo = computational_basis(out, sector);
    Eigen::MatrixXcd m(4, 4);
    for (int k = 0; k < 4; k++) {
        StateVector s(kNumSpins);
        for (int r = 0; r < 64; r++) {
            s.amps[r] = bi(r, k);
        }
        apply_schedule(s, sched);
        for (int j = 0; j < 4; j++) {
            cplx t = 0;
            for (int r = 0; r < 64; r++) {
                t += std::conj(bo(r, j)) * s.amps[r];
            }
            m(j, k) = t;
        }
    }
    return m;
}

double distance_to_phase_times(const Eigen::MatrixXcd &m, const Eigen::MatrixXcd &target) {
    cplx tr = (target.adjoint() * m).trace();
    cplx ph = tr / std::abs(tr);
    return (m - ph * target).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(encode, ground_example_amplitudes) {
    LogicalState l;
    auto s = encode_two_qubit_state(l, standard_configs());
    // Singlet on QD4,QD5 (spins 0,1), down on QD6 and QD7, singlet on QD8,QD9 (spins 4,5).
    auto idx = [](int s0, int s1, int s4, int s5) {
        return s0 | (s1 << 1) | (1 << 2) | (1 << 3) | (s4 << 4) | (s5 << 5);
    };
    EXPECT_NEAR(s.amps[idx(0, 1, 0, 1)].real(), 0.5, 1e-15);
    EXPECT_NEAR(s.amps[idx(1, 0, 0, 1)].real(), -0.5, 1e-15);
    EXPECT_NEAR(s.amps[idx(0, 1, 1, 0)].real(), -0.5, 1e-15);
    EXPECT_NEAR(s.amps[idx(1, 0, 1, 0)].real(), 0.5, 1e-15);
    EXPECT_NEAR(s.norm2(), 1.0, 1e-15);
}

TEST(encode, triple_states_are_orthonormal_doublets) {
    for (auto ro : {ReadoutPair::First, ReadoutPair::Last}) {
        auto c = QubitConfig::make(4, ro);
        std::vector<std::array<cplx, 8>> vs;
        for (int l = 0; l < 2; l++) {
            for (auto g : {Gauge::Up, Gauge::Down}) {
                vs.push_back(triple_state(c, l, g));
            }
        }
        for (size_t a = 0; a < vs.size(); a++) {
            for (size_t b = 0; b < vs.size(); b++) {
                cplx t = 0;
                for (int k = 0; k < 8; k++) {
                    t += std::conj(vs[a][k]) * vs[b][k];
                }
                EXPECT_NEAR(std::abs(t), a == b ? 1.0 : 0.0, 1e-14);
            }
            StateVector s(3);
            for (int k = 0; k < 8; k++) {
                s.amps[k] = vs[a][k];
            }
            EXPECT_NEAR(subset_spin_population(s, {0, 1, 2}, 1), 1.0, 1e-14);
        }
    }
}

TEST(encode, gauge_sets_spin_projection) {
    auto c = QubitConfig::make(4, ReadoutPair::First);
    for (int l = 0; l < 2; l++) {
        for (auto g : {Gauge::Up, Gauge::Down}) {
            StateVector s(3);
            auto v = triple_state(c, l, g);
            for (int k = 0; k < 8; k++) {
                s.amps[k] = v[k];
            }
            EXPECT_NEAR(total_sz(s), g == Gauge::Up ? 0.5 : -0.5, 1e-14);
        }
    }
}

TEST(encode, overlapping_configs_rejected) {
    ConfigPair bad{QubitConfig::make(4, ReadoutPair::First), QubitConfig::make(6, ReadoutPair::Last)};
    EXPECT_THROW(encode_two_qubit_state(LogicalState{}, bad), SimError);
}

TEST(psb, zero_is_singlet_one_is_triplet) {
    auto configs = standard_configs();
    for (int q = 0; q < 2; q++) {
        LogicalState l;
        auto rp = q == 0 ? configs.first.readout_dots() : configs.second.readout_dots();
        auto s0 = encode_two_qubit_state(l, configs);
        EXPECT_NEAR(singlet_probability(s0, rp.first, rp.second), 1.0, 1e-14);
        (q == 0 ? l.q1 : l.q2) = {0, 1};
        auto s1 = encode_two_qubit_state(l, configs);
        EXPECT_NEAR(singlet_probability(s1, rp.first, rp.second), 0.0, 1e-14);
    }
}

TEST(psb, superposition_gives_half_and_collapses) {
    LogicalState l;
    l.q1 = {std::sqrt(0.5), std::sqrt(0.5)};
    auto s = encode_two_qubit_state(l, standard_configs());
    EXPECT_NEAR(singlet_probability(s, 4, 5), 0.5, 1e-14);
    auto r = psb_project(s, 4, 5, PsbOutcome::Triplet);
    EXPECT_NEAR(r.probability, 0.5, 1e-14);
    EXPECT_NEAR(singlet_probability(r.collapsed, 4, 5), 0.0, 1e-14);
    EXPECT_NEAR(r.collapsed.norm2(), 1.0, 1e-14);
    std::mt19937_64 rng(1);
    int singlets = 0;
    for (int k = 0; k < 4000; k++) {
        singlets += psb_measure(s, 4, 5, rng).outcome == PsbOutcome::Singlet;
    }
    EXPECT_NEAR(singlets / 4000.0, 0.5, 0.03);
}

TEST(psb, zero_probability_branch_throws) {
    auto s = encode_two_qubit_state(LogicalState{}, standard_configs());
    EXPECT_THROW(psb_project(s, 4, 5, PsbOutcome::Triplet), SimError);
}

TEST(psb, outcome_probabilities_sum_to_one) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 50; k++) {
        auto s = random_state(6, rng);
        double ps = singlet_probability(s, 6, 7);
        auto a = psb_project(s, 6, 7, PsbOutcome::Singlet);
        auto b = psb_project(s, 6, 7, PsbOutcome::Triplet);
        EXPECT_NEAR(a.probability + b.probability, 1.0, 1e-10);
        EXPECT_NEAR(a.probability, ps, 1e-12);
    }
}

TEST(psb, leaked_state_reads_triplet) {
    StateVector s(6);  // all spins up: both triples fully polarized
    EXPECT_NEAR(singlet_probability(s, 4, 5), 0.0, 1e-15);
    EXPECT_NEAR(leakage_population(s, standard_configs().first), 1.0, 1e-14);
}

TEST(leakage, encoded_states_do_not_leak) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; k++) {
        std::array<cplx, 4> a;
        double n = 0;
        for (auto &x : a) {
            x = {g(rng), g(rng)};
            n += std::norm(x);
        }
        for (auto &x : a) {
            x /= std::sqrt(n);
        }
        for (auto sector : {GaugeSector::DownDown, GaugeSector::Singlet}) {
            auto s = encode_amplitudes(a, inner_configs(), sector);
            EXPECT_NEAR(joint_leakage(s, inner_configs()), 0.0, 1e-13);
            EXPECT_NEAR(leakage_population(s, inner_configs().first), 0.0, 1e-13);
            EXPECT_NEAR(s.norm2(), 1.0, 1e-13);
        }
    }
}

TEST(leakage, inter_qubit_pi_pulse_leaks) {
    // With both readout pairs next to B7 the pulse swaps a singlet member out of each triple.
    auto s = encode_two_qubit_state(LogicalState{}, inner_configs());
    apply_pulse(s, {7, kPi, 1e-9});
    EXPECT_GT(leakage_population(s, inner_configs().first), 0.1);
    // In the standard layout B7 couples the two gauge spins, which are both down here.
    auto g = encode_two_qubit_state(LogicalState{}, standard_configs());
    apply_pulse(g, {7, kPi, 1e-9});
    EXPECT_NEAR(leakage_population(g, standard_configs().first), 0.0, 1e-14);
}

TEST(leakage, invariant_under_intra_qubit_pulses) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ang(0, kTwoPi);
    std::uniform_int_distribution<int> pick(0, 3);
    const int intra[] = {5, 6, 8, 9};
    for (int trial = 0; trial < 50; trial++) {
        auto s = random_state(6, rng);
        double l1 = leakage_population(s, standard_configs().first);
        double l2 = leakage_population(s, standard_configs().second);
        for (int k = 0; k < 10; k++) {
            apply_pulse(s, {intra[pick(rng)], ang(rng), 1e-9});
        }
        EXPECT_NEAR(leakage_population(s, standard_configs().first), l1, 1e-10);
        EXPECT_NEAR(leakage_population(s, standard_configs().second), l2, 1e-10);
    }
}

TEST(configs, barrier_assignment) {
    auto [q1, q2] = standard_configs();
    EXPECT_EQ(q1.z_barrier(), 5);
    EXPECT_EQ(q1.n_barrier(), 6);
    EXPECT_EQ(q2.z_barrier(), 9);
    EXPECT_EQ(q2.n_barrier(), 8);
    EXPECT_EQ(q1.readout_dots(), (std::pair<int, int>{4, 5}));
    EXPECT_EQ(q2.readout_dots(), (std::pair<int, int>{8, 9}));
    EXPECT_EQ(q1.gauge_dot(), 6);
    EXPECT_EQ(q2.gauge_dot(), 7);
    EXPECT_EQ(q1.mirrored().z_barrier(), 6);
}

TEST(mirroring, sequence_shape) {
    auto m = mirroring_sequence(standard_configs().first);
    ASSERT_EQ(m.steps.size(), 3u);
    EXPECT_EQ(m.steps[0][0].barrier, 6);
    EXPECT_EQ(m.steps[1][0].barrier, 5);
    EXPECT_EQ(m.steps[2][0].barrier, 6);
    for (const auto &st : m.steps) {
        EXPECT_DOUBLE_EQ(st[0].angle, kPi);
    }
}

TEST(mirroring, acts_as_logical_identity_onto_mirrored_config) {
    auto in = standard_configs();
    ConfigPair out{in.first.mirrored(), in.second};
    auto m = mirroring_sequence(in.first);
    for (auto sector : {GaugeSector::DownDown, GaugeSector::Singlet}) {
        auto map = logical_map(m, in, out, sector);
        EXPECT_LT(distance_to_phase_times(map, Eigen::Matrix4cd::Identity()), 1e-12);
    }
    auto twice = m;
    auto m2 = mirroring_sequence(out.first);
    twice.steps.insert(twice.steps.end(), m2.steps.begin(), m2.steps.end());
    EXPECT_LT(distance_to_phase_times(logical_map(twice, in, in, GaugeSector::Singlet), Eigen::Matrix4cd::Identity()),
              1e-12);
}

TEST(mirroring, leakage_unchanged) {
    std::mt19937_64 rng(5);
    auto s = random_state(6, rng);
    double l = leakage_population(s, standard_configs().first);
    apply_schedule(s, mirroring_sequence(standard_configs().first));
    EXPECT_NEAR(leakage_population(s, standard_configs().first), l, 1e-12);
}

TEST(logical_action, z_pulse_phases_logical_zero) {
    for (auto ro : {ReadoutPair::First, ReadoutPair::Last}) {
        auto c = QubitConfig::make(7, ro);
        auto m = logical_pulse_action(c, Axis::Z, 1.1);
        EXPECT_NEAR(std::abs(m(0, 0) - std::polar(1.0, 1.1)), 0, 1e-14);
        EXPECT_NEAR(std::abs(m(1, 1) - 1.0), 0, 1e-14);
        EXPECT_NEAR(std::abs(m(0, 1)), 0, 1e-14);
    }
}

TEST(logical_action, n_axis_is_120_degrees_from_z) {
    auto c = QubitConfig::make(4, ReadoutPair::First);
    // A pi pulse is a reflection about the n-axis singlet: its trace-free part
    // gives the Bloch axis, whose z component is cos(120 deg).
    auto m = logical_pulse_action(c, Axis::N, kPi);
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    cplx nz = -(m * z).trace() / 2.0;
    EXPECT_NEAR(nz.real(), -0.5, 1e-14);
}
