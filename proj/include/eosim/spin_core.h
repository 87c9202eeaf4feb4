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

#ifndef EOSIM_SPIN_CORE_H
#define EOSIM_SPIN_CORE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace eosim {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

/// Dots of the simulated array carry absolute labels. The six simulated spins
/// sit on QD4..QD9, so local spin k lives on dot kFirstDot + k.
constexpr int kFirstDot = 4;
constexpr int kNumSpins = 6;

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Amplitudes over the spin-z basis. Bit i of the basis index is spin i,
/// with 0 meaning spin up.
struct StateVector {
    size_t n_spins = 0;
    std::vector<cplx> amps;

    StateVector() = default;
    explicit StateVector(size_t n);
    static StateVector basis_state(size_t n, uint64_t index);

    size_t dim() const {
        return amps.size();
    }
    double norm2() const;
    void normalize();
    cplx inner(const StateVector &other) const;
    bool operator==(const StateVector &other) const;
};

/// A single exchange pulse on barrier B_k, which couples dots (k-1, k).
struct ExchangePulse {
    int barrier = 0;
    double angle = 0;
    double duration = 0;
};

/// Ordered steps of simultaneous pulses with pulse and buffer durations.
struct PulseSchedule {
    std::vector<std::vector<ExchangePulse>> steps;
    double t_p = 10.92e-9;
    double t_b = 10.92e-9;

    size_t num_pulses() const;
    /// Throws SimError when a step holds pulses on equal or neighboring barriers.
    void validate() const;
};

double normalize_angle(double angle);

/// Local spin indices of the dot pair under a barrier, for a register whose
/// first spin sits on dot `first_dot`.
std::pair<size_t, size_t> barrier_spins(int barrier, size_t n_spins, int first_dot = kFirstDot);

/// exp(-i angle/2 (SWAP_ij - I)) embedded in the 2^n space.
Eigen::MatrixXcd exchange_unitary(size_t i, size_t j, double angle, size_t n_spins);

void apply_exchange(StateVector &state, size_t i, size_t j, double angle);
void apply_pulse(StateVector &state, const ExchangePulse &pulse, int first_dot = kFirstDot);
void apply_schedule(StateVector &state, const PulseSchedule &schedule, int first_dot = kFirstDot);

/// Multiplies each spin by diag(exp(-i w t / 2), exp(+i w t / 2)).
void zeeman_evolution(StateVector &state, const std::vector<double> &detunings, double time);

double total_sz(const StateVector &state);
double total_s2(const StateVector &state);
/// Projects amplitudes onto total spin two_s/2 of a spin subset (in place).
void project_subset_spin(std::vector<cplx> &amps, size_t n_spins, const std::vector<size_t> &spins, int two_s);
/// Population of total spin two_s/2 within a spin subset.
double subset_spin_population(const StateVector &state, const std::vector<size_t> &spins, int two_s);

}  // namespace eosim

#endif
