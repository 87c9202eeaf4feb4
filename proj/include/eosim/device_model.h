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


#ifndef EOSIM_DEVICE_MODEL_H
#define EOSIM_DEVICE_MODEL_H

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eosim/spin_core.h"

namespace eosim {

/// J(v) = alpha * exp(gamma v + kappa v^2), with v in mV and J in rad/s.
struct ExchangeCalibration {
    double alpha = 3.14e7;
    double gamma = 0.04;
    double kappa = 0;
    double v_off = -200;
    double v_min = -1000;
    int barrier = 8;

    void validate(double t_p) const;
};

double exchange_from_voltage(const ExchangeCalibration &cal, double v);
double voltage_for_angle(const ExchangeCalibration &cal, double phi, double t_p);

/// Linear crosstalk model. Rows are the electrodes feeling a shift, columns the
/// electrodes being driven, so effective = m * applied.
class CrosstalkMatrix {
   public:
    CrosstalkMatrix(std::vector<std::string> labels, Eigen::MatrixXd m);
    static CrosstalkMatrix identity(std::vector<std::string> labels);
    static CrosstalkMatrix from_csv(const std::string &path);
    static CrosstalkMatrix default_device();

    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const Eigen::MatrixXd &matrix() const {
        return m_;
    }
    double coefficient(const std::string &row, const std::string &col) const;
    size_t index_of(const std::string &label) const;
    /// Copy with every barrier-to-barrier off-diagonal element set to zero.
    CrosstalkMatrix without_barrier_barrier() const;

    std::map<std::string, double> to_physical_voltages(const std::map<std::string, double> &virtual_pulse) const;
    std::map<std::string, double> effective_barrier_voltage(const std::map<std::string, double> &applied) const;

   private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd m_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Symmetric detuning enhancement, 1 at zero detuning and divergent at +-U.
double detuning_factor(double epsilon, double charging_scale);

struct FingerprintMap {
    std::vector<double> detunings;
    std::vector<double> barriers;
    /// p_triplet[i][j] is the value at detunings[i], barriers[j].
    std::vector<std::vector<double>> p_triplet;
};

FingerprintMap synth_fingerprint(const ExchangeCalibration &cal, const std::vector<double> &detuning_grid,
                                 const std::vector<double> &barrier_grid, int n_pulses, double t_p,
                                 double charging_scale = 10.0, double barrier_shift = 0.0);

struct FilterParams {
    std::vector<double> tau;
    std::vector<double> amp;

    void validate() const;
};

struct PulseTiming {
    double t_p = 10.92e-9;
    double t_b = 10.92e-9;
};

/// Pulse-domain memory model. Each pulse returns to zero over a finite fall
/// time, so pulse n sees a tail from every earlier pulse m:
///   eff[n] = a[n] + sum_k c_k s_k[n]
///   s_k[n] = exp(-(t_p + t_b)/tau_k) s_k[n-1] + exp(-t_b/tau_k) a[n-1],  s_k[0] = 0
std::vector<double> distort_pulse_train(const std::vector<double> &amplitudes, const PulseTiming &timing,
                                        const FilterParams &f);
/// Forward substitution against the same recurrence.
std::vector<double> predistort_pulse_train(const std::vector<double> &targets, const PulseTiming &timing,
                                           const FilterParams &f);

/// Total exchange angle accumulated by a train of identical pulses at voltage v.
double buffer_spectroscopy_angle(const ExchangeCalibration &cal, double v, int n_pulses, const PulseTiming &timing,
                                 const FilterParams &f, bool predistort);

}  // namespace eosim

#endif
