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


#include "eosim/device_model.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace eosim {

void ExchangeCalibration::validate(double t_p) const {
    if (!(alpha > 0)) {
        throw SimError("exchange calibration needs alpha > 0");
    }
    if (exchange_from_voltage(*this, v_off) * t_p >= 1e-3) {
        throw SimError("idle barrier voltage leaves a residual rotation above 1e-3 rad");
    }
}

double exchange_from_voltage(const ExchangeCalibration &cal, double v) {
    double j = cal.alpha * std::exp(cal.gamma * v + cal.kappa * v * v);
    if (!std::isfinite(j)) {
        throw SimError("exchange overflow at barrier voltage " + std::to_string(v) + " mV");
    }
    return j;
}

double voltage_for_angle(const ExchangeCalibration &cal, double phi, double t_p) {
    if (!(phi > 0) || !(t_p > 0)) {
        throw SimError("voltage_for_angle needs phi > 0 and t_p > 0");
    }
    double l = std::log(phi / (t_p * cal.alpha));
    double v;
    if (cal.kappa == 0) {
        if (cal.gamma == 0) {
            throw SimError("flat calibration cannot be inverted");
        }
        v = l / cal.gamma;
    } else {
        double disc = cal.gamma * cal.gamma + 4 * cal.kappa * l;
        if (disc < 0) {
            throw SimError("angle outside the calibrated exchange range");
        }
        // Root continuous with the kappa -> 0 branch, written without cancellation.
        double s = std::sqrt(disc);
        v = cal.gamma >= 0 ? 2 * l / (cal.gamma + s) : (-cal.gamma + s) / (2 * cal.kappa);
    }
    if (v < cal.v_min) {
        throw SimError("requested angle needs a barrier voltage below the hardware minimum");
    }
    return v;
}

CrosstalkMatrix::CrosstalkMatrix(std::vector<std::string> labels, Eigen::MatrixXd m)
    : labels_(std::move(labels)), m_(std::move(m)) {
    size_t n = labels_.size();
    if (m_.rows() != (Eigen::Index)n || m_.cols() != (Eigen::Index)n) {
        throw SimError("crosstalk matrix shape does not match its labels");
    }
    for (size_t i = 0; i < n; i++) {
        if (m_(i, i) != 1.0) {
            throw SimError("crosstalk matrix diagonal must be exactly 1 (" + labels_[i] + ")");
        }
    }
    lu_.compute(m_);
    double rc = lu_.rcond();
    if (!(rc > 1e-14)) {
        throw SimError("crosstalk matrix is singular");
    }
}

CrosstalkMatrix CrosstalkMatrix::identity(std::vector<std::string> labels) {
    size_t n = labels.size();
    return CrosstalkMatrix(std::move(labels), Eigen::MatrixXd::Identity(n, n));
}

CrosstalkMatrix CrosstalkMatrix::from_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SimError("cannot open crosstalk file " + path);
    }
    auto split = [](const std::string &line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
                cell.pop_back();
            }
            out.push_back(cell);
        }
        return out;
    };
    std::string line;
    if (!std::getline(in, line)) {
        throw SimError("empty crosstalk file " + path);
    }
    auto header = split(line);
    std::vector<std::string> labels(header.begin() + 1, header.end());
    size_t n = labels.size();
    Eigen::MatrixXd m(n, n);
    size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        if (row >= n || cells.size() != n + 1 || cells[0] != labels[row]) {
            throw SimError("malformed crosstalk row " + std::to_string(row + 1) + " in " + path);
        }
        for (size_t j = 0; j < n; j++) {
            try {
                m(row, j) = std::stod(cells[j + 1]);
            } catch (const std::exception &) {
                throw SimError("bad number '" + cells[j + 1] + "' in " + path);
            }
        }
        row++;
    }
    if (row != n) {
        throw SimError("crosstalk file " + path + " is not square");
    }
    return CrosstalkMatrix(std::move(labels), std::move(m));
}

CrosstalkMatrix CrosstalkMatrix::default_device() {
    return from_csv(std::string(EOSIM_DATA_DIR) + "/device/crosstalk.csv");
}

size_t CrosstalkMatrix::index_of(const std::string &label) const {
    for (size_t i = 0; i < labels_.size(); i++) {
        if (labels_[i] == label) {
            return i;
        }
    }
    throw SimError("unknown electrode label " + label);
}

double CrosstalkMatrix::coefficient(const std::string &row, const std::string &col) const {
    return m_(index_of(row), index_of(col));
}

CrosstalkMatrix CrosstalkMatrix::without_barrier_barrier() const {
    Eigen::MatrixXd m = m_;
    for (size_t i = 0; i < labels_.size(); i++) {
        for (size_t j = 0; j < labels_.size(); j++) {
            if (i != j && labels_[i][0] == 'B' && labels_[j][0] == 'B') {
                m(i, j) = 0;
            }
        }
    }
    return CrosstalkMatrix(labels_, m);
}

namespace {

Eigen::VectorXd to_vector(const CrosstalkMatrix &m, const std::map<std::string, double> &values) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m.labels().size());
    for (const auto &[label, value] : values) {
        v(m.index_of(label)) = value;
    }
    return v;
}

std::map<std::string, double> to_map(const CrosstalkMatrix &m, const Eigen::VectorXd &v) {
    std::map<std::string, double> out;
    for (size_t i = 0; i < m.labels().size(); i++) {
        out[m.labels()[i]] = v(i);
    }
    return out;
}

}  // namespace

std::map<std::string, double> CrosstalkMatrix::to_physical_voltages(
    const std::map<std::string, double> &virtual_pulse) const {
    return to_map(*this, lu_.solve(to_vector(*this, virtual_pulse)));
}

std::map<std::string, double> CrosstalkMatrix::effective_barrier_voltage(
    const std::map<std::string, double> &applied) const {
    return to_map(*this, m_ * to_vector(*this, applied));
}

double detuning_factor(double epsilon, double charging_scale) {
    double x = epsilon / charging_scale;
    if (std::abs(x) >= 1) {
        throw SimError("detuning outside the (1,1) charge region");
    }
    return 0.5 * (1 / (1 - x) + 1 / (1 + x));
}

FingerprintMap synth_fingerprint(const ExchangeCalibration &cal, const std::vector<double> &detuning_grid,
                                 const std::vector<double> &barrier_grid, int n_pulses, double t_p,
                                 double charging_scale, double barrier_shift) {
    if (n_pulses < 1) {
        throw SimError("fingerprint needs at least one pulse");
    }
    FingerprintMap out{detuning_grid, barrier_grid, {}};
    out.p_triplet.assign(detuning_grid.size(), std::vector<double>(barrier_grid.size()));
    for (size_t i = 0; i < detuning_grid.size(); i++) {
        double d = detuning_factor(detuning_grid[i], charging_scale);
        for (size_t j = 0; j < barrier_grid.size(); j++) {
            double angle = exchange_from_voltage(cal, barrier_grid[j] + barrier_shift) * d * t_p;
            // The separated singlet sits in the gradient eigenbasis as |up,dn>;
            // return-to-PSB maps |dn,up> onto the blocked triplet branch.
            StateVector s = StateVector::basis_state(2, 0b10);
            for (int k = 0; k < n_pulses; k++) {
                apply_exchange(s, 0, 1, angle);
            }
            out.p_triplet[i][j] = std::min(1.0, std::norm(s.amps[0b01]));
        }
    }
    return out;
}

void FilterParams::validate() const {
    if (tau.size() != amp.size()) {
        throw SimError("filter needs one amplitude per time constant");
    }
    for (size_t k = 0; k < tau.size(); k++) {
        if (!(tau[k] > 0) || !(std::abs(amp[k]) < 1)) {
            throw SimError("filter component needs tau > 0 and |c| < 1");
        }
    }
}

namespace {

struct Decay {
    std::vector<double> per_slot;
    std::vector<double> across_buffer;
};

Decay decay_factors(const PulseTiming &timing, const FilterParams &f) {
    Decay d;
    for (double tau : f.tau) {
        d.per_slot.push_back(std::exp(-(timing.t_p + timing.t_b) / tau));
        d.across_buffer.push_back(std::exp(-timing.t_b / tau));
    }
    return d;
}

}  // namespace

std::vector<double> distort_pulse_train(const std::vector<double> &amplitudes, const PulseTiming &timing,
                                        const FilterParams &f) {
    f.validate();
    Decay d = decay_factors(timing, f);
    std::vector<double> s(f.tau.size(), 0.0);
    std::vector<double> out(amplitudes.size());
    for (size_t n = 0; n < amplitudes.size(); n++) {
        double tail = 0;
        for (size_t k = 0; k < s.size(); k++) {
            if (n > 0) {
                s[k] = d.per_slot[k] * s[k] + d.across_buffer[k] * amplitudes[n - 1];
            }
            tail += f.amp[k] * s[k];
        }
        out[n] = amplitudes[n] + tail;
    }
    return out;
}

std::vector<double> predistort_pulse_train(const std::vector<double> &targets, const PulseTiming &timing,
                                           const FilterParams &f) {
    f.validate();
    double total = 0;
    for (double c : f.amp) {
        total += std::abs(c);
    }
    if (total >= 1) {
        throw SimError("pre-distortion diverges for total filter amplitude >= 1");
    }
    Decay d = decay_factors(timing, f);
    std::vector<double> s(f.tau.size(), 0.0);
    std::vector<double> out(targets.size());
    for (size_t n = 0; n < targets.size(); n++) {
        double tail = 0;
        for (size_t k = 0; k < s.size(); k++) {
            if (n > 0) {
                s[k] = d.per_slot[k] * s[k] + d.across_buffer[k] * out[n - 1];
            }
            tail += f.amp[k] * s[k];
        }
        out[n] = targets[n] - tail;
    }
    return out;
}

double buffer_spectroscopy_angle(const ExchangeCalibration &cal, double v, int n_pulses, const PulseTiming &timing,
                                 const FilterParams &f, bool predistort) {
    std::vector<double> train(n_pulses, v);
    if (predistort) {
        train = predistort_pulse_train(train, timing, f);
    }
    double total = 0;
    for (double eff : distort_pulse_train(train, timing, f)) {
        total += exchange_from_voltage(cal, eff) * timing.t_p;
    }
    return total;
}

}  // namespace eosim
