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
#include <random>

#include "gtest/gtest.h"

using namespace eosim;

namespace {

constexpr double kTp = 10.92e-9;

ExchangeCalibration quadratic_cal() {
    ExchangeCalibration cal;
    cal.kappa = 0.001;
    return cal;
}

}  // namespace

TEST(exchange_calibration, zero_voltage_gives_alpha) {
    ExchangeCalibration cal;
    EXPECT_DOUBLE_EQ(exchange_from_voltage(cal, 0), cal.alpha);
    EXPECT_NEAR(exchange_from_voltage(cal, std::log(2.0) / cal.gamma), 2 * cal.alpha, 1e-6 * cal.alpha);
}

TEST(exchange_calibration, monotone_without_curvature) {
    ExchangeCalibration cal;
    double prev = 0;
    for (double v = -300; v <= 120; v += 7.5) {
        double j = exchange_from_voltage(cal, v);
        EXPECT_GT(j, prev);
        prev = j;
    }
}

TEST(exchange_calibration, overflow_throws) {
    ExchangeCalibration cal;
    cal.kappa = 1;
    EXPECT_THROW(exchange_from_voltage(cal, 1e4), SimError);
}

TEST(exchange_calibration, log_branch_closed_form) {
    ExchangeCalibration cal;
    EXPECT_NEAR(voltage_for_angle(cal, cal.alpha * kTp, kTp), 0.0, 1e-12);
    double phi = 1.2345;
    double expected = std::log(phi / (kTp * cal.alpha)) / cal.gamma;
    EXPECT_NEAR(voltage_for_angle(cal, phi, kTp), expected, 1e-12);
}

TEST(exchange_calibration, quadratic_branch_round_trip) {
    ExchangeCalibration cal = quadratic_cal();
    for (double phi : {kPi / 2, kPi, 3 * kPi / 2}) {
        double v = voltage_for_angle(cal, phi, kTp);
        // Independent check: v must solve kappa v^2 + gamma v = ln(phi / (alpha t_p)).
        EXPECT_NEAR(cal.kappa * v * v + cal.gamma * v, std::log(phi / (cal.alpha * kTp)), 1e-12);
        EXPECT_NEAR(exchange_from_voltage(cal, v) * kTp / phi, 1.0, 1e-10);
    }
}

TEST(exchange_calibration, round_trip_over_grid) {
    for (double kappa : {0.0, 1e-4, 1e-3, -1e-5}) {
        for (double gamma : {0.02, 0.04, 0.08}) {
            ExchangeCalibration cal;
            cal.kappa = kappa;
            cal.gamma = gamma;
            for (double phi = 0.5; phi < 7; phi += 0.37) {
                double v = voltage_for_angle(cal, phi, kTp);
                EXPECT_NEAR(exchange_from_voltage(cal, v) * kTp / phi, 1.0, 1e-10) << kappa << " " << gamma;
            }
        }
    }
}

TEST(exchange_calibration, domain_errors) {
    ExchangeCalibration cal;
    EXPECT_THROW(voltage_for_angle(cal, 0, kTp), SimError);
    EXPECT_THROW(voltage_for_angle(cal, 1e-30, kTp), SimError);
    ExchangeCalibration neg = cal;
    neg.kappa = -1e-3;
    EXPECT_THROW(voltage_for_angle(neg, 1e6, kTp), SimError);
}

TEST(exchange_calibration, idle_voltage_is_quiet) {
    ExchangeCalibration cal;
    EXPECT_NO_THROW(cal.validate(kTp));
    cal.v_off = 0;
    EXPECT_THROW(cal.validate(kTp), SimError);
}

TEST(crosstalk, csv_matches_printed_table) {
    CrosstalkMatrix m = CrosstalkMatrix::default_device();
    ASSERT_EQ(m.labels().size(), 15u);
    EXPECT_EQ(m.labels().front(), "P3");
    EXPECT_EQ(m.labels().back(), "P10");
    EXPECT_DOUBLE_EQ(m.coefficient("B8", "B6"), 0.051);
    EXPECT_DOUBLE_EQ(m.coefficient("B6", "B8"), 0.018);
    EXPECT_DOUBLE_EQ(m.coefficient("P4", "B7"), 0.0025);
    EXPECT_DOUBLE_EQ(m.coefficient("B7", "B9"), 0.008);
    for (size_t i = 0; i < 15; i++) {
        EXPECT_EQ(m.matrix()(i, i), 1.0);
    }
}

TEST(crosstalk, identity_passes_through) {
    auto m = CrosstalkMatrix::identity({"B6", "B7", "B8"});
    auto out = m.to_physical_voltages({{"B7", 12.5}});
    EXPECT_EQ(out["B6"], 0.0);
    EXPECT_EQ(out["B7"], 12.5);
    EXPECT_EQ(out["B8"], 0.0);
}

TEST(crosstalk, virtual_b8_pulse_is_compensated) {
    CrosstalkMatrix m = CrosstalkMatrix::default_device();
    auto phys = m.to_physical_voltages({{"B8", 50}});
    // Oracle: a different factorization of the same matrix.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(15);
    rhs(m.index_of("B8")) = 50;
    Eigen::VectorXd x = m.matrix().colPivHouseholderQr().solve(rhs);
    for (size_t i = 0; i < 15; i++) {
        EXPECT_NEAR(phys[m.labels()[i]], x(i), 1e-9);
    }
    for (const char *lbl : {"B5", "B7", "B9"}) {
        EXPECT_GT(std::abs(phys[lbl]), 0.05) << lbl;
    }
    EXPECT_GT(std::abs(phys["P8"]), 1.0);
}

TEST(crosstalk, forward_linear_arithmetic) {
    CrosstalkMatrix m = CrosstalkMatrix::default_device();
    auto eff = m.effective_barrier_voltage({{"B6", 50}});
    EXPECT_NEAR(eff["B8"], 0.051 * 50, 1e-12);
    EXPECT_NEAR(eff["B7"], 0.044 * 50, 1e-12);
    EXPECT_NEAR(eff["B6"], 50, 1e-12);
    auto zero = m.effective_barrier_voltage({});
    for (const auto &[k, v] : zero) {
        EXPECT_EQ(v, 0.0) << k;
    }
    EXPECT_THROW(m.effective_barrier_voltage({{"B99", 1}}), SimError);
}

TEST(crosstalk, forward_inverse_identity) {
    CrosstalkMatrix m = CrosstalkMatrix::default_device();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-80, 80);
    for (int trial = 0; trial < 50; trial++) {
        std::map<std::string, double> virt;
        for (const auto &l : m.labels()) {
            virt[l] = u(rng);
        }
        auto back = m.effective_barrier_voltage(m.to_physical_voltages(virt));
        for (const auto &l : m.labels()) {
            EXPECT_NEAR(back[l], virt[l], 1e-9);
        }
    }
}

TEST(crosstalk, compensation_confined_to_target_axis) {
    CrosstalkMatrix m = CrosstalkMatrix::default_device();
    auto eff = m.effective_barrier_voltage(m.to_physical_voltages({{"B6", 40}}));
    for (const auto &[k, v] : eff) {
        EXPECT_NEAR(v, k == "B6" ? 40.0 : 0.0, 1e-9) << k;
    }
}

TEST(crosstalk, rejects_bad_matrices) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(0, 0) = 0.9;
    EXPECT_THROW(CrosstalkMatrix({"B1", "B2"}, m), SimError);
    Eigen::MatrixXd s = Eigen::MatrixXd::Ones(2, 2);
    EXPECT_THROW(CrosstalkMatrix({"B1", "B2"}, s), SimError);
}

TEST(fingerprint, detuning_factor_shape) {
    EXPECT_EQ(detuning_factor(0, 10), 1.0);
    EXPECT_DOUBLE_EQ(detuning_factor(3, 10), detuning_factor(-3, 10));
    EXPECT_GT(detuning_factor(9, 10), detuning_factor(5, 10));
    EXPECT_THROW(detuning_factor(10, 10), SimError);
}

TEST(fingerprint, zero_detuning_column_is_two_level_pattern) {
    ExchangeCalibration cal;
    std::vector<double> vs;
    for (double v = -40; v <= 40; v += 2.5) {
        vs.push_back(v);
    }
    auto fp = synth_fingerprint(cal, {0.0, 4.0}, vs, 8, kTp);
    for (size_t j = 0; j < vs.size(); j++) {
        double theta = cal.alpha * std::exp(cal.gamma * vs[j]) * kTp;
        double s = std::sin(8 * theta / 2);
        EXPECT_NEAR(fp.p_triplet[0][j], s * s, 1e-12);
        EXPECT_GE(fp.p_triplet[1][j], 0.0);
        EXPECT_LE(fp.p_triplet[1][j], 1.0);
    }
}

TEST(fingerprint, closed_barrier_gives_no_triplet) {
    ExchangeCalibration cal;
    auto fp = synth_fingerprint(cal, {-5, 0, 5}, {-600}, 8, kTp);
    for (const auto &row : fp.p_triplet) {
        EXPECT_LT(row[0], 1e-12);
    }
}

TEST(fingerprint, uncompensated_neighbor_shifts_pattern_linearly) {
    ExchangeCalibration cal;
    CrosstalkMatrix phys = CrosstalkMatrix::default_device();
    CrosstalkMatrix naive = phys.without_barrier_barrier();
    double c = phys.coefficient("B8", "B6");
    for (double amp : {10.0, 20.0, 40.0}) {
        auto applied = naive.to_physical_voltages({{"B8", 0}, {"B6", amp}});
        double shift = phys.effective_barrier_voltage(applied)["B8"];
        EXPECT_NEAR(shift, c * amp, 1e-12);
        auto shifted = synth_fingerprint(cal, {0}, {0, 10, 20}, 8, kTp, 10, shift);
        auto moved = synth_fingerprint(cal, {0}, {c * amp, 10 + c * amp, 20 + c * amp}, 8, kTp);
        EXPECT_EQ(shifted.p_triplet, moved.p_triplet);

        auto comp = phys.to_physical_voltages({{"B8", 0}, {"B6", amp}});
        EXPECT_NEAR(phys.effective_barrier_voltage(comp)["B8"], 0.0, 1e-12);
    }
}

TEST(distortion, vanishing_time_constant_is_transparent) {
    std::vector<double> a{10, -3, 0, 7.5, 7.5};
    FilterParams f{{1e-15}, {0.3}};
    auto out = distort_pulse_train(a, {}, f);
    for (size_t n = 0; n < a.size(); n++) {
        EXPECT_NEAR(out[n], a[n], 1e-12);
    }
    FilterParams none;
    EXPECT_EQ(predistort_pulse_train(a, {}, none), a);
}

TEST(distortion, single_pulse_leaves_exponential_tail) {
    PulseTiming t{10e-9, 5e-9};
    FilterParams f{{200e-9, 40e-9}, {0.02, -0.05}};
    std::vector<double> a(30, 0.0);
    a[0] = 100;
    auto out = distort_pulse_train(a, t, f);
    EXPECT_EQ(out[0], 100.0);
    for (int n = 1; n < 30; n++) {
        double dt = t.t_b + (n - 1) * (t.t_p + t.t_b);
        double expected = 100 * (0.02 * std::exp(-dt / 200e-9) - 0.05 * std::exp(-dt / 40e-9));
        EXPECT_NEAR(out[n], expected, 1e-12);
    }
}

TEST(distortion, round_trip_long_train) {
    PulseTiming t{10.92e-9, 7.28e-9};
    FilterParams f{{500e-9, 30e-9}, {0.04, 0.02}};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(20, 120);
    std::vector<double> x(10000);
    for (auto &v : x) {
        v = u(rng);
    }
    auto back = distort_pulse_train(predistort_pulse_train(x, t, f), t, f);
    for (size_t n = 0; n < x.size(); n++) {
        ASSERT_NEAR(back[n] / x[n], 1.0, 1e-3);
    }
}

TEST(distortion, divergent_filter_rejected) {
    FilterParams f{{1e-7, 2e-7}, {0.6, 0.5}};
    EXPECT_THROW(predistort_pulse_train({1, 2}, {}, f), SimError);
    FilterParams bad{{-1e-7}, {0.1}};
    EXPECT_THROW(distort_pulse_train({1}, {}, bad), SimError);
}

TEST(distortion, buffer_spectroscopy_trend) {
    ExchangeCalibration cal;
    FilterParams f{{500e-9}, {0.03}};
    double v = voltage_for_angle(cal, kPi, kTp);
    double ideal = 12 * kPi;
    double prev = 1e9;
    for (double tb = 1e-9; tb < 2e-6; tb *= 1.6) {
        double raw = buffer_spectroscopy_angle(cal, v, 12, {kTp, tb}, f, false);
        EXPECT_GT(raw, ideal);
        EXPECT_LT(raw - ideal, prev);
        prev = raw - ideal;
        double flat = buffer_spectroscopy_angle(cal, v, 12, {kTp, tb}, f, true);
        EXPECT_NEAR(flat / ideal, 1.0, 1e-10);
    }
}
