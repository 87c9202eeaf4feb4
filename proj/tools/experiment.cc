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


#include "experiment.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "eosim/device_model.h"
#include "eosim/gate_compiler.h"
#include "eosim/noise_bench.h"
#include "eosim/version.h"

namespace eosim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <typename T>
T field(const json &j, const char *key, const T &fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T required(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("missing required field '") + key + "'");
    }
    return field<T>(j, key, T{});
}

json section(const json &config, const char *key) {
    if (!config.contains(key)) {
        return json::object();
    }
    if (!config.at(key).is_object()) {
        throw ConfigError(std::string("'") + key + "' must be an object");
    }
    return config.at(key);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid given either as a list or as {start, stop, step}.
std::vector<double> grid(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("missing grid '") + key + "'");
    }
    const json &g = j.at(key);
    if (g.is_array()) {
        return field<std::vector<double>>(j, key, {});
    }
    double a = required<double>(g, "start"), b = required<double>(g, "stop"), s = required<double>(g, "step");
    if (!(s > 0) || b < a) {
        throw ConfigError(std::string("grid '") + key + "' needs step > 0 and stop >= start");
    }
    std::vector<double> out;
    size_t n = static_cast<size_t>(std::floor((b - a) / s + 1e-9)) + 1;
    for (size_t k = 0; k < n; k++) {
        out.push_back(a + k * s);
    }
    return out;
}

fs::path resolve(const fs::path &base, const std::string &p) {
    fs::path q(p);
    if (q.is_relative()) {
        q = base / q;
    }
    if (!fs::exists(q)) {
        throw ConfigError("referenced file does not exist: " + q.string());
    }
    return q;
}

ExchangeCalibration load_calibration(const json &config, const fs::path &base) {
    json dev = section(config, "device");
    ExchangeCalibration cal;
    if (dev.contains("calibration_json")) {
        fs::path p = resolve(base, required<std::string>(dev, "calibration_json"));
        std::ifstream in(p);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw ConfigError("cannot parse " + p.string() + ": " + e.what());
        }
        cal.alpha = field(j, "alpha", cal.alpha);
        cal.gamma = field(j, "gamma", cal.gamma);
        cal.kappa = field(j, "kappa", cal.kappa);
        cal.v_off = field(j, "v_off", cal.v_off);
        cal.v_min = field(j, "v_min", cal.v_min);
        cal.barrier = field(j, "barrier", cal.barrier);
    }
    return cal;
}

CrosstalkMatrix load_crosstalk(const json &config, const fs::path &base) {
    json dev = section(config, "device");
    if (!dev.contains("crosstalk_csv")) {
        return CrosstalkMatrix::default_device();
    }
    fs::path p = resolve(base, required<std::string>(dev, "crosstalk_csv"));
    try {
        return CrosstalkMatrix::from_csv(p.string());
    } catch (const SimError &e) {
        throw ConfigError(e.what());
    }
}

struct NoiseSetup {
    NoiseModel model;
    size_t samples = 1;
    json description;
};

NoiseSetup load_noise(const json &config, uint64_t seed) {
    json n = section(config, "noise");
    NoiseSetup out;
    std::string kind = field<std::string>(n, "model", "none");
    out.samples = field<size_t>(n, "samples", 1);
    if (out.samples < 1) {
        throw ConfigError("noise.samples must be at least 1");
    }
    if (kind == "none") {
    } else if (kind == "device") {
        out.model = device_noise_calibration().model;
    } else if (kind == "calibrated") {
        auto t2 = field<std::vector<double>>(n, "t2star_per_pair", default_pair_t2star());
        auto nosc = field<std::vector<double>>(n, "n_osc", {kDefaultNOsc});
        out.model = calibrate_noise(t2, nosc).model;
    } else if (kind == "custom") {
        auto fill = [&](const char *key, auto &arr) {
            if (!n.contains(key)) {
                return;
            }
            if (n.at(key).is_number()) {
                arr.fill(field<double>(n, key, 0));
            } else {
                auto v = field<std::vector<double>>(n, key, {});
                if (v.size() != arr.size()) {
                    throw ConfigError(std::string("noise.") + key + " needs " + std::to_string(arr.size()) + " values");
                }
                std::copy(v.begin(), v.end(), arr.begin());
            }
        };
        fill("sigma_b", out.model.sigma_b);
        fill("sigma_j_frac", out.model.sigma_j_frac);
    } else {
        throw ConfigError("unknown noise.model '" + kind + "'");
    }
    if (!field<bool>(n, "magnetic", true)) {
        out.model.sigma_b.fill(0);
    }
    if (!field<bool>(n, "charge", true)) {
        out.model.sigma_j_frac.fill(0);
    }
    try {
        out.model.validate();
    } catch (const SimError &e) {
        throw ConfigError(e.what());
    }
    out.model.seed = seed;
    out.description = {{"model", kind},
                       {"sigma_b", out.model.sigma_b},
                       {"sigma_j_frac", out.model.sigma_j_frac},
                       {"samples", out.samples}};
    return out;
}

ReadoutModel load_readout(const json &config) {
    json r = section(config, "readout");
    ReadoutModel m;
    m.assignment_errors = field(r, "assignment_errors", false);
    m.snr_q1 = field(r, "snr_q1", m.snr_q1);
    m.snr_q2 = field(r, "snr_q2", m.snr_q2);
    m.charge_locking = field(r, "charge_locking", m.charge_locking);
    m.integration_time = field(r, "integration_time", m.integration_time);
    try {
        m.validate();
    } catch (const SimError &e) {
        throw ConfigError(e.what());
    }
    return m;
}

json readout_json(const ReadoutModel &m) {
    return {{"assignment_errors", m.assignment_errors}, {"snr_q1", m.snr_q1},
            {"snr_q2", m.snr_q2},                       {"charge_locking", m.charge_locking},
            {"integration_time", m.integration_time},   {"ramp_time", m.ramp_time}};
}

json fit_json(const DecayFit &f) {
    return {{"A", f.a}, {"p", f.p}, {"B", f.b}, {"fidelity", f.fidelity}};
}

ConfigPair load_configs(const json &params) {
    try {
        return config_pair_from_name(field<std::string>(params, "configs", "standard"));
    } catch (const SimError &e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------------------

void rb_curves_csv(std::ostringstream &csv, const std::string &series, const RBResult &r) {
    for (const auto &c : r.curves) {
        for (size_t l = 0; l < r.config.lengths.size(); l++) {
            csv << series << ',' << c.recovery << ',' << r.config.lengths[l] << ',' << num(c.mean[l]) << ','
                << num(c.stderr_[l]);
            for (double p : c.outcomes[l]) {
                csv << ',' << num(p);
            }
            csv << '\n';
        }
    }
}

json rb_json(const RBResult &r) {
    json curves = json::array();
    for (const auto &c : r.curves) {
        curves.push_back({{"recovery", c.recovery}, {"mean", c.mean}, {"stderr", c.stderr_}, {"outcomes", c.outcomes}});
    }
    json j = {{"kind", rb_kind_name(r.config.kind)},
              {"qubits", r.config.n_qubits},
              {"lengths", r.config.lengths},
              {"curves", curves},
              {"mean_pulses_per_clifford", r.mean_pulses},
              {"mean_steps_per_clifford", r.mean_steps}};
    if (r.config.lengths.size() >= 3) {
        j["fit"] = fit_json(r.fit);
    }
    if (r.config.kind == RBKind::Blind) {
        j["visibility_fit"] = fit_json(r.visibility_fit);
        j["leakage_rate"] = r.leakage_rate;
    }
    return j;
}

RunOutput run_rb_kind(const json &config, RBKind kind, uint64_t seed, int threads) {
    json p = section(config, "params");
    RBConfig cfg;
    cfg.kind = kind;
    cfg.n_qubits = field(p, "qubits", kind == RBKind::Blind ? 1 : 2);
    cfg.target_qubit = field(p, "target_qubit", 0);
    cfg.lengths = field(p, "lengths", cfg.lengths);
    cfg.seeds_per_length = field(p, "seeds_per_length", cfg.seeds_per_length);
    cfg.parallel = field(p, "parallel", false);
    cfg.configs = load_configs(p);
    cfg.depolarizing = field(p, "depolarizing", 0.0);
    cfg.leakage = field(p, "leakage", 0.0);
    NoiseSetup noise = load_noise(config, seed);
    cfg.noise = noise.model;
    cfg.noise_samples = noise.samples;
    cfg.readout = load_readout(config);
    cfg.seed = seed;
    cfg.threads = threads;
    if (cfg.n_qubits != 1 && cfg.n_qubits != 2) {
        throw ConfigError("params.qubits must be 1 or 2");
    }
    if (cfg.lengths.size() < 3) {
        throw ConfigError("params.lengths needs at least three lengths for a fit");
    }

    json result = {{"experiment", config.at("experiment")},
                   {"seed", seed},
                   {"noise", noise.description},
                   {"readout", readout_json(cfg.readout)},
                   {"parallel", cfg.parallel}};
    std::ostringstream csv;
    csv << "series,recovery,length,mean,stderr,p00,p01,p10,p11\n";
    if (kind == RBKind::Interleaved) {
        std::string gate = required<std::string>(p, "interleaved");
        try {
            cfg.interleaved = entangler_from_name(gate);
        } catch (const SimError &e) {
            throw ConfigError(e.what());
        }
        RBConfig ref = cfg;
        ref.kind = RBKind::Standard;
        RBResult rr = run_rb(ref);
        RBResult ri = run_rb(cfg);
        result["reference"] = rb_json(rr);
        result["interleaved"] = rb_json(ri);
        result["interleaved_gate"] = gate;
        result["gate_fidelity"] = interleaved_fidelity(rr.fit.p, ri.fit.p, cfg.n_qubits);
        rb_curves_csv(csv, "reference", rr);
        rb_curves_csv(csv, "interleaved", ri);
    } else {
        RBResult r = run_rb(cfg);
        result["rb"] = rb_json(r);
        rb_curves_csv(csv, rb_kind_name(kind), r);
    }
    return {{{"rb_result.json", result.dump(1) + "\n"}, {"rb_decay.csv", csv.str()}}};
}

RunOutput run_xeb_kind(const json &config, uint64_t seed, int threads) {
    json p = section(config, "params");
    XEBConfig cfg;
    cfg.cycles = field(p, "cycles", cfg.cycles);
    cfg.n_circuits = field(p, "circuits", cfg.n_circuits);
    cfg.configs = load_configs(p);
    cfg.depolarizing = field(p, "depolarizing", 0.0);
    cfg.shots = field(p, "shots", 0);
    NoiseSetup noise = load_noise(config, seed);
    cfg.noise = noise.model;
    cfg.noise_samples = noise.samples;
    cfg.readout = load_readout(config);
    cfg.seed = seed;
    cfg.threads = threads;
    std::vector<std::string> modes = field<std::vector<std::string>>(p, "modes", {"sequential"});
    json result = {{"experiment", "xeb"}, {"seed", seed}, {"noise", noise.description}, {"readout", readout_json(cfg.readout)}};
    std::ostringstream csv;
    csv << "mode,cycles,mean,stderr,ideal_collision\n";
    for (const auto &mode : modes) {
        if (mode != "sequential" && mode != "parallel") {
            throw ConfigError("unknown XEB mode '" + mode + "'");
        }
        cfg.parallel = mode == "parallel";
        XEBResult r = run_xeb(cfg);
        result[mode] = {{"cycles", r.config.cycles},
                        {"mean", r.mean},
                        {"stderr", r.stderr_},
                        {"scores", r.scores},
                        {"cycle_fidelity", r.cycle_fidelity},
                        {"amplitude", r.amplitude}};
        for (size_t c = 0; c < r.mean.size(); c++) {
            csv << mode << ',' << cfg.cycles[c] << ',' << num(r.mean[c]) << ',' << num(r.stderr_[c]) << ','
                << num(r.raw_ideal[c]) << '\n';
        }
    }
    return {{{"xeb_result.json", result.dump(1) + "\n"}, {"xeb_decay.csv", csv.str()}}};
}

RunOutput run_fingerprint(const json &config, const fs::path &base) {
    json p = section(config, "params");
    ExchangeCalibration cal = load_calibration(config, base);
    CrosstalkMatrix phys = load_crosstalk(config, base);
    std::string target = field<std::string>(p, "barrier", "B" + std::to_string(cal.barrier));
    std::string aggressor = field<std::string>(p, "aggressor", "");
    double amp = field(p, "aggressor_amplitude", 0.0);
    bool compensated = field(p, "compensated", true);
    int n_pulses = field(p, "pulses", 8);
    double t_p = field(p, "t_p", 10.92e-9);
    double charging = field(p, "charging_scale", 10.0);
    auto dets = grid(p, "detunings");
    auto bars = grid(p, "barriers");
    double shift = 0;
    if (!aggressor.empty()) {
        std::map<std::string, double> pulse{{target, 0.0}, {aggressor, amp}};
        try {
            const CrosstalkMatrix naive = phys.without_barrier_barrier();
            auto applied = compensated ? phys.to_physical_voltages(pulse) : naive.to_physical_voltages(pulse);
            shift = phys.effective_barrier_voltage(applied).at(target);
        } catch (const std::out_of_range &) {
            throw ConfigError("unknown barrier label");
        } catch (const SimError &e) {
            throw ConfigError(e.what());
        }
    }
    FingerprintMap fp = synth_fingerprint(cal, dets, bars, n_pulses, t_p, charging, shift);
    std::ostringstream csv;
    csv << "detuning,barrier,p_triplet\n";
    for (size_t i = 0; i < dets.size(); i++) {
        for (size_t j = 0; j < bars.size(); j++) {
            csv << num(dets[i]) << ',' << num(bars[j]) << ',' << num(fp.p_triplet[i][j]) << '\n';
        }
    }
    json result = {{"experiment", "fingerprint"},
                   {"barrier", target},
                   {"aggressor", aggressor},
                   {"aggressor_amplitude", amp},
                   {"compensated", compensated},
                   {"barrier_shift", shift},
                   {"pulses", n_pulses},
                   {"calibration",
                    {{"alpha", cal.alpha}, {"gamma", cal.gamma}, {"kappa", cal.kappa}, {"v_off", cal.v_off}}},
                   {"detunings", dets},
                   {"barriers", bars},
                   {"p_triplet", fp.p_triplet}};
    return {{{"fingerprint_result.json", result.dump(1) + "\n"}, {"fingerprint.csv", csv.str()}}};
}

RunOutput run_tomo(const json &config, uint64_t seed) {
    json p = section(config, "params");
    std::string state = field<std::string>(p, "state", "00");
    int shots = field(p, "shots", 0);
    NoiseSetup noise = load_noise(config, seed);
    ReadoutModel readout = load_readout(config);
    const auto &g2 = Clifford2Group::instance();
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    if (state == "iswap-phase") {
        Eigen::Matrix2cd h;
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        Eigen::Matrix4cd hi = Eigen::Matrix4cd::Zero();
        hi.block<2, 2>(0, 0) = h(0, 0) * Eigen::Matrix2cd::Identity();
        hi.block<2, 2>(0, 2) = h(0, 1) * Eigen::Matrix2cd::Identity();
        hi.block<2, 2>(2, 0) = h(1, 0) * Eigen::Matrix2cd::Identity();
        hi.block<2, 2>(2, 2) = h(1, 1) * Eigen::Matrix2cd::Identity();
        u = entangler_unitary(Entangler::ISWAP) * hi;
    } else if (state != "00") {
        throw ConfigError("params.state must be '00' or 'iswap-phase'");
    }
    GateSequence prep = decompose_2q_clifford(g2.index_of(u), standard_configs());
    TomographyResult r = state_tomography(prep, u.col(0), noise.model, readout, shots, seed, noise.samples);
    std::ostringstream csv;
    csv << "row,col,re,im\n";
    json rho = json::array();
    for (int i = 0; i < 4; i++) {
        json row = json::array();
        for (int j = 0; j < 4; j++) {
            csv << i << ',' << j << ',' << num(r.rho(i, j).real()) << ',' << num(r.rho(i, j).imag()) << '\n';
            row.push_back({r.rho(i, j).real(), r.rho(i, j).imag()});
        }
        rho.push_back(row);
    }
    json result = {{"experiment", "tomo"},
                   {"state", state},
                   {"shots", shots},
                   {"noise", noise.description},
                   {"readout", readout_json(readout)},
                   {"fidelity", r.fidelity},
                   {"rho", rho},
                   {"phase_01_00", std::arg(r.rho(1, 0))}};
    return {{{"tomo_result.json", result.dump(1) + "\n"}, {"tomo_rho.csv", csv.str()}}};
}

RunOutput run_calibrate(const json &config, uint64_t seed, int threads) {
    json p = section(config, "params");
    auto t2 = field<std::vector<double>>(p, "t2star_per_pair", default_pair_t2star());
    auto nosc = field<std::vector<double>>(p, "n_osc", {kDefaultNOsc});
    NoiseCalibration cal = calibrate_noise(t2, nosc, seed);
    json result = {{"experiment", "calibrate"},
                   {"t2star_per_pair", t2},
                   {"n_osc", nosc},
                   {"t2star_average", cal.t2star_target},
                   {"t2star_refit", cal.t2star_fit},
                   {"t2star_pair_refit", cal.t2star_pair_fit},
                   {"sigma_b", cal.model.sigma_b},
                   {"sigma_j_frac", cal.model.sigma_j_frac},
                   {"n_osc_refit", cal.n_osc_fit}};
    std::ostringstream csv;
    csv << "gate,schedule,noise,pulses,steps,error,stderr\n";
    size_t samples = field<size_t>(p, "budget_samples", 0);
    if (samples > 0) {
        json budget = json::array();
        for (Entangler g : {Entangler::CNOT, Entangler::ISWAP, Entangler::SWAP}) {
            GateSequence seq = entangler_sequence(g, standard_configs());
            for (bool par : {false, true}) {
                for (const char *kind : {"magnetic", "charge"}) {
                    NoiseModel m = cal.model;
                    m.seed = seed;
                    if (std::string(kind) == "magnetic") {
                        m.sigma_j_frac.fill(0);
                    } else {
                        m.sigma_b.fill(0);
                    }
                    FidelityEstimate f = mc_gate_fidelity(seq, m, samples, par, threads);
                    size_t steps = par ? parallelize_schedule(seq).steps.size() : seq.size();
                    budget.push_back({{"gate", entangler_name(g)},
                                      {"schedule", par ? "parallel" : "sequential"},
                                      {"noise", kind},
                                      {"pulses", seq.size()},
                                      {"steps", steps},
                                      {"error", 1 - f.mean},
                                      {"stderr", f.stderr_}});
                    csv << entangler_name(g) << ',' << (par ? "parallel" : "sequential") << ',' << kind << ','
                        << seq.size() << ',' << steps << ',' << num(1 - f.mean) << ',' << num(f.stderr_) << '\n';
                }
            }
        }
        result["error_budget"] = budget;
    }
    return {{{"calibrate_result.json", result.dump(1) + "\n"}, {"error_budget.csv", csv.str()}}};
}

RunOutput run_buffer_spec(const json &config, const fs::path &base) {
    json p = section(config, "params");
    ExchangeCalibration cal = load_calibration(config, base);
    FilterParams f;
    json filt = section(p, "filter");
    f.tau = field<std::vector<double>>(filt, "tau", {});
    f.amp = field<std::vector<double>>(filt, "amp", {});
    try {
        f.validate();
    } catch (const SimError &e) {
        throw ConfigError(e.what());
    }
    int n = field(p, "pulses", 12);
    double t_p = field(p, "t_p", 10.92e-9);
    auto tbs = grid(p, "buffer_times");
    auto phis = grid(p, "angles");
    std::ostringstream csv;
    csv << "t_b,target_angle,raw_angle,predistorted_angle\n";
    json rows = json::array();
    for (double tb : tbs) {
        for (double phi : phis) {
            double v = voltage_for_angle(cal, phi, t_p);
            PulseTiming timing{t_p, tb};
            double raw = buffer_spectroscopy_angle(cal, v, n, timing, f, false) / n;
            double pre = buffer_spectroscopy_angle(cal, v, n, timing, f, true) / n;
            csv << num(tb) << ',' << num(phi) << ',' << num(raw) << ',' << num(pre) << '\n';
            rows.push_back({tb, phi, raw, pre});
        }
    }
    json result = {{"experiment", "buffer-spec"},
                   {"pulses", n},
                   {"filter", {{"tau", f.tau}, {"amp", f.amp}}},
                   {"columns", {"t_b", "target_angle", "raw_angle", "predistorted_angle"}},
                   {"rows", rows}};
    return {{{"buffer_spec_result.json", result.dump(1) + "\n"}, {"buffer_spec.csv", csv.str()}}};
}

}  // namespace

std::string fnv1a_hex(const std::string &bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json load_config(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError("cannot parse " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (j.contains("manifest_version")) {
        if (!j.contains("config")) {
            throw ConfigError("manifest has no recorded config");
        }
        json c = j.at("config");
        if (j.contains("config_dir") && !c.contains("base_dir")) {
            c["base_dir"] = j.at("config_dir");
        }
        return c;
    }
    return j;
}

RunOutput run_experiment(const json &config, const fs::path &base_dir) {
    std::string kind = required<std::string>(config, "experiment");
    if (!config.contains("seed") || !config.at("seed").is_number_unsigned()) {
        throw ConfigError("a non-negative integer 'seed' is required");
    }
    uint64_t seed = config.at("seed").get<uint64_t>();
    int threads = field(config, "threads", 1);
    if (threads < 1) {
        throw ConfigError("threads must be at least 1");
    }
    fs::path base = config.contains("base_dir") ? fs::path(required<std::string>(config, "base_dir")) : base_dir;
    if (kind == "rb") {
        return run_rb_kind(config, RBKind::Standard, seed, threads);
    }
    if (kind == "blind-rb") {
        return run_rb_kind(config, RBKind::Blind, seed, threads);
    }
    if (kind == "irb") {
        return run_rb_kind(config, RBKind::Interleaved, seed, threads);
    }
    if (kind == "xeb") {
        return run_xeb_kind(config, seed, threads);
    }
    if (kind == "fingerprint") {
        return run_fingerprint(config, base);
    }
    if (kind == "tomo") {
        return run_tomo(config, seed);
    }
    if (kind == "calibrate") {
        return run_calibrate(config, seed, threads);
    }
    if (kind == "buffer-spec") {
        return run_buffer_spec(config, base);
    }
    throw ConfigError("unknown experiment '" + kind + "'");
}

void write_outputs(const fs::path &dir, const json &config, RunOutput out) {
    fs::create_directories(dir);
    json files = json::array();
    for (const auto &[name, bytes] : out.files) {
        files.push_back({{"name", name}, {"fnv1a64", fnv1a_hex(bytes)}, {"bytes", bytes.size()}});
    }
    std::string canonical = config.dump();
    json manifest = {{"manifest_version", 1},
                     {"library", "eosim"},
                     {"library_version", kVersion},
                     {"config_hash", fnv1a_hex(canonical)},
                     {"seed", config.at("seed")},
                     {"config", config},
                     {"outputs", files}};
    if (config.contains("base_dir")) {
        manifest["config_dir"] = config.at("base_dir");
    }
    out.files.emplace_back("manifest.json", manifest.dump(1) + "\n");

    std::vector<fs::path> staged;
    try {
        for (const auto &[name, bytes] : out.files) {
            fs::path tmp = dir / (name + ".tmp");
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            f.close();
            if (!f) {
                throw std::runtime_error("cannot write " + tmp.string());
            }
            staged.push_back(tmp);
        }
        for (size_t k = 0; k < staged.size(); k++) {
            fs::rename(staged[k], dir / out.files[k].first);
        }
    } catch (...) {
        for (const auto &p : staged) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    }
}

int main(int argc, char **argv) {
    CLI::App app{"eosim: exchange-only spin qubit experiments"};
    app.require_subcommand(1);
    CLI::App *run = app.add_subcommand("run", "run one experiment from a JSON config or manifest");
    std::string config_path, out_dir;
    uint64_t seed = 0;
    int threads = 0;
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    auto *seed_opt = run->add_option("--seed", seed, "overrides the config seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_subcommand("version", "print the library version")->callback([] { std::cout << kVersion << "\n"; });
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!run->parsed()) {
        return 0;
    }
    try {
        fs::path cfg_path(config_path);
        json config = load_config(cfg_path);
        if (*seed_opt) {
            config["seed"] = seed;
        }
        if (threads > 0) {
            config["threads"] = threads;
        }
        if (!config.contains("base_dir")) {
            config["base_dir"] = fs::absolute(cfg_path).parent_path().string();
        }
        fs::path dir = !out_dir.empty() ? fs::path(out_dir) : fs::path(field<std::string>(config, "output_dir", "."));
        // Thread count never changes results, so keep it out of the recorded config.
        json recorded = config;
        recorded.erase("threads");
        recorded.erase("output_dir");
        RunOutput out = run_experiment(config, fs::path(config.at("base_dir").get<std::string>()));
        write_outputs(dir, recorded, std::move(out));
        std::cout << "wrote " << dir.string() << "\n";
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SimError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace eosim::cli
