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


#include "eosim/gate_compiler.h"

#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <unordered_set>

#include "json.hpp"

namespace eosim {

namespace {

const cplx kI(0, 1);

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd m;
    switch (k) {
        case 0:
            m << 0, 1, 1, 0;
            break;
        case 1:
            m << 0, -kI, kI, 0;
            break;
        default:
            m << 1, 0, 0, -1;
    }
    return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

template <typename M>
UnitaryKey key_of(const M &u) {
    UnitaryKey key{};
    cplx phase = 0;
    for (int j = 0; j < u.cols() && phase == cplx(0); j++) {
        for (int i = 0; i < u.rows(); i++) {
            if (std::abs(u(i, j)) > 1e-6) {
                phase = std::conj(u(i, j)) / std::abs(u(i, j));
                break;
            }
        }
    }
    size_t k = 0;
    for (int j = 0; j < u.cols(); j++) {
        for (int i = 0; i < u.rows(); i++) {
            cplx z = u(i, j) * phase;
            key[k++] = static_cast<int16_t>(std::lround(z.real() * 1024));
            key[k++] = static_cast<int16_t>(std::lround(z.imag() * 1024));
        }
    }
    return key;
}

}  // namespace

const char *entangler_name(Entangler g) {
    switch (g) {
        case Entangler::None:
            return "none";
        case Entangler::SWAP:
            return "SWAP";
        case Entangler::CNOT:
            return "CNOT";
        case Entangler::ISWAP:
            return "iSWAP";
    }
    return "?";
}

Entangler entangler_from_name(const std::string &name) {
    for (Entangler g : {Entangler::None, Entangler::SWAP, Entangler::CNOT, Entangler::ISWAP}) {
        if (name == entangler_name(g)) {
            return g;
        }
    }
    if (name == "ISWAP" || name == "iswap") {
        return Entangler::ISWAP;
    }
    if (name == "cnot") {
        return Entangler::CNOT;
    }
    if (name == "swap") {
        return Entangler::SWAP;
    }
    throw SimError("unknown gate '" + name + "'");
}

Eigen::Matrix4cd entangler_unitary(Entangler g) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (g) {
        case Entangler::None:
            m.setIdentity();
            break;
        case Entangler::SWAP:
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            break;
        case Entangler::CNOT:
            // Control on Q1 (the high bit of the index).
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            break;
        case Entangler::ISWAP:
            m(0, 0) = m(3, 3) = 1;
            m(1, 2) = m(2, 1) = kI;
            break;
    }
    return m;
}

void GateSequence::append(const GateSequence &next) {
    if (!(next.configs_in == configs_out)) {
        throw SimError("cannot append a sequence compiled for " + config_pair_name(next.configs_in) + " after one ending in " +
                       config_pair_name(configs_out));
    }
    size_t base = pulses.size();
    if (base > 0 && !next.pulses.empty()) {
        fences.push_back(base);
    }
    for (size_t f : next.fences) {
        fences.push_back(base + f);
    }
    pulses.insert(pulses.end(), next.pulses.begin(), next.pulses.end());
    configs_out = next.configs_out;
}

PulseSchedule GateSequence::sequential(double t_p, double t_b) const {
    PulseSchedule s;
    s.t_p = t_p;
    s.t_b = t_b;
    for (const auto &p : pulses) {
        s.steps.push_back({p});
    }
    return s;
}

size_t UnitaryKeyHash::operator()(const UnitaryKey &k) const {
    uint64_t h = 1469598103934665603ull;
    for (int16_t v : k) {
        h ^= static_cast<uint16_t>(v);
        h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
}

UnitaryKey unitary_key(const Eigen::Matrix2cd &u) {
    return key_of(u);
}

UnitaryKey unitary_key(const Eigen::Matrix4cd &u) {
    return key_of(u);
}

const Clifford1Group &Clifford1Group::instance() {
    static const Clifford1Group group;
    return group;
}

Clifford1Group::Clifford1Group() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Eigen::Matrix2cd s;
    s << 1, 0, 0, kI;
    std::deque<Eigen::Matrix2cd> queue{Eigen::Matrix2cd::Identity()};
    while (!queue.empty()) {
        Eigen::Matrix2cd u = queue.front();
        queue.pop_front();
        auto key = unitary_key(u);
        if (index_.count(key)) {
            continue;
        }
        index_[key] = static_cast<int>(elems_.size());
        elems_.push_back(u);
        queue.push_back(h * u);
        queue.push_back(s * u);
    }
    if (elems_.size() != 24) {
        throw SimError("single-qubit Clifford enumeration produced " + std::to_string(elems_.size()) + " elements");
    }
    table_.resize(24);
    inverse_.resize(24);
    for (int a = 0; a < 24; a++) {
        for (int b = 0; b < 24; b++) {
            table_[a][b] = index_of(elems_[b] * elems_[a]);
            if (table_[a][b] == 0) {
                inverse_[a] = b;
            }
        }
    }
    Eigen::Matrix2cd v = 0.5 * (Eigen::Matrix2cd::Identity() - kI * (pauli(0) + pauli(1) + pauli(2)));
    v_ = index_of(v);
}

int Clifford1Group::index_of(const Eigen::Matrix2cd &u) const {
    auto it = index_.find(unitary_key(u));
    if (it == index_.end()) {
        throw SimError("unitary is not a single-qubit Clifford");
    }
    return it->second;
}

const Clifford2Group &Clifford2Group::instance() {
    static const Clifford2Group group;
    return group;
}

Clifford2Group::Clifford2Group() {
    const auto &c1 = Clifford1Group::instance();
    std::array<int, 3> coset{0, c1.v(), c1.v2()};
    auto add = [&](const Eigen::Matrix4cd &u, const Clifford2Form &f) {
        auto key = unitary_key(u);
        if (!index_.emplace(key, static_cast<int>(elems_.size())).second) {
            throw SimError("canonical Clifford forms are not distinct");
        }
        elems_.push_back(u);
        forms_.push_back(f);
    };
    for (Entangler g : {Entangler::None, Entangler::SWAP, Entangler::CNOT, Entangler::ISWAP}) {
        Eigen::Matrix4cd gu = entangler_unitary(g);
        bool with_coset = g == Entangler::CNOT || g == Entangler::ISWAP;
        int nr = with_coset ? 3 : 1;
        for (int l1 = 0; l1 < 24; l1++) {
            for (int l2 = 0; l2 < 24; l2++) {
                Eigen::Matrix4cd left = kron(c1.unitary(l1), c1.unitary(l2)) * gu;
                for (int a = 0; a < nr; a++) {
                    for (int b = 0; b < nr; b++) {
                        Clifford2Form f{l1, l2, g, coset[a], coset[b]};
                        add(left * kron(c1.unitary(f.r1), c1.unitary(f.r2)), f);
                    }
                }
            }
        }
    }
    if (elems_.size() != kOrder) {
        throw SimError("two-qubit Clifford table has " + std::to_string(elems_.size()) + " elements");
    }
}

int Clifford2Group::index_of(const Eigen::Matrix4cd &u) const {
    auto it = index_.find(unitary_key(u));
    if (it == index_.end()) {
        throw SimError("unitary is not a two-qubit Clifford");
    }
    return it->second;
}

bool Clifford2Group::contains(const Eigen::Matrix4cd &u) const {
    return index_.count(unitary_key(u)) > 0;
}

int Clifford2Group::compose(int first, int second) const {
    return index_of(elems_.at(second) * elems_.at(first));
}

int Clifford2Group::inverse(int index) const {
    return index_of(elems_.at(index).adjoint());
}

std::array<size_t, 4> Clifford2Group::class_sizes() const {
    std::array<size_t, 4> n{};
    for (const auto &f : forms_) {
        n[static_cast<int>(f.gate)]++;
    }
    return n;
}

std::vector<Eigen::Matrix4cd> enumerate_2q_clifford_bfs() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Eigen::Matrix2cd s;
    s << 1, 0, 0, kI;
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    std::vector<Eigen::Matrix4cd> gens{kron(h, id), kron(s, id), kron(id, h), kron(id, s),
                                       entangler_unitary(Entangler::CNOT)};
    std::unordered_set<UnitaryKey, UnitaryKeyHash> seen;
    std::vector<Eigen::Matrix4cd> out;
    std::deque<Eigen::Matrix4cd> queue{Eigen::Matrix4cd::Identity()};
    seen.insert(unitary_key(queue.front()));
    while (!queue.empty()) {
        Eigen::Matrix4cd u = queue.front();
        queue.pop_front();
        out.push_back(u);
        for (const auto &g : gens) {
            Eigen::Matrix4cd w = g * u;
            if (seen.insert(unitary_key(w)).second) {
                queue.push_back(w);
            }
        }
    }
    return out;
}

std::array<size_t, 4> classify_double_cosets(const std::vector<Eigen::Matrix4cd> &elems, std::vector<Entangler> *classes) {
    const auto &c1 = Clifford1Group::instance();
    std::vector<Eigen::Matrix4cd> local;
    local.reserve(576);
    for (int a = 0; a < 24; a++) {
        for (int b = 0; b < 24; b++) {
            local.push_back(kron(c1.unitary(a), c1.unitary(b)));
        }
    }
    std::unordered_map<UnitaryKey, Entangler, UnitaryKeyHash> coset_of;
    for (Entangler g : {Entangler::None, Entangler::SWAP, Entangler::CNOT, Entangler::ISWAP}) {
        Eigen::Matrix4cd gu = entangler_unitary(g);
        for (const auto &a : local) {
            Eigen::Matrix4cd ag = a * gu;
            for (const auto &b : local) {
                auto key = unitary_key(Eigen::Matrix4cd(ag * b));
                auto [it, inserted] = coset_of.emplace(key, g);
                if (!inserted && it->second != g) {
                    throw SimError("entangler double cosets overlap");
                }
            }
        }
    }
    std::array<size_t, 4> sizes{};
    if (classes) {
        classes->clear();
    }
    for (const auto &u : elems) {
        auto it = coset_of.find(unitary_key(u));
        if (it == coset_of.end()) {
            throw SimError("element outside every entangler double coset");
        }
        sizes[static_cast<int>(it->second)]++;
        if (classes) {
            classes->push_back(it->second);
        }
    }
    return sizes;
}

// ---------------------------------------------------------------------------
// Single-qubit synthesis.

namespace {

Eigen::Matrix3d so3(const Eigen::Matrix2cd &u) {
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            r(i, j) = 0.5 * (pauli(i) * u * pauli(j) * u.adjoint()).trace().real();
        }
    }
    return r;
}

Eigen::Matrix3d rot(const Eigen::Vector3d &axis, double angle) {
    return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

struct AxisFrame {
    std::array<Eigen::Vector3d, 2> axis;  // indexed by Axis
};

AxisFrame frame_for(const QubitConfig &config) {
    AxisFrame f;
    for (Axis a : {Axis::Z, Axis::N}) {
        Eigen::Matrix3d r = so3(logical_pulse_action(config, a, kPi / 2));
        Eigen::Vector3d u(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
        f.axis[static_cast<int>(a)] = u.normalized();
    }
    return f;
}

double signed_angle(const Eigen::Vector3d &axis, const Eigen::Vector3d &from, const Eigen::Vector3d &to) {
    Eigen::Vector3d p = from - axis * axis.dot(from);
    Eigen::Vector3d q = to - axis * axis.dot(to);
    return std::atan2(axis.dot(p.cross(q)), p.dot(q));
}

using Step = std::pair<Axis, double>;

/// All solutions of R = R_u(c) R_v(b) R_u(a), written in application order.
std::vector<std::vector<Step>> euler_candidates(const Eigen::Matrix3d &r, Axis outer, Axis inner,
                                                const AxisFrame &f) {
    const Eigen::Vector3d &u = f.axis[static_cast<int>(outer)];
    const Eigen::Vector3d &v = f.axis[static_cast<int>(inner)];
    double c0 = u.dot(v);
    double cb = (u.dot(r * u) - c0 * c0) / (1 - c0 * c0);
    std::vector<std::vector<Step>> out;
    if (std::abs(cb) > 1 + 1e-12) {
        return out;
    }
    cb = std::clamp(cb, -1.0, 1.0);
    for (double b : {std::acos(cb), -std::acos(cb)}) {
        Eigen::Vector3d w = rot(v, b) * u;
        double c = signed_angle(u, w, r * u);
        Eigen::Matrix3d m = (rot(u, c) * rot(v, b)).transpose() * r;
        Eigen::Vector3d p = u.unitOrthogonal();
        double a = std::atan2(u.cross(p).dot(m * p), p.dot(m * p));
        out.push_back({{outer, a}, {inner, b}, {outer, c}});
    }
    return out;
}

Eigen::Matrix2cd logical_product(const QubitConfig &config, const std::vector<Step> &steps) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (const auto &[axis, angle] : steps) {
        u = logical_pulse_action(config, axis, angle) * u;
    }
    return u;
}

bool matches(const Eigen::Matrix2cd &u, const Eigen::Matrix2cd &target) {
    return std::abs(std::abs((target.adjoint() * u).trace()) - 2.0) < 1e-9;
}

/// Keeps only nonzero angles in (0, 2pi); returns false if any pulse vanished.
bool tidy(std::vector<Step> &steps) {
    for (auto &[axis, angle] : steps) {
        angle = normalize_angle(angle);
        if (angle < 1e-9 || kTwoPi - angle < 1e-9) {
            return false;
        }
    }
    return true;
}

std::vector<Step> synthesize(const QubitConfig &config, const AxisFrame &f, const Eigen::Matrix2cd &target) {
    Eigen::Matrix3d r = so3(target);
    if (matches(Eigen::Matrix2cd::Identity(), target)) {
        return {};
    }
    for (Axis a : {Axis::Z, Axis::N}) {
        const Eigen::Vector3d &u = f.axis[static_cast<int>(a)];
        if ((r * u - u).norm() < 1e-9) {
            Eigen::Vector3d p = u.unitOrthogonal();
            std::vector<Step> s{{a, std::atan2(u.cross(p).dot(r * p), p.dot(r * p))}};
            if (tidy(s) && matches(logical_product(config, s), target)) {
                return s;
            }
        }
    }
    for (int len = 2; len <= 3; len++) {
        for (Axis outer : {Axis::Z, Axis::N}) {
            Axis inner = outer == Axis::Z ? Axis::N : Axis::Z;
            for (auto s : euler_candidates(r, outer, inner, f)) {
                if (len == 2) {
                    // Accept a three-pulse solution with a vanishing outer angle.
                    std::vector<Step> shorter;
                    for (const auto &st : s) {
                        if (std::abs(std::remainder(st.second, kTwoPi)) > 1e-9) {
                            shorter.push_back(st);
                        }
                    }
                    if (shorter.size() != 2) {
                        continue;
                    }
                    s = shorter;
                }
                if (tidy(s) && matches(logical_product(config, s), target)) {
                    return s;
                }
            }
        }
    }
    // Four pulses: peel off a first pulse that makes the rest a three-pulse form.
    for (Axis first : {Axis::Z, Axis::N}) {
        Axis other = first == Axis::Z ? Axis::N : Axis::Z;
        const Eigen::Vector3d &u1 = f.axis[static_cast<int>(first)];
        for (int k = 1; k < 720; k++) {
            double a = kTwoPi * k / 720;
            Eigen::Matrix3d rest = r * rot(u1, a).transpose();
            for (auto s : euler_candidates(rest, other, first, f)) {
                s.insert(s.begin(), {first, a});
                if (tidy(s) && matches(logical_product(config, s), target)) {
                    return s;
                }
            }
        }
    }
    throw SimError("no z/n decomposition found within four pulses");
}

struct OneQubitTable {
    std::array<std::vector<Step>, 24> steps;
};

const OneQubitTable &table_for(const QubitConfig &config) {
    static std::mutex mu;
    static std::map<int, OneQubitTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    int key = static_cast<int>(config.readout);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    OneQubitTable t;
    AxisFrame f = frame_for(config);
    const auto &c1 = Clifford1Group::instance();
    for (int c = 0; c < 24; c++) {
        t.steps[c] = synthesize(config, f, c1.unitary(c));
    }
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

std::vector<ExchangePulse> decompose_1q_pulses(int clifford, const QubitConfig &config) {
    if (clifford < 0 || clifford >= 24) {
        throw SimError("single-qubit Clifford index out of range");
    }
    std::vector<ExchangePulse> out;
    for (const auto &[axis, angle] : table_for(config).steps[clifford]) {
        out.push_back({axis == Axis::Z ? config.z_barrier() : config.n_barrier(), angle, 0});
    }
    return out;
}

GateSequence decompose_1q_clifford(int clifford, const QubitConfig &config) {
    GateSequence seq;
    seq.pulses = decompose_1q_pulses(clifford, config);
    seq.source = "C1[" + std::to_string(clifford) + "]";
    seq.configs_in = seq.configs_out = {config, config};
    return seq;
}

GateSequence local_clifford_sequence(int c1, int c2, const ConfigPair &configs) {
    GateSequence seq;
    seq.source = "C1[" + std::to_string(c1) + "]xC1[" + std::to_string(c2) + "]";
    seq.configs_in = seq.configs_out = configs;
    seq.pulses = decompose_1q_pulses(c1, configs.first);
    auto p2 = decompose_1q_pulses(c2, configs.second);
    seq.pulses.insert(seq.pulses.end(), p2.begin(), p2.end());
    return seq;
}

// ---------------------------------------------------------------------------
// Entangler data.

std::string config_pair_name(const ConfigPair &configs) {
    if (configs == standard_configs()) {
        return "standard";
    }
    if (configs == inner_configs()) {
        return "inner";
    }
    return "custom";
}

ConfigPair config_pair_from_name(const std::string &name) {
    if (name == "standard") {
        return standard_configs();
    }
    if (name == "inner") {
        return inner_configs();
    }
    throw SimError("unknown configuration pair '" + name + "'");
}

namespace {

int pauli_clifford(char p) {
    const auto &c1 = Clifford1Group::instance();
    switch (p) {
        case 'I':
            return 0;
        case 'X':
            return c1.index_of(pauli(0));
        case 'Y':
            return c1.index_of(pauli(1));
        case 'Z':
            return c1.index_of(pauli(2));
    }
    throw SimError(std::string("bad Pauli label '") + p + "'");
}

int barrier_from_label(const std::string &label) {
    if (label.size() < 2 || label[0] != 'B') {
        throw SimError("bad barrier label '" + label + "'");
    }
    return std::stoi(label.substr(1));
}

GateSequence load_sequence_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SimError("missing sequence file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        throw SimError("cannot parse " + path + ": " + e.what());
    }
    GateSequence seq;
    seq.source = j.at("gate").get<std::string>();
    seq.configs_in = config_pair_from_name(j.at("configs_in").get<std::string>());
    seq.configs_out = config_pair_from_name(j.at("configs_out").get<std::string>());
    for (const auto &p : j.at("pulses")) {
        seq.pulses.push_back({barrier_from_label(p.at(0).get<std::string>()), p.at(1).get<double>(), 0});
    }
    if (j.contains("left_frame")) {
        std::string frame = j.at("left_frame").get<std::string>();
        if (frame.size() != 2) {
            throw SimError("left_frame must name one Pauli per qubit in " + path);
        }
        seq.left_frame = {pauli_clifford(frame[0]), pauli_clifford(frame[1])};
    }
    return seq;
}

}  // namespace

GateSequence entangler_sequence(Entangler gate, const ConfigPair &configs) {
    if (gate == Entangler::None) {
        GateSequence seq;
        seq.source = "none";
        seq.configs_in = seq.configs_out = configs;
        return seq;
    }
    std::string cname = config_pair_name(configs);
    if (cname == "custom") {
        throw SimError("no entangler sequence for this configuration pair");
    }
    static std::mutex mu;
    static std::map<std::string, GateSequence> cache;
    std::string file = std::string(entangler_name(gate)) + "_" + cname + ".json";
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(file);
    if (it == cache.end()) {
        it = cache.emplace(file, load_sequence_file(std::string(EOSIM_DATA_DIR) + "/sequences/" + file)).first;
    }
    return it->second;
}

GateSequence decompose_2q_clifford(int clifford, const ConfigPair &configs) {
    const Clifford2Form &f = Clifford2Group::instance().form(clifford);
    const auto &c1 = Clifford1Group::instance();
    GateSequence seq = local_clifford_sequence(f.r1, f.r2, configs);
    GateSequence g = entangler_sequence(f.gate, configs);
    seq.append(g);
    // The frame is its own inverse, so L G = (L F)(F G).
    int l1 = c1.compose(g.left_frame.first, f.l1);
    int l2 = c1.compose(g.left_frame.second, f.l2);
    seq.append(local_clifford_sequence(l1, l2, seq.configs_out));
    seq.source = "C2[" + std::to_string(clifford) + "]";
    return seq;
}

PulseSchedule parallelize_schedule(const GateSequence &seq, double t_p, double t_b) {
    PulseSchedule out;
    out.t_p = t_p;
    out.t_b = t_b;
    // Last occupied step per barrier, offset so neighbors can be read freely.
    std::map<int, int> last;
    size_t next_fence = 0;
    int floor = 0;
    for (size_t i = 0; i < seq.pulses.size(); i++) {
        const auto &p = seq.pulses[i];
        while (next_fence < seq.fences.size() && seq.fences[next_fence] <= i) {
            floor = static_cast<int>(out.steps.size());
            next_fence++;
        }
        int step = floor;
        for (int b = p.barrier - 1; b <= p.barrier + 1; b++) {
            auto it = last.find(b);
            if (it != last.end()) {
                step = std::max(step, it->second + 1);
            }
        }
        if (step >= static_cast<int>(out.steps.size())) {
            out.steps.resize(step + 1);
        }
        out.steps[step].push_back(p);
        last[p.barrier] = step;
    }
    return out;
}

Eigen::Matrix4cd logical_map(const PulseSchedule &sched, const ConfigPair &in, const ConfigPair &out,
                             GaugeSector sector) {
    Eigen::MatrixXcd bi = computational_basis(in, sector);
    Eigen::MatrixXcd bo = computational_basis(out, sector);
    Eigen::Matrix4cd m;
    for (int k = 0; k < 4; k++) {
        StateVector s(kNumSpins);
        for (int r = 0; r < 64; r++) {
            s.amps[r] = bi(r, k);
        }
        apply_schedule(s, sched);
        Eigen::Map<Eigen::VectorXcd> v(s.amps.data(), 64);
        m.col(k) = bo.adjoint() * v;
    }
    return m;
}

Verification verify_schedule(const PulseSchedule &sched, const Eigen::Matrix4cd &target, const ConfigPair &in,
                             const ConfigPair &out) {
    Verification v;
    v.fidelity = 1;
    for (int s = 0; s < 2; s++) {
        Eigen::Matrix4cd m = logical_map(sched, in, out, s == 0 ? GaugeSector::DownDown : GaugeSector::Singlet);
        v.maps[s] = m;
        double kept = m.squaredNorm() / 4;
        v.leakage = std::max(v.leakage, 1 - kept);
        // Maximizing over a free phase per gauge sector leaves |tr|^2; the map's
        // own norm is divided out so leakage does not masquerade as infidelity.
        double f = kept > 0 ? std::norm((target.adjoint() * m).trace()) / (16 * kept) : 0;
        v.fidelity = std::min(v.fidelity, f);
    }
    v.leaked = v.leakage > 1e-8;
    return v;
}

Verification verify_sequence(const GateSequence &seq, const Eigen::Matrix4cd &target) {
    return verify_schedule(seq.sequential(), target, seq.configs_in, seq.configs_out);
}

}  // namespace eosim
