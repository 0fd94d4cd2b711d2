// Copyright 2026 The edrsim Authors
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

#include "edrsim/noise.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace edrsim {

namespace {

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? ".inf" : "-.inf";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

[[noreturn]] void reject(const std::string &key, const std::string &why) {
    throw std::invalid_argument("calibration profile: " + key + ": " + why);
}

void check_probability(const std::string &key, double v) {
    if (!(v >= 0 && v <= 1)) {
        reject(key, "must be a probability in [0, 1], got " + format_number(v) + ".");
    }
}

void check_positive(const std::string &key, double v, bool allow_infinite) {
    if (!(v > 0) || std::isnan(v) || (!allow_infinite && std::isinf(v))) {
        reject(key, "must be positive" + std::string(allow_infinite ? "" : " and finite") + ", got " + format_number(v) + ".");
    }
}

double max_depolarizing_parameter(std::size_t num_qubits) {
    double n_paulis = std::pow(4.0, static_cast<double>(num_qubits));
    return n_paulis / (n_paulis - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

void CalibrationProfile::validate() const {
    if (qubits.empty()) {
        reject("num_qubits", "must be at least 1.");
    }
    for (std::size_t q = 0; q < qubits.size(); q++) {
        const auto &c = qubits[q];
        std::string prefix = "q" + std::to_string(q) + ".";
        check_positive(prefix + "t1_us", c.t1_us, true);
        check_positive(prefix + "t2_us", c.t2_us, true);
        if (c.t2_us > 2 * c.t1_us) {
            reject(prefix + "t2_us",
                   "T2 = " + format_number(c.t2_us) + " us exceeds 2*T1 = " + format_number(2 * c.t1_us) + " us.");
        }
        check_probability(prefix + "readout_error_01", c.readout_error_01);
        check_probability(prefix + "readout_error_10", c.readout_error_10);
    }
    check_probability("single_qubit_gate_error", single_qubit_gate_error);
    check_probability("cnot_error", cnot_error);
    if (depolarizing_parameter(single_qubit_gate_error, 1) > max_depolarizing_parameter(1)) {
        reject("single_qubit_gate_error", "too large to be realized by a depolarizing channel.");
    }
    if (depolarizing_parameter(cnot_error, 2) > max_depolarizing_parameter(2)) {
        reject("cnot_error", "too large to be realized by a depolarizing channel.");
    }
    check_positive("single_qubit_gate_ns", single_qubit_gate_ns, false);
    check_positive("cnot_ns", cnot_ns, false);
    check_positive("readout_ns", readout_ns, false);
}

CalibrationProfile load_profile_text(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception &e) {
        throw std::invalid_argument(std::string("calibration profile: parse error: ") + e.what());
    }
    if (!root.IsMap()) {
        throw std::invalid_argument("calibration profile: expected a key-value mapping at top level.");
    }

    std::map<std::string, YAML::Node> entries;
    for (const auto &kv : root) {
        auto key = kv.first.as<std::string>();
        if (!kv.second.IsScalar()) {
            reject(key, "expected a scalar value.");
        }
        entries[key] = kv.second;
    }

    auto take_double = [&](const std::string &key) -> std::optional<double> {
        auto it = entries.find(key);
        if (it == entries.end()) {
            return std::nullopt;
        }
        double v;
        try {
            v = it->second.as<double>();
        } catch (const YAML::Exception &) {
            reject(key, "expected a number, got '" + it->second.Scalar() + "'.");
        }
        entries.erase(it);
        return v;
    };

    auto version = take_double("schema_version");
    if (!version) {
        reject("schema_version", "missing (expected " + std::to_string(kProfileSchemaVersion) + ").");
    }
    if (*version != kProfileSchemaVersion) {
        reject("schema_version", "unsupported version " + format_number(*version) + ".");
    }

    CalibrationProfile p;
    if (auto it = entries.find("name"); it != entries.end()) {
        p.name = it->second.Scalar();
        entries.erase(it);
    }
    if (auto it = entries.find("idle_relaxation"); it != entries.end()) {
        try {
            p.idle_relaxation = it->second.as<bool>();
        } catch (const YAML::Exception &) {
            reject("idle_relaxation", "expected true or false.");
        }
        entries.erase(it);
    }
    if (auto n = take_double("num_qubits")) {
        if (*n < 1 || *n > static_cast<double>(kMaxQubits) || std::floor(*n) != *n) {
            reject("num_qubits", "must be an integer in 1.." + std::to_string(kMaxQubits) + ".");
        }
        p.qubits.assign(static_cast<std::size_t>(*n), QubitCalibration{});
    }

    // Register-wide values first, then per-qubit overrides "q<k>.<field>".
    const std::pair<const char *, double QubitCalibration::*> qubit_fields[] = {
        {"t1_us", &QubitCalibration::t1_us},
        {"t2_us", &QubitCalibration::t2_us},
        {"readout_error_01", &QubitCalibration::readout_error_01},
        {"readout_error_10", &QubitCalibration::readout_error_10},
    };
    for (const auto &[field, member] : qubit_fields) {
        if (auto v = take_double(field)) {
            for (auto &q : p.qubits) {
                q.*member = *v;
            }
        }
    }
    for (std::size_t q = 0; q < p.qubits.size(); q++) {
        for (const auto &[field, member] : qubit_fields) {
            if (auto v = take_double("q" + std::to_string(q) + "." + field)) {
                p.qubits[q].*member = *v;
            }
        }
    }

    const std::pair<const char *, double CalibrationProfile::*> gate_fields[] = {
        {"single_qubit_gate_error", &CalibrationProfile::single_qubit_gate_error},
        {"cnot_error", &CalibrationProfile::cnot_error},
        {"single_qubit_gate_ns", &CalibrationProfile::single_qubit_gate_ns},
        {"cnot_ns", &CalibrationProfile::cnot_ns},
        {"readout_ns", &CalibrationProfile::readout_ns},
    };
    for (const auto &[field, member] : gate_fields) {
        if (auto v = take_double(field)) {
            p.*member = *v;
        }
    }

    if (!entries.empty()) {
        reject(entries.begin()->first, "unknown key.");
    }
    p.validate();
    return p;
}

CalibrationProfile load_profile_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("calibration profile: cannot open '" + path + "'.");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_profile_text(buffer.str());
}

std::string dump_profile(const CalibrationProfile &p) {
    std::ostringstream out;
    out << "schema_version: " << kProfileSchemaVersion << "\n";
    out << "name: " << YAML::Dump(YAML::Node(p.name)) << "\n";
    out << "num_qubits: " << p.qubits.size() << "\n";
    out << "idle_relaxation: " << (p.idle_relaxation ? "true" : "false") << "\n";
    out << "single_qubit_gate_error: " << format_number(p.single_qubit_gate_error) << "\n";
    out << "cnot_error: " << format_number(p.cnot_error) << "\n";
    out << "single_qubit_gate_ns: " << format_number(p.single_qubit_gate_ns) << "\n";
    out << "cnot_ns: " << format_number(p.cnot_ns) << "\n";
    out << "readout_ns: " << format_number(p.readout_ns) << "\n";
    for (std::size_t q = 0; q < p.qubits.size(); q++) {
        const auto &c = p.qubits[q];
        std::string prefix = "q" + std::to_string(q) + ".";
        out << prefix << "t1_us: " << format_number(c.t1_us) << "\n";
        out << prefix << "t2_us: " << format_number(c.t2_us) << "\n";
        out << prefix << "readout_error_01: " << format_number(c.readout_error_01) << "\n";
        out << prefix << "readout_error_10: " << format_number(c.readout_error_10) << "\n";
    }
    return out.str();
}

CalibrationProfile noiseless_profile() {
    CalibrationProfile p;
    p.name = "noiseless";
    return p;
}

double depolarizing_parameter(double gate_error, std::size_t num_qubits) {
    double d = std::pow(2.0, static_cast<double>(num_qubits));
    return gate_error * d / (d - 1);
}

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

namespace channels {

KrausChannel depolarizing(std::size_t num_qubits, double p) {
    if (num_qubits == 0 || num_qubits > 2) {
        throw std::invalid_argument("depolarizing: only 1- and 2-qubit channels are supported.");
    }
    if (!(p >= 0 && p <= max_depolarizing_parameter(num_qubits))) {
        throw std::invalid_argument("depolarizing: parameter out of range.");
    }
    if (p == 0) {
        return KrausChannel::identity(num_qubits);
    }
    const ComplexMatrix singles[] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    std::vector<ComplexMatrix> paulis(singles, singles + 4);
    if (num_qubits == 2) {
        std::vector<ComplexMatrix> pairs;
        for (const auto &a : singles) {
            for (const auto &b : singles) {
                pairs.push_back(kron(a, b));
            }
        }
        paulis = std::move(pairs);
    }
    double n = static_cast<double>(paulis.size());
    std::vector<ComplexMatrix> ops;
    ops.push_back(std::sqrt(1 - p + p / n) * paulis[0]);
    for (std::size_t k = 1; k < paulis.size(); k++) {
        ops.push_back(std::sqrt(p / n) * paulis[k]);
    }
    return KrausChannel(std::move(ops));
}

KrausChannel amplitude_damping(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1].");
    }
    if (gamma == 0) {
        return KrausChannel::identity(1);
    }
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - gamma);
    ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    return KrausChannel({k0, k1});
}

KrausChannel dephasing(double coherence_factor) {
    if (!(coherence_factor >= 0 && coherence_factor <= 1)) {
        throw std::invalid_argument("dephasing: coherence factor must lie in [0, 1].");
    }
    if (coherence_factor == 1) {
        return KrausChannel::identity(1);
    }
    return KrausChannel({
        std::sqrt((1 + coherence_factor) / 2) * pauli::identity(),
        std::sqrt((1 - coherence_factor) / 2) * pauli::z(),
    });
}

KrausChannel thermal_relaxation(double duration_ns, double t1_us, double t2_us) {
    if (!(duration_ns >= 0)) {
        throw std::invalid_argument("thermal_relaxation: duration must be non-negative.");
    }
    if (!(t1_us > 0) || !(t2_us > 0) || t2_us > 2 * t1_us) {
        throw std::invalid_argument("thermal_relaxation: need T1, T2 > 0 and T2 <= 2 T1.");
    }
    double t_us = duration_ns / 1000.0;
    double gamma = -std::expm1(-t_us / t1_us);
    // Amplitude damping alone leaves coherences scaled by exp(-t / 2T1).
    double extra = std::exp(-t_us / t2_us + t_us / (2 * t1_us));
    return amplitude_damping(gamma).then(dephasing(std::min(extra, 1.0)));
}

}  // namespace channels

// ---------------------------------------------------------------------------
// NoiseModel
// ---------------------------------------------------------------------------

NoiseModel NoiseModel::compile(const CalibrationProfile &profile) {
    profile.validate();
    NoiseModel m;
    m.idle_relaxation_ = profile.idle_relaxation;
    m.depolarizing_1q_ = channels::depolarizing(1, depolarizing_parameter(profile.single_qubit_gate_error, 1));
    m.depolarizing_2q_ = channels::depolarizing(2, depolarizing_parameter(profile.cnot_error, 2));
    for (const auto &q : profile.qubits) {
        m.relax_1q_.push_back(channels::thermal_relaxation(profile.single_qubit_gate_ns, q.t1_us, q.t2_us));
        m.relax_2q_.push_back(channels::thermal_relaxation(profile.cnot_ns, q.t1_us, q.t2_us));
        m.relax_readout_.push_back(channels::thermal_relaxation(profile.readout_ns, q.t1_us, q.t2_us));
        m.confusion_.push_back(ConfusionMatrix{{
            {1 - q.readout_error_01, q.readout_error_10},
            {q.readout_error_01, 1 - q.readout_error_10},
        }});
    }
    return m;
}

std::vector<const KrausChannel *> NoiseModel::channels() const {
    std::vector<const KrausChannel *> out{&depolarizing_1q_, &depolarizing_2q_};
    for (const auto *group : {&relax_1q_, &relax_2q_, &relax_readout_}) {
        for (const auto &ch : *group) {
            out.push_back(&ch);
        }
    }
    return out;
}

bool NoiseModel::is_noiseless() const {
    for (const auto *ch : channels()) {
        if (!ch->is_identity()) {
            return false;
        }
    }
    for (const auto &c : confusion_) {
        if (c[0][1] != 0 || c[1][0] != 0) {
            return false;
        }
    }
    return true;
}

DensityMatrix NoiseModel::after_gate(DensityMatrix state, const GateOp &op) const {
    if (state.num_qubits() > num_qubits()) {
        throw std::invalid_argument("Noise model covers fewer qubits than the circuit.");
    }
    const bool two_qubit = op.qubits.size() == 2;
    const auto &relax = two_qubit ? relax_2q_ : relax_1q_;
    state = apply_channel(state, two_qubit ? depolarizing_2q_ : depolarizing_1q_, op.qubits);
    for (std::size_t q = 0; q < state.num_qubits(); q++) {
        bool active = std::find(op.qubits.begin(), op.qubits.end(), q) != op.qubits.end();
        if (active || idle_relaxation_) {
            const std::size_t target[] = {q};
            state = apply_channel(state, relax[q], target);
        }
    }
    return state;
}

DensityMatrix NoiseModel::before_readout(DensityMatrix state, std::span<const std::size_t> measured) const {
    for (auto q : measured) {
        const std::size_t target[] = {q};
        state = apply_channel(state, relax_readout_.at(q), target);
    }
    return state;
}

std::vector<double> apply_readout_confusion(
    std::span<const double> distribution, const NoiseModel &model, std::span<const std::size_t> qubits) {
    const std::size_t k = qubits.size();
    if (distribution.size() != (std::size_t{1} << k)) {
        throw std::invalid_argument("apply_readout_confusion: distribution size does not match qubit count.");
    }
    std::vector<double> current(distribution.begin(), distribution.end());
    for (std::size_t t = 0; t < k; t++) {
        const auto &c = model.confusion(qubits[t]);
        const std::size_t bit = std::size_t{1} << (k - 1 - t);
        std::vector<double> next(current.size(), 0.0);
        for (std::size_t b = 0; b < current.size(); b++) {
            std::size_t truth = (b & bit) ? 1 : 0;
            std::size_t base = b & ~bit;
            next[base] += c[0][truth] * current[b];
            next[base | bit] += c[1][truth] * current[b];
        }
        current = std::move(next);
    }
    return current;
}

DensityMatrix simulate_noisy(const Circuit &circuit, const NoiseModel &model, std::optional<Stage> stop_before) {
    return simulate(
        circuit, [&model](DensityMatrix rho, const GateOp &op) { return model.after_gate(std::move(rho), op); },
        stop_before);
}

std::vector<double> noisy_measured_distribution(const Circuit &circuit, const NoiseModel &model) {
    auto measured = circuit.measured_qubits();
    DensityMatrix rho = model.before_readout(simulate_noisy(circuit, model), measured);
    return apply_readout_confusion(measured_distribution(circuit, rho), model, measured);
}

}  // namespace edrsim
