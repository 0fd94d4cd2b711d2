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

#include "edrsim/circuit.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace edrsim {

namespace {

constexpr double kAngleSlack = 1e-12;

std::string format_angle(double angle) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), angle, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void check_angle(double angle, const char *name) {
    if (!std::isfinite(angle) || angle < -kAngleSlack || angle > std::numbers::pi / 2 + kAngleSlack) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, pi/2], got " + format_angle(angle) + ".");
    }
}

}  // namespace

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "rx";
        case GateKind::RY:
            return "ry";
        case GateKind::H:
            return "h";
        case GateKind::X:
            return "x";
        case GateKind::CNOT:
            return "cx";
    }
    return "?";
}

const char *stage_name(Stage stage) {
    switch (stage) {
        case Stage::Preparation:
            return "preparation";
        case Stage::WeakProbeZ:
            return "weak probe Z";
        case Stage::WeakProbeX:
            return "weak probe X";
        case Stage::Apparatus:
            return "measurement apparatus";
        case Stage::PostX:
            return "post X";
        case Stage::Unspecified:
            return "unspecified";
    }
    return "?";
}

GateOp GateOp::rx(std::size_t q, double angle, Stage stage) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("Rotation angle must be finite.");
    }
    return GateOp{GateKind::RX, angle, {q}, stage};
}

GateOp GateOp::ry(std::size_t q, double angle, Stage stage) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("Rotation angle must be finite.");
    }
    return GateOp{GateKind::RY, angle, {q}, stage};
}

GateOp GateOp::h(std::size_t q, Stage stage) {
    return GateOp{GateKind::H, 0, {q}, stage};
}

GateOp GateOp::x(std::size_t q, Stage stage) {
    return GateOp{GateKind::X, 0, {q}, stage};
}

GateOp GateOp::cnot(std::size_t control, std::size_t target, Stage stage) {
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ.");
    }
    return GateOp{GateKind::CNOT, 0, {control, target}, stage};
}

ComplexMatrix GateOp::matrix() const {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const Complex i(0, 1);
    switch (kind) {
        case GateKind::RX: {
            ComplexMatrix m(2, 2);
            m << c, -i * s, -i * s, c;
            return m;
        }
        case GateKind::RY: {
            ComplexMatrix m(2, 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::H: {
            ComplexMatrix m(2, 2);
            m << 1, 1, 1, -1;
            return m / std::numbers::sqrt2;
        }
        case GateKind::X:
            return pauli::x();
        case GateKind::CNOT: {
            ComplexMatrix m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(1, 1) = 1;
            m(2, 3) = 1;
            m(3, 2) = 1;
            return m;
        }
    }
    throw std::logic_error("Unknown gate kind.");
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Circuit qubit count must be in 1.." + std::to_string(kMaxQubits) + ".");
    }
}

void Circuit::append(GateOp op) {
    for (auto q : op.qubits) {
        if (q >= num_qubits_) {
            throw std::invalid_argument("Gate qubit " + std::to_string(q) + " out of range.");
        }
    }
    if (op.kind == GateKind::CNOT ? op.qubits.size() != 2 : op.qubits.size() != 1) {
        throw std::invalid_argument(std::string("Wrong qubit count for gate ") + gate_name(op.kind) + ".");
    }
    if (op.kind == GateKind::CNOT && op.qubits[0] == op.qubits[1]) {
        throw std::invalid_argument("CNOT control and target must differ.");
    }
    if (!std::isfinite(op.angle)) {
        throw std::invalid_argument("Rotation angle must be finite.");
    }
    ops_.push_back(std::move(op));
}

void Circuit::measure(std::size_t qubit, std::string label) {
    if (qubit >= num_qubits_) {
        throw std::invalid_argument("Measured qubit " + std::to_string(qubit) + " out of range.");
    }
    for (const auto &m : measurements_) {
        if (m.label == label) {
            throw std::invalid_argument("Duplicate outcome label '" + label + "'.");
        }
        if (m.qubit == qubit) {
            throw std::invalid_argument("Qubit " + std::to_string(qubit) + " is already measured.");
        }
    }
    measurements_.push_back(Measurement{qubit, std::move(label)});
}

std::vector<std::size_t> Circuit::measured_qubits() const {
    std::vector<std::size_t> out;
    out.reserve(measurements_.size());
    for (const auto &m : measurements_) {
        out.push_back(m.qubit);
    }
    return out;
}

std::size_t Circuit::measurement_index(const std::string &label) const {
    for (std::size_t k = 0; k < measurements_.size(); k++) {
        if (measurements_[k].label == label) {
            return k;
        }
    }
    throw std::out_of_range("No measurement labelled '" + label + "'.");
}

double strength_to_angle(double strength) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
        throw std::invalid_argument("Measurement strength must lie in [0, 1], got " + format_angle(strength) + ".");
    }
    return std::acos(strength);
}

double angle_to_strength(double angle) {
    check_angle(angle, "Measurement angle");
    return std::clamp(std::cos(angle), 0.0, 1.0);
}

Circuit build_edr_circuit(double theta_w, double theta) {
    check_angle(theta_w, "Probe angle theta_w");
    check_angle(theta, "Apparatus angle theta");
    using role::kMeter, role::kProbeX, role::kProbeZ, role::kSystem;

    Circuit c(role::kCount);
    c.append(GateOp::rx(kSystem, std::numbers::pi / 2, Stage::Preparation));

    c.append(GateOp::ry(kProbeZ, theta_w, Stage::WeakProbeZ));
    c.append(GateOp::cnot(kSystem, kProbeZ, Stage::WeakProbeZ));

    c.append(GateOp::h(kSystem, Stage::WeakProbeX));
    c.append(GateOp::ry(kProbeX, theta_w, Stage::WeakProbeX));
    c.append(GateOp::cnot(kSystem, kProbeX, Stage::WeakProbeX));
    c.append(GateOp::h(kSystem, Stage::WeakProbeX));

    c.append(GateOp::ry(kMeter, theta, Stage::Apparatus));
    c.append(GateOp::cnot(kSystem, kMeter, Stage::Apparatus));

    c.append(GateOp::h(kSystem, Stage::PostX));

    c.measure(kProbeZ, outcome::kZInitial);
    c.measure(kProbeX, outcome::kXInitial);
    c.measure(kMeter, outcome::kZFinal);
    c.measure(kSystem, outcome::kXFinal);
    return c;
}

void CouplingMap::add_edge(std::size_t a, std::size_t b) {
    if (a == b) {
        throw std::invalid_argument("Coupling edge endpoints must differ.");
    }
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool CouplingMap::connected(std::size_t a, std::size_t b) const {
    return edges.contains({std::min(a, b), std::max(a, b)});
}

CouplingMap CouplingMap::edr_star() {
    CouplingMap map;
    map.add_edge(0, 1);
    map.add_edge(1, 2);
    map.add_edge(1, 3);
    return map;
}

Layout edr_star_layout() {
    Layout layout(role::kCount);
    layout[role::kSystem] = 1;
    layout[role::kProbeZ] = 0;
    layout[role::kProbeX] = 2;
    layout[role::kMeter] = 3;
    return layout;
}

std::vector<CouplingViolation> validate_against_coupling(const Circuit &circuit, const CouplingMap &map) {
    Layout identity(circuit.num_qubits());
    for (std::size_t q = 0; q < identity.size(); q++) {
        identity[q] = q;
    }
    return validate_against_coupling(circuit, map, identity);
}

std::vector<CouplingViolation> validate_against_coupling(
    const Circuit &circuit, const CouplingMap &map, const Layout &layout) {
    if (layout.size() < circuit.num_qubits()) {
        throw std::invalid_argument("Layout does not place every circuit qubit.");
    }
    std::set<std::size_t> used(layout.begin(), layout.end());
    if (used.size() != layout.size()) {
        throw std::invalid_argument("Layout maps two circuit qubits to one physical qubit.");
    }
    std::vector<CouplingViolation> out;
    for (std::size_t k = 0; k < circuit.ops().size(); k++) {
        const auto &op = circuit.ops()[k];
        if (op.qubits.size() != 2) {
            continue;
        }
        std::size_t control = layout[op.qubits[0]];
        std::size_t target = layout[op.qubits[1]];
        if (!map.connected(control, target)) {
            out.push_back({k, control, target});
        }
    }
    return out;
}

std::string export_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits() << "];\n";
    out << "creg c[" << circuit.measurements().size() << "];\n";
    for (const auto &op : circuit.ops()) {
        out << gate_name(op.kind);
        if (op.kind == GateKind::RX || op.kind == GateKind::RY) {
            out << "(" << format_angle(op.angle) << ")";
        }
        out << " ";
        for (std::size_t k = 0; k < op.qubits.size(); k++) {
            out << (k ? "," : "") << "q[" << op.qubits[k] << "]";
        }
        out << ";\n";
    }
    for (std::size_t k = 0; k < circuit.measurements().size(); k++) {
        const auto &m = circuit.measurements()[k];
        out << "measure q[" << m.qubit << "] -> c[" << k << "]; // " << m.label << "\n";
    }
    return out.str();
}

DensityMatrix simulate(const Circuit &circuit, const GateHook &after_gate, std::optional<Stage> stop_before) {
    DensityMatrix rho = DensityMatrix::zero_state(circuit.num_qubits());
    for (const auto &op : circuit.ops()) {
        if (stop_before && op.stage == *stop_before) {
            break;
        }
        rho = apply_unitary(rho, op.matrix(), op.qubits);
        if (after_gate) {
            rho = after_gate(std::move(rho), op);
        }
    }
    return rho;
}

std::vector<double> measured_distribution(const Circuit &circuit, const DensityMatrix &final_state) {
    if (final_state.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("State and circuit qubit counts differ.");
    }
    if (circuit.measurements().empty()) {
        throw std::invalid_argument("Circuit has no measurements.");
    }
    return measure_probabilities(final_state, circuit.measured_qubits());
}

}  // namespace edrsim
