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

#include "edrsim/meas_model.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "edrsim/circuit.h"

namespace edrsim {

namespace {

constexpr double kNegativeRadicandSlack = 1e-12;

double checked_sqrt(double radicand, const char *what) {
    if (radicand < 0) {
        if (radicand < -kNegativeRadicandSlack) {
            throw std::logic_error(std::string(what) + ": negative mean square " + std::to_string(radicand) + ".");
        }
        return 0;
    }
    return std::sqrt(radicand);
}

ComplexMatrix cnot_matrix() {
    return GateOp::cnot(0, 1).matrix();
}

}  // namespace

PovmPair build_povm(double strength) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
        throw std::invalid_argument("POVM strength must lie in [0, 1].");
    }
    ComplexMatrix id = pauli::identity();
    ComplexMatrix z = pauli::z();
    return PovmPair{(id + strength * z) / 2.0, (id - strength * z) / 2.0, strength};
}

IndirectMeasurement IndirectMeasurement::z_apparatus(double strength) {
    return IndirectMeasurement{pauli::z(), pauli::z(), cnot_matrix(), strength_to_angle(strength)};
}

DensityMatrix IndirectMeasurement::composite_input(const DensityMatrix &system) const {
    if (system.num_qubits() != 1) {
        throw std::invalid_argument("Indirect measurement expects a single-qubit system state.");
    }
    const std::size_t meter[] = {0};
    DensityMatrix meter_state =
        apply_unitary(DensityMatrix::zero_state(1), GateOp::ry(0, meter_angle).matrix(), meter);
    return tensor(system, meter_state);
}

double IndirectMeasurement::error(const DensityMatrix &system) const {
    ComplexMatrix id = pauli::identity();
    ComplexMatrix read = interaction.adjoint() * kron(id, meter_observable) * interaction;
    ComplexMatrix noise_op = read - kron(system_observable, id);
    return checked_sqrt(expectation(composite_input(system), noise_op * noise_op), "error");
}

double IndirectMeasurement::disturbance(const DensityMatrix &system, const ComplexMatrix &b) const {
    ComplexMatrix id = pauli::identity();
    ComplexMatrix b_before = kron(b, id);
    ComplexMatrix disturbance_op = interaction.adjoint() * b_before * interaction - b_before;
    return checked_sqrt(expectation(composite_input(system), disturbance_op * disturbance_op), "disturbance");
}

double exact_error(const DensityMatrix &system, double strength) {
    return IndirectMeasurement::z_apparatus(strength).error(system);
}

double exact_disturbance(const DensityMatrix &system, double strength) {
    return IndirectMeasurement::z_apparatus(strength).disturbance(system, pauli::x());
}

double standard_deviation(const DensityMatrix &state, const ComplexMatrix &observable) {
    double mean = expectation(state, observable);
    double second = expectation(state, observable * observable);
    return checked_sqrt(second - mean * mean, "standard_deviation");
}

double commutator_bound(const DensityMatrix &state, const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("commutator_bound: observables differ in dimension.");
    }
    if (!is_hermitian(a) || !is_hermitian(b)) {
        throw std::invalid_argument("commutator_bound: observables must be Hermitian.");
    }
    // i[A, B] is Hermitian, so its mean is real and equals |<[A, B]>| up to sign.
    ComplexMatrix commutator = a * b - b * a;
    return std::abs(expectation(state, Complex(0, 1) * commutator)) / 2;
}

DensityMatrix right_circular_state() {
    ComplexVector psi(2);
    psi << 1 / std::numbers::sqrt2, Complex(0, -1 / std::numbers::sqrt2);
    return DensityMatrix::from_pure(psi);
}

}  // namespace edrsim
