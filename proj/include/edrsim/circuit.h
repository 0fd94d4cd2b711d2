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

#ifndef EDRSIM_CIRCUIT_H
#define EDRSIM_CIRCUIT_H

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "edrsim/qsim.h"

namespace edrsim {

/// Fixed qubit roles of the error-disturbance circuit. Tensor order follows
/// index order, so the system qubit is the most significant bit.
namespace role {
inline constexpr std::size_t kSystem = 0;
inline constexpr std::size_t kProbeZ = 1;
inline constexpr std::size_t kProbeX = 2;
inline constexpr std::size_t kMeter = 3;
inline constexpr std::size_t kCount = 4;
}  // namespace role

/// Outcome labels, in the order the EDR circuit declares its measurements.
namespace outcome {
inline constexpr const char *kZInitial = "z_i";
inline constexpr const char *kXInitial = "x_i";
inline constexpr const char *kZFinal = "z_f";
inline constexpr const char *kXFinal = "x_f";
}  // namespace outcome

enum class GateKind { RX, RY, H, X, CNOT };

/// Which block of the EDR circuit an operation belongs to.
enum class Stage { Preparation, WeakProbeZ, WeakProbeX, Apparatus, PostX, Unspecified };

const char *gate_name(GateKind kind);
const char *stage_name(Stage stage);

struct GateOp {
    GateKind kind;
    /// Rotation angle in radians; zero for non-rotations.
    double angle = 0;
    /// One qubit, or {control, target} for CNOT.
    std::vector<std::size_t> qubits;
    Stage stage = Stage::Unspecified;

    static GateOp rx(std::size_t q, double angle, Stage stage = Stage::Unspecified);
    static GateOp ry(std::size_t q, double angle, Stage stage = Stage::Unspecified);
    static GateOp h(std::size_t q, Stage stage = Stage::Unspecified);
    static GateOp x(std::size_t q, Stage stage = Stage::Unspecified);
    static GateOp cnot(std::size_t control, std::size_t target, Stage stage = Stage::Unspecified);

    /// Unitary on `qubits` (control first for CNOT).
    ComplexMatrix matrix() const;

    bool operator==(const GateOp &other) const = default;
};

struct Measurement {
    std::size_t qubit;
    std::string label;
    bool operator==(const Measurement &other) const = default;
};

/// Ordered gate program followed by terminal computational-basis readouts.
class Circuit {
   public:
    explicit Circuit(std::size_t num_qubits);

    void append(GateOp op);
    void measure(std::size_t qubit, std::string label);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<GateOp> &ops() const {
        return ops_;
    }
    const std::vector<Measurement> &measurements() const {
        return measurements_;
    }
    std::vector<std::size_t> measured_qubits() const;

    /// Index into measurements() of the given outcome label.
    std::size_t measurement_index(const std::string &label) const;

    bool operator==(const Circuit &other) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<GateOp> ops_;
    std::vector<Measurement> measurements_;
};

/// Measurement strength cos(angle) and its inverse. These are the only places
/// the strength/angle conversion happens. Both throw std::invalid_argument
/// outside strength in [0, 1] / angle in [0, pi/2].
double strength_to_angle(double strength);
double angle_to_strength(double angle);

/// The four-qubit weak-probe circuit: preparation Rx(pi/2) on the system,
/// weak probe of Z, weak probe of X (Hadamard-sandwiched), the measurement
/// apparatus, and a Hadamard before the final system readout. Probe and meter
/// blocks are "Ry(angle) on the ancilla, then CNOT from the system".
Circuit build_edr_circuit(double theta_w, double theta);

struct CouplingMap {
    std::set<std::pair<std::size_t, std::size_t>> edges;

    void add_edge(std::size_t a, std::size_t b);
    bool connected(std::size_t a, std::size_t b) const;

    /// Physical qubit 1 linked to 0, 2 and 3.
    static CouplingMap edr_star();
};

struct CouplingViolation {
    std::size_t op_index;
    std::size_t control;
    std::size_t target;

    bool operator==(const CouplingViolation &other) const = default;
};

/// Physical qubit of each circuit qubit: layout[q] hosts circuit qubit q.
using Layout = std::vector<std::size_t>;

/// Places the system on the hub of edr_star(): system -> 1, probe Z -> 0,
/// probe X -> 2, meter -> 3.
Layout edr_star_layout();

/// Every two-qubit gate that does not sit on an edge of `map`, with circuit
/// qubits taken as physical qubits.
std::vector<CouplingViolation> validate_against_coupling(const Circuit &circuit, const CouplingMap &map);

/// Same, after placing circuit qubits with `layout`. Violations report
/// physical indices. Throws std::invalid_argument for a layout that is too
/// short or not injective.
std::vector<CouplingViolation> validate_against_coupling(
    const Circuit &circuit, const CouplingMap &map, const Layout &layout);

/// Deterministic OpenQASM 2.0 rendering (LF line endings).
std::string export_qasm(const Circuit &circuit);

/// Called after each gate is applied; used to insert noise.
using GateHook = std::function<DensityMatrix(DensityMatrix, const GateOp &)>;

/// Evolves |0...0> through the circuit's gates. When `stop_before` is set,
/// stops at the first op of that stage.
DensityMatrix simulate(
    const Circuit &circuit, const GateHook &after_gate = {}, std::optional<Stage> stop_before = std::nullopt);

/// Probability table over the circuit's measurements, first measurement most
/// significant.
std::vector<double> measured_distribution(const Circuit &circuit, const DensityMatrix &final_state);

}  // namespace edrsim

#endif
