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

#ifndef EDRSIM_NOISE_H
#define EDRSIM_NOISE_H

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edrsim/circuit.h"
#include "edrsim/qsim.h"

namespace edrsim {

inline constexpr int kProfileSchemaVersion = 1;

struct QubitCalibration {
    double t1_us = std::numeric_limits<double>::infinity();
    double t2_us = std::numeric_limits<double>::infinity();
    /// P(read 1 | prepared 0).
    double readout_error_01 = 0;
    /// P(read 0 | prepared 1).
    double readout_error_10 = 0;

    bool operator==(const QubitCalibration &other) const = default;
};

/// Per-qubit and per-gate error parameters of a processor.
///
/// Stored on disk as a flat YAML mapping; see configs/representative_profile.yaml
/// and the README for the key list. Missing keys default to the noiseless
/// value (zero error, infinite T1/T2) or, for durations, to the defaults below.
struct CalibrationProfile {
    std::string name = "unnamed";
    std::vector<QubitCalibration> qubits = std::vector<QubitCalibration>(role::kCount);
    double single_qubit_gate_error = 0;
    double cnot_error = 0;
    double single_qubit_gate_ns = 35.5;
    double cnot_ns = 400;
    double readout_ns = 700;
    /// Relax idle qubits while other qubits are being driven.
    bool idle_relaxation = true;

    /// Throws std::invalid_argument with the offending key in the message.
    void validate() const;

    bool operator==(const CalibrationProfile &other) const = default;
};

CalibrationProfile load_profile_text(std::string_view text);
CalibrationProfile load_profile_file(const std::string &path);
/// Canonical serialization; load_profile_text(dump_profile(p)) == p.
std::string dump_profile(const CalibrationProfile &profile);

CalibrationProfile noiseless_profile();

/// Gate error r of a d-dimensional gate mapped to the depolarizing parameter
/// p of rho -> (1 - p) rho + p I/d, using p = r d / (d - 1). This is the one
/// place the convention lives.
double depolarizing_parameter(double gate_error, std::size_t num_qubits);

namespace channels {
/// rho -> (1 - p) rho + p I/d, as a Pauli Kraus set.
KrausChannel depolarizing(std::size_t num_qubits, double p);
KrausChannel amplitude_damping(double gamma);
/// Scales the off-diagonal elements by `coherence_factor` in [0, 1].
KrausChannel dephasing(double coherence_factor);
/// Amplitude damping with gamma = 1 - exp(-t/T1), followed by pure dephasing
/// chosen so coherences decay by exp(-t/T2) overall.
KrausChannel thermal_relaxation(double duration_ns, double t1_us, double t2_us);
}  // namespace channels

/// 2x2 confusion matrix [[1 - e01, e10], [e01, 1 - e10]]; column = true bit,
/// row = reported bit.
using ConfusionMatrix = std::array<std::array<double, 2>, 2>;

/// Compiled channels for a profile. Immutable after compile().
class NoiseModel {
   public:
    static NoiseModel compile(const CalibrationProfile &profile);

    std::size_t num_qubits() const {
        return confusion_.size();
    }
    bool idle_relaxation() const {
        return idle_relaxation_;
    }

    const KrausChannel &single_qubit_depolarizing() const {
        return depolarizing_1q_;
    }
    const KrausChannel &cnot_depolarizing() const {
        return depolarizing_2q_;
    }
    const KrausChannel &relaxation_1q(std::size_t q) const {
        return relax_1q_.at(q);
    }
    const KrausChannel &relaxation_cnot(std::size_t q) const {
        return relax_2q_.at(q);
    }
    const KrausChannel &relaxation_readout(std::size_t q) const {
        return relax_readout_.at(q);
    }
    const ConfusionMatrix &confusion(std::size_t q) const {
        return confusion_.at(q);
    }

    /// Every compiled Kraus channel, for inspection.
    std::vector<const KrausChannel *> channels() const;

    /// True when every channel is the identity and readout is perfect.
    bool is_noiseless() const;

    /// Noise following one gate: depolarizing then relaxation over the gate
    /// duration on the gate's qubits, and relaxation on idle qubits when
    /// enabled.
    DensityMatrix after_gate(DensityMatrix state, const GateOp &op) const;

    /// Relaxation over the readout window on the measured qubits.
    DensityMatrix before_readout(DensityMatrix state, std::span<const std::size_t> measured) const;

   private:
    NoiseModel() = default;

    KrausChannel depolarizing_1q_ = KrausChannel::identity(1);
    KrausChannel depolarizing_2q_ = KrausChannel::identity(2);
    std::vector<KrausChannel> relax_1q_;
    std::vector<KrausChannel> relax_2q_;
    std::vector<KrausChannel> relax_readout_;
    std::vector<ConfusionMatrix> confusion_;
    bool idle_relaxation_ = true;
};

/// Applies each listed qubit's confusion matrix to a distribution over
/// bitstrings of `qubits` (qubits[0] most significant).
std::vector<double> apply_readout_confusion(
    std::span<const double> distribution, const NoiseModel &model, std::span<const std::size_t> qubits);

/// Noisy density-matrix evolution of the circuit's gates.
DensityMatrix simulate_noisy(
    const Circuit &circuit, const NoiseModel &model, std::optional<Stage> stop_before = std::nullopt);

/// Reported outcome distribution over the circuit's measurements, including
/// readout-window relaxation and readout confusion.
std::vector<double> noisy_measured_distribution(const Circuit &circuit, const NoiseModel &model);

}  // namespace edrsim

#endif
