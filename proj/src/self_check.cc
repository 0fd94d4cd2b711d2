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

#include "edrsim/self_check.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "edrsim/circuit.h"
#include "edrsim/edr_bounds.h"
#include "edrsim/estimators.h"
#include "edrsim/meas_model.h"
#include "edrsim/noise.h"
#include "edrsim/sweep.h"

namespace edrsim {

namespace {

struct Check {
    std::string name;
    std::function<std::string()> run;  // empty string = pass, otherwise the failure detail
};

std::string closed_form_curves() {
    DensityMatrix r = right_circular_state();
    for (double s : strength_grid(21)) {
        double eps = exact_error(r, s);
        double eta = exact_disturbance(r, s);
        if (std::abs(eps - std::sqrt(2 * (1 - s))) > 1e-12 ||
            std::abs(eta - std::sqrt(2 * (1 - std::sqrt(1 - s * s)))) > 1e-12) {
            return "mismatch at strength " + std::to_string(s);
        }
    }
    return "";
}

std::string estimator_bias() {
    double theta_w = strength_to_angle(0.05);
    double bound = 2 * (1 - std::sin(theta_w)) + 1e-9;
    DensityMatrix entering = system_state_before_apparatus(theta_w);
    for (double s : strength_grid(21)) {
        JointDistributions d = exact_joint_distributions(theta_w, strength_to_angle(s));
        ErrDistEstimate e = estimate_from_distribution(d.z, d.x, theta_w);
        double eps = exact_error(entering, s);
        double eta = exact_disturbance(entering, s);
        if (std::abs(e.epsilon_sq - eps * eps) > bound || std::abs(e.eta_sq - eta * eta) > bound) {
            return "squared estimate off by more than " + std::to_string(bound) + " at strength " + std::to_string(s);
        }
    }
    return "";
}

std::string strong_branciard_saturation() {
    DensityMatrix r = right_circular_state();
    for (double s : strength_grid(21)) {
        EdrInputs in{exact_error(r, s), exact_disturbance(r, s), 1, 1, 1};
        if (std::abs(strong_branciard(in) - 1) >= 1e-9) {
            return "not saturated at strength " + std::to_string(s);
        }
    }
    return "";
}

std::string quoted_bounds() {
    double c_eff = effective_bound(strength_to_angle(0.05));
    if (std::abs(c_eff - 0.99501) > 5e-4) {
        return "effective bound " + std::to_string(c_eff);
    }
    double c = commutator_bound(right_circular_state(), pauli::z(), pauli::x());
    if (std::abs(c - 1) > 1e-12) {
        return "commutator bound on |R> is " + std::to_string(c);
    }
    return "";
}

std::string povm_matches_meter() {
    // Apparatus alone: system |R>, meter readout statistics vs trace(rho Pi).
    DensityMatrix r = right_circular_state();
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
        PovmPair povm = build_povm(s);
        Circuit c(2);
        c.append(GateOp::rx(0, std::numbers::pi / 2));
        c.append(GateOp::ry(1, strength_to_angle(s)));
        c.append(GateOp::cnot(0, 1));
        c.measure(1, "m");
        std::vector<double> p = measured_distribution(c, simulate(c));
        double expected = expectation(r, povm.plus);
        if (std::abs(p[0] - expected) > 1e-12) {
            return "meter P(+1) mismatch at strength " + std::to_string(s);
        }
    }
    return "";
}

std::string trade_off() {
    double theta_w = strength_to_angle(0.05);
    double prev_eps = INFINITY;
    double prev_eta = -INFINITY;
    for (double s : strength_grid(21)) {
        JointDistributions d = exact_joint_distributions(theta_w, strength_to_angle(s));
        ErrDistEstimate e = estimate_from_distribution(d.z, d.x, theta_w);
        if (!(e.epsilon < prev_eps + 1e-9) || !(e.eta > prev_eta - 1e-9)) {
            return "trade-off broken at strength " + std::to_string(s);
        }
        prev_eps = e.epsilon;
        prev_eta = e.eta;
    }
    return "";
}

std::string noise_channels_complete() {
    CalibrationProfile p;
    p.qubits.assign(role::kCount, QubitCalibration{80, 50, 0.02, 0.03});
    p.single_qubit_gate_error = 5e-4;
    p.cnot_error = 1e-2;
    NoiseModel m = NoiseModel::compile(p);
    for (const auto *ch : m.channels()) {
        if (ch->completeness_defect() > kEqualityTolerance) {
            return "channel not complete";
        }
    }
    DensityMatrix rho = simulate_noisy(build_edr_circuit(strength_to_angle(0.05), 0.4), m);
    rho.check_invariants();
    if (!NoiseModel::compile(noiseless_profile()).is_noiseless()) {
        return "noiseless profile compiled to a noisy model";
    }
    return "";
}

std::string sampling_deterministic() {
    double theta_w = strength_to_angle(0.05);
    ShotRecord a = sample_shots(theta_w, 0.7, 5000, 42);
    ShotRecord b = sample_shots(theta_w, 0.7, 5000, 42);
    if (a.counts != b.counts) {
        return "identical seeds gave different records";
    }
    return "";
}

}  // namespace

bool run_self_check(std::ostream &out) {
    const std::vector<Check> checks = {
        {"closed-form error/disturbance curves", closed_form_curves},
        {"weak-valued estimator bias bound", estimator_bias},
        {"strong Branciard saturation (ideal)", strong_branciard_saturation},
        {"effective bound and commutator bound", quoted_bounds},
        {"POVM reproduces meter statistics", povm_matches_meter},
        {"error/disturbance trade-off", trade_off},
        {"noise channels CPTP", noise_channels_complete},
        {"seeded sampling is deterministic", sampling_deterministic},
    };
    bool all = true;
    for (const auto &check : checks) {
        std::string failure;
        try {
            failure = check.run();
        } catch (const std::exception &e) {
            failure = std::string("threw: ") + e.what();
        }
        out << (failure.empty() ? "PASS  " : "FAIL  ") << check.name;
        if (!failure.empty()) {
            out << "  (" << failure << ")";
            all = false;
        }
        out << "\n";
    }
    return all;
}

}  // namespace edrsim
