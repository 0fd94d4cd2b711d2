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

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "gtest/gtest.h"

using namespace edrsim;

namespace {

constexpr char kFullProfile[] = R"(schema_version: 1
name: test-device
num_qubits: 4
idle_relaxation: false
t1_us: 80
t2_us: 60
readout_error_01: 0.01
readout_error_10: 0.03
q2.t1_us: 55.5
q3.readout_error_10: 0.05
single_qubit_gate_error: 0.001
cnot_error: 0.02
single_qubit_gate_ns: 40
cnot_ns: 300
readout_ns: 500
)";

double max_abs(const ComplexMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

// Choi matrix sum_ij |i><j| (x) E(|i><j|), built with plain loops.
ComplexMatrix choi(const KrausChannel &ch) {
    std::size_t d = ch.dim();
    ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1;
            ComplexMatrix img = ComplexMatrix::Zero(d, d);
            for (const auto &k : ch.operators()) {
                img += k * e * k.adjoint();
            }
            out.block(i * d, j * d, d, d) = img;
        }
    }
    return out;
}

void expect_cptp(const KrausChannel &ch) {
    EXPECT_LT(ch.completeness_defect(), 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi(ch));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

}  // namespace

TEST(noise, profile_parses_all_fields) {
    auto p = load_profile_text(kFullProfile);
    EXPECT_EQ(p.name, "test-device");
    EXPECT_FALSE(p.idle_relaxation);
    ASSERT_EQ(p.qubits.size(), 4u);
    EXPECT_EQ(p.qubits[0].t1_us, 80);
    EXPECT_EQ(p.qubits[2].t1_us, 55.5);
    EXPECT_EQ(p.qubits[3].readout_error_10, 0.05);
    EXPECT_EQ(p.qubits[1].readout_error_10, 0.03);
    EXPECT_EQ(p.cnot_ns, 300);
    EXPECT_EQ(p.readout_ns, 500);
}

TEST(noise, profile_round_trips) {
    auto p = load_profile_text(kFullProfile);
    std::string dumped = dump_profile(p);
    auto back = load_profile_text(dumped);
    EXPECT_EQ(back, p);
    EXPECT_EQ(dump_profile(back), dumped);

    auto inf = noiseless_profile();
    EXPECT_EQ(load_profile_text(dump_profile(inf)), inf);
}

TEST(noise, shipped_profile_loads_and_round_trips) {
    auto p = load_profile_file(EDRSIM_PROFILE_PATH);
    EXPECT_EQ(p.qubits.size(), 4u);
    EXPECT_EQ(load_profile_text(dump_profile(p)), p);
    EXPECT_FALSE(NoiseModel::compile(p).is_noiseless());
}

TEST(noise, profile_rejects_bad_documents) {
    auto message_of = [](const std::string &text) -> std::string {
        try {
            load_profile_text(text);
        } catch (const std::invalid_argument &e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(message_of("schema_version: 1\nt1_us: 10\nt2_us: 30\n").find("t2_us"), std::string::npos);
    EXPECT_NE(message_of("name: x\n").find("schema_version"), std::string::npos);
    EXPECT_NE(message_of("schema_version: 2\n").find("schema_version"), std::string::npos);
    EXPECT_NE(message_of("schema_version: 1\nbogus: 3\n").find("bogus"), std::string::npos);
    EXPECT_NE(message_of("schema_version: 1\ncnot_error: 1.5\n").find("cnot_error"), std::string::npos);
    EXPECT_NE(message_of("schema_version: 1\nt1_us: abc\n").find("t1_us"), std::string::npos);
    EXPECT_NE(message_of("schema_version: 1\nq0.t1_us: -4\n").find("q0.t1_us"), std::string::npos);
    EXPECT_NE(message_of("- a\n- b\n"), "");
    EXPECT_THROW(load_profile_file("/nonexistent/profile.yaml"), std::runtime_error);
}

TEST(noise, zero_noise_profile_compiles_to_identity) {
    auto p = load_profile_text(
        "schema_version: 1\nt1_us: 1e30\nt2_us: 1e30\nreadout_error_01: 0\nreadout_error_10: 0\n"
        "single_qubit_gate_error: 0\ncnot_error: 0\n");
    auto model = NoiseModel::compile(p);
    EXPECT_TRUE(model.is_noiseless());
    for (const auto *ch : model.channels()) {
        EXPECT_TRUE(ch->is_identity());
    }
    Circuit c = build_edr_circuit(std::acos(0.05), 0.8);
    auto clean = measured_distribution(c, simulate(c));
    auto noisy = noisy_measured_distribution(c, model);
    for (std::size_t k = 0; k < clean.size(); k++) {
        EXPECT_NEAR(noisy[k], clean[k], 1e-12);
    }
}

TEST(noise, depolarizing_convention) {
    EXPECT_NEAR(depolarizing_parameter(0.01, 1), 0.02, 1e-15);
    EXPECT_NEAR(depolarizing_parameter(0.03, 2), 0.04, 1e-15);
    auto out = apply_channel(DensityMatrix::zero_state(1), channels::depolarizing(1, 1.0),
                             std::array<std::size_t, 1>{0});
    EXPECT_LT(max_abs(out.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);

    auto bell = DensityMatrix::from_pure((ComplexVector(4) << 1, 0, 0, 1).finished() / std::sqrt(2.0));
    double p = 0.3;
    auto dep = apply_channel(bell, channels::depolarizing(2, p), std::array<std::size_t, 2>{0, 1});
    ComplexMatrix expected = (1 - p) * bell.matrix() + p * ComplexMatrix::Identity(4, 4) / 4.0;
    EXPECT_LT(max_abs(dep.matrix() - expected), 1e-12);
}

TEST(noise, dephasing_scales_coherence) {
    ComplexVector plus(2);
    plus << 1, 1;
    auto rho = DensityMatrix::from_pure(plus / std::sqrt(2.0));
    auto out = apply_channel(rho, channels::dephasing(0.3), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(out(0, 1).real(), 0.15, 1e-12);
    EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-12);
}

TEST(noise, amplitude_damping_limits) {
    auto excited = apply_unitary(DensityMatrix::zero_state(1), pauli::x(), std::array<std::size_t, 1>{0});
    auto out = apply_channel(excited, channels::amplitude_damping(1.0), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(out(0, 0).real(), 1, 1e-12);
    auto long_wait = apply_channel(excited, channels::thermal_relaxation(1e12, 50, 70), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(long_wait(0, 0).real(), 1, 1e-12);
}

TEST(noise, thermal_relaxation_matches_t1_and_t2) {
    double t_ns = 1000, t1 = 20, t2 = 15;
    auto ch = channels::thermal_relaxation(t_ns, t1, t2);
    auto excited = apply_unitary(DensityMatrix::zero_state(1), pauli::x(), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(apply_channel(excited, ch, std::array<std::size_t, 1>{0})(1, 1).real(), std::exp(-1.0 / 20), 1e-12);
    ComplexVector plus(2);
    plus << 1, 1;
    auto coherent = apply_channel(DensityMatrix::from_pure(plus / std::sqrt(2.0)), ch, std::array<std::size_t, 1>{0});
    EXPECT_NEAR(coherent(0, 1).real(), 0.5 * std::exp(-1.0 / 15), 1e-12);
    EXPECT_THROW(channels::thermal_relaxation(10, 10, 25), std::invalid_argument);
}

TEST(noise, compiled_channels_are_cptp) {
    auto model = NoiseModel::compile(load_profile_file(EDRSIM_PROFILE_PATH));
    for (const auto *ch : model.channels()) {
        expect_cptp(*ch);
    }
    expect_cptp(channels::depolarizing(2, 0.7));
    expect_cptp(channels::thermal_relaxation(300, 40, 70));
}

TEST(noise, noisy_states_stay_physical_and_lose_purity) {
    auto model = NoiseModel::compile(load_profile_file(EDRSIM_PROFILE_PATH));
    Circuit c = build_edr_circuit(std::acos(0.05), 0.9);
    auto rho = simulate_noisy(c, model);
    EXPECT_NO_THROW(rho.check_invariants());
    EXPECT_LT(rho.purity(), 1 - 1e-3);
    auto dist = noisy_measured_distribution(c, model);
    double total = 0;
    for (double p : dist) {
        EXPECT_GE(p, 0);
        total += p;
    }
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(noise, unital_channels_never_raise_purity) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 10; k++) {
        ComplexVector v(2);
        v << Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
        auto rho = DensityMatrix::from_pure(v.normalized());
        for (const auto &ch : {channels::depolarizing(1, 0.2), channels::dephasing(0.6)}) {
            auto out = apply_channel(rho, ch, std::array<std::size_t, 1>{0});
            EXPECT_LE(out.purity(), rho.purity() + 1e-12);
        }
    }
}

namespace {

NoiseModel readout_only(double e01, double e10) {
    CalibrationProfile p = noiseless_profile();
    for (auto &q : p.qubits) {
        q.readout_error_01 = e01;
        q.readout_error_10 = e10;
    }
    return NoiseModel::compile(p);
}

}  // namespace

TEST(noise, readout_confusion_examples) {
    auto model = readout_only(0.02, 0.02);
    EXPECT_EQ(model.confusion(0)[0][0], 0.98);
    std::array<std::size_t, 1> q0{0};
    auto out = apply_readout_confusion(std::array<double, 2>{1, 0}, model, q0);
    EXPECT_NEAR(out[0], 0.98, 1e-15);
    EXPECT_NEAR(out[1], 0.02, 1e-15);

    auto identity = readout_only(0, 0);
    std::array<double, 4> d{0.1, 0.2, 0.3, 0.4};
    auto same = apply_readout_confusion(d, identity, std::array<std::size_t, 2>{0, 1});
    for (std::size_t k = 0; k < 4; k++) {
        EXPECT_EQ(same[k], d[k]);
    }

    auto half = readout_only(0.5, 0.5);
    auto uniform = apply_readout_confusion(std::array<double, 2>{0.9, 0.1}, half, q0);
    EXPECT_NEAR(uniform[0], 0.5, 1e-15);
    EXPECT_NEAR(uniform[1], 0.5, 1e-15);
    EXPECT_THROW(apply_readout_confusion(std::array<double, 3>{1, 0, 0}, model, q0), std::invalid_argument);
}

TEST(noise, readout_confusion_preserves_product_structure) {
    auto model = readout_only(0.07, 0.11);
    std::array<double, 2> a{0.3, 0.7}, b{0.85, 0.15};
    std::array<double, 4> joint{};
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) joint[2 * i + j] = a[i] * b[j];
    auto out = apply_readout_confusion(joint, model, std::array<std::size_t, 2>{0, 1});
    auto ma = apply_readout_confusion(a, model, std::array<std::size_t, 1>{0});
    auto mb = apply_readout_confusion(b, model, std::array<std::size_t, 1>{1});
    double total = 0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            EXPECT_NEAR(out[2 * i + j], ma[i] * mb[j], 1e-15);
            total += out[2 * i + j];
        }
    }
    EXPECT_NEAR(total, 1, 1e-12);
}
