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

#ifndef EDRSIM_ESTIMATORS_H
#define EDRSIM_ESTIMATORS_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "edrsim/noise.h"
#include "edrsim/qsim.h"

namespace edrsim {

/// Probabilities over the 16 outcomes of (z_i, x_i, z_f, x_f). Bit value 0
/// means outcome +1, bit 1 means -1; z_i is the most significant bit.
using OutcomeTable = std::array<double, 16>;

/// Joint distribution of an (initial, final) pair of +-1 outcomes.
struct JointDistribution {
    std::array<std::string, 2> labels;
    /// probs[i][f], index 0 = outcome +1, index 1 = outcome -1.
    std::array<std::array<double, 2>, 2> probs{};

    double total() const;
    /// sum_{a_i, a_f} a_i a_f P(a_i, a_f).
    double correlator() const;
    /// Throws std::invalid_argument on negative entries or a total off by more than `tolerance`.
    void validate(double tolerance = 1e-9) const;
};

struct JointDistributions {
    JointDistribution z;
    JointDistribution x;
};

/// Marginals (z_i, z_f) and (x_i, x_f) of a 16-outcome table.
JointDistributions marginalize(const OutcomeTable &table);

/// Exact outcome table of the EDR circuit, with readout confusion applied
/// when a noise model is given.
OutcomeTable exact_outcome_table(double theta_w, double theta, const NoiseModel *noise = nullptr);

JointDistributions exact_joint_distributions(double theta_w, double theta, const NoiseModel *noise = nullptr);

/// State of the system qubit entering the measurement apparatus.
DensityMatrix system_state_before_apparatus(double theta_w, const NoiseModel *noise = nullptr);

/// |<[Z, X]>|/2 = |<Y>| on system_state_before_apparatus.
double simulated_commutator_bound(double theta_w, const NoiseModel *noise = nullptr);

struct ShotRecord {
    std::array<std::uint64_t, 16> counts{};
    std::uint64_t total_shots = 0;
    std::uint64_t seed = 0;

    /// Empirical frequencies.
    JointDistributions frequencies() const;
};

/// Seeded 64-bit generator whose output sequence is fixed by the standard.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);
    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double uniform();

   private:
    std::mt19937_64 engine_;
};

/// Mixes a base seed with a sweep index and a repeat index. Distinct
/// (index, repeat) pairs give unrelated streams.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t sweep_index, std::uint64_t repeat_index);

/// Draws i.i.d. outcomes from `table` by inverse CDF. Zero-probability
/// outcomes are never drawn. Throws std::invalid_argument for shots == 0.
ShotRecord sample_from_table(const OutcomeTable &table, std::uint64_t shots, std::uint64_t seed);

ShotRecord sample_shots(
    double theta_w, double theta, std::uint64_t shots, std::uint64_t seed, const NoiseModel *noise = nullptr);

enum class EstimateMethod { Exact, Sampled };

const char *method_name(EstimateMethod method);

struct ErrDistEstimate {
    double epsilon;
    double eta;
    /// Raw squared estimates before clamping; may be negative under sampling noise.
    double epsilon_sq;
    double eta_sq;
    EstimateMethod method;
    std::optional<std::uint64_t> shots;
};

/// Weak-valued estimates of the error of Z and the disturbance of X:
///   eps^2 = 2 (1 - sum z_i z_f P(z_i, z_f) / cos(theta_w))
///   eta^2 = 2 (1 - sum x_i x_f P(x_i, x_f) / cos(theta_w))
/// Throws std::invalid_argument when cos(theta_w) is zero.
ErrDistEstimate estimate_from_distribution(
    const JointDistribution &z, const JointDistribution &x, double theta_w,
    EstimateMethod method = EstimateMethod::Exact);

ErrDistEstimate estimate_from_shots(const ShotRecord &record, double theta_w);

/// Weak-valued quasi-probability P_wv(a_i, a_f) = (1 + a_i a_f E / s) / 4
/// reconstructed from the measured correlator E and probe strength s.
/// Sums to 1; entries may be negative.
std::array<std::array<double, 2>, 2> weak_valued_distribution(const JointDistribution &dist, double strength);

/// sum (a_i - a_f)^2 P_wv(a_i, a_f): the squared weak-valued RMS difference.
double weak_valued_mean_square(const JointDistribution &dist, double strength);

}  // namespace edrsim

#endif
