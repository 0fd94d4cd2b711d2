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

#include "edrsim/estimators.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edrsim/circuit.h"

namespace edrsim {

namespace {

constexpr std::size_t kZInitialBit = 3;
constexpr std::size_t kXInitialBit = 2;
constexpr std::size_t kZFinalBit = 1;
constexpr std::size_t kXFinalBit = 0;

inline std::size_t bit(std::size_t outcome, std::size_t position) {
    return (outcome >> position) & 1;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double probe_strength(double theta_w) {
    double s = std::cos(theta_w);
    if (!(s > kEqualityTolerance)) {
        throw std::invalid_argument("Weak-valued estimation needs a probe strength cos(theta_w) > 0.");
    }
    return s;
}

Circuit checked_edr_circuit(double theta_w, double theta, const NoiseModel *noise) {
    Circuit c = build_edr_circuit(theta_w, theta);
    if (noise && noise->num_qubits() < c.num_qubits()) {
        throw std::invalid_argument("Noise model covers fewer qubits than the EDR circuit.");
    }
    return c;
}

}  // namespace

double JointDistribution::total() const {
    return probs[0][0] + probs[0][1] + probs[1][0] + probs[1][1];
}

double JointDistribution::correlator() const {
    return probs[0][0] - probs[0][1] - probs[1][0] + probs[1][1];
}

void JointDistribution::validate(double tolerance) const {
    for (const auto &row : probs) {
        for (double p : row) {
            if (!(p >= 0)) {
                throw std::invalid_argument("Joint distribution has a negative or NaN entry.");
            }
        }
    }
    if (std::abs(total() - 1) > tolerance) {
        throw std::invalid_argument("Joint distribution does not sum to 1.");
    }
}

JointDistributions marginalize(const OutcomeTable &table) {
    JointDistributions out;
    out.z.labels = {outcome::kZInitial, outcome::kZFinal};
    out.x.labels = {outcome::kXInitial, outcome::kXFinal};
    for (std::size_t k = 0; k < table.size(); k++) {
        out.z.probs[bit(k, kZInitialBit)][bit(k, kZFinalBit)] += table[k];
        out.x.probs[bit(k, kXInitialBit)][bit(k, kXFinalBit)] += table[k];
    }
    return out;
}

OutcomeTable exact_outcome_table(double theta_w, double theta, const NoiseModel *noise) {
    Circuit c = checked_edr_circuit(theta_w, theta, noise);
    std::vector<double> probs =
        noise ? noisy_measured_distribution(c, *noise) : measured_distribution(c, simulate(c));
    OutcomeTable table{};
    std::copy(probs.begin(), probs.end(), table.begin());
    return table;
}

JointDistributions exact_joint_distributions(double theta_w, double theta, const NoiseModel *noise) {
    return marginalize(exact_outcome_table(theta_w, theta, noise));
}

DensityMatrix system_state_before_apparatus(double theta_w, const NoiseModel *noise) {
    // The apparatus angle does not influence anything before its own stage.
    Circuit c = checked_edr_circuit(theta_w, 0, noise);
    DensityMatrix full =
        noise ? simulate_noisy(c, *noise, Stage::Apparatus) : simulate(c, {}, Stage::Apparatus);
    const std::size_t keep[] = {role::kSystem};
    return partial_trace(full, keep);
}

double simulated_commutator_bound(double theta_w, const NoiseModel *noise) {
    DensityMatrix system = system_state_before_apparatus(theta_w, noise);
    return std::abs(expectation(system, pauli::y()));
}

JointDistributions ShotRecord::frequencies() const {
    if (total_shots == 0) {
        throw std::invalid_argument("Shot record is empty.");
    }
    OutcomeTable table{};
    for (std::size_t k = 0; k < counts.size(); k++) {
        table[k] = static_cast<double>(counts[k]) / static_cast<double>(total_shots);
    }
    return marginalize(table);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t sweep_index, std::uint64_t repeat_index) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ sweep_index);
    return splitmix64(h ^ (repeat_index * 0xD6E8FEB86659FD93ULL));
}

ShotRecord sample_from_table(const OutcomeTable &table, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("Need at least one shot.");
    }
    std::array<double, 16> cdf{};
    double running = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < table.size(); k++) {
        if (!(table[k] >= 0)) {
            throw std::invalid_argument("Outcome table has a negative or NaN entry.");
        }
        running += table[k];
        cdf[k] = running;
        if (table[k] > 0) {
            last_nonzero = k;
        }
    }
    if (!(running > 0)) {
        throw std::invalid_argument("Outcome table has no mass.");
    }

    ShotRecord record;
    record.total_shots = shots;
    record.seed = seed;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; s++) {
        double u = rng.uniform() * running;
        // First outcome whose cumulative mass exceeds u; zero-mass outcomes
        // share their predecessor's cdf value and are never selected.
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        record.counts[std::min(idx, last_nonzero)]++;
    }
    return record;
}

ShotRecord sample_shots(double theta_w, double theta, std::uint64_t shots, std::uint64_t seed, const NoiseModel *noise) {
    return sample_from_table(exact_outcome_table(theta_w, theta, noise), shots, seed);
}

const char *method_name(EstimateMethod method) {
    return method == EstimateMethod::Exact ? "exact" : "sampled";
}

ErrDistEstimate estimate_from_distribution(
    const JointDistribution &z, const JointDistribution &x, double theta_w, EstimateMethod method) {
    z.validate();
    x.validate();
    double strength = probe_strength(theta_w);
    ErrDistEstimate e{};
    e.epsilon_sq = 2 * (1 - z.correlator() / strength);
    e.eta_sq = 2 * (1 - x.correlator() / strength);
    e.epsilon = std::sqrt(std::max(e.epsilon_sq, 0.0));
    e.eta = std::sqrt(std::max(e.eta_sq, 0.0));
    e.method = method;
    return e;
}

ErrDistEstimate estimate_from_shots(const ShotRecord &record, double theta_w) {
    JointDistributions f = record.frequencies();
    ErrDistEstimate e = estimate_from_distribution(f.z, f.x, theta_w, EstimateMethod::Sampled);
    e.shots = record.total_shots;
    return e;
}

std::array<std::array<double, 2>, 2> weak_valued_distribution(const JointDistribution &dist, double strength) {
    if (!(strength > 0)) {
        throw std::invalid_argument("Weak-valued reconstruction needs a positive probe strength.");
    }
    double attenuated = dist.correlator() / strength;
    std::array<std::array<double, 2>, 2> wv{};
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t f = 0; f < 2; f++) {
            double sign = (i == f) ? 1.0 : -1.0;
            wv[i][f] = (1 + sign * attenuated) / 4;
        }
    }
    return wv;
}

double weak_valued_mean_square(const JointDistribution &dist, double strength) {
    auto wv = weak_valued_distribution(dist, strength);
    // (a_i - a_f)^2 is 0 on the diagonal and 4 off it.
    return 4 * (wv[0][1] + wv[1][0]);
}

}  // namespace edrsim
