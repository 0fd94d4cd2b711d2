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

#ifndef EDRSIM_SWEEP_H
#define EDRSIM_SWEEP_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edrsim/edr_bounds.h"
#include "edrsim/estimators.h"
#include "edrsim/noise.h"

namespace edrsim {

inline constexpr int kSweepSchemaVersion = 1;

enum class SweepMode { Exact, Sampled, Both };
/// Where the right-hand side c of every relation comes from.
enum class BoundSource {
    /// 4/(3 + cos 2 theta_w) - 1.
    Effective,
    /// 1, the value for |R>.
    Ideal,
    /// |<Y>| of the simulated state entering the apparatus.
    Simulated,
};
/// Where sigma(Z), sigma(X) come from.
enum class SigmaSource { Ideal, Simulated };

const char *mode_name(SweepMode m);
const char *bound_source_name(BoundSource s);
const char *sigma_source_name(SigmaSource s);
SweepMode parse_mode(std::string_view text);
BoundSource parse_bound_source(std::string_view text);
SigmaSource parse_sigma_source(std::string_view text);

/// n evenly spaced strengths from 0 to 1 inclusive (n >= 2).
std::vector<double> strength_grid(std::size_t n);

struct SweepConfig {
    double theta_w_strength = 0.05;
    std::vector<double> strengths = strength_grid(21);
    std::uint64_t shots = 100000;
    std::uint32_t repeats = 10;
    std::uint64_t seed = 1;
    std::optional<CalibrationProfile> noise;
    SweepMode mode = SweepMode::Both;
    BoundSource c_source = BoundSource::Effective;
    SigmaSource sigma_source = SigmaSource::Ideal;
    /// Worker threads; 0 picks the hardware concurrency. Never affects output.
    unsigned jobs = 0;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct SweepResultRow {
    double strength = 0;
    EstimateMethod method = EstimateMethod::Exact;
    std::uint64_t shots = 0;
    std::uint32_t repeats = 0;
    /// Mean over repeats (or the exact-distribution value) of the clamped
    /// estimates, plus the RMS deviation of the repeats from that mean.
    double epsilon_mean = 0;
    double epsilon_rms = 0;
    double eta_mean = 0;
    double eta_rms = 0;
    /// Mean of the raw squared estimates.
    double epsilon_sq_mean = 0;
    double eta_sq_mean = 0;
    /// Bounds evaluated at (epsilon_mean, eta_mean); lhs_rms holds the RMS
    /// deviation of the per-repeat lhs values.
    EdrReport report;
    /// Operator-definition values on the state entering the apparatus.
    double epsilon_exact = 0;
    double eta_exact = 0;

    bool operator==(const SweepResultRow &other) const;
};

std::vector<SweepResultRow> run_sweep(const SweepConfig &config);

/// Column names in emission order.
const std::vector<std::string> &csv_columns();
std::string emit_csv(const std::vector<SweepResultRow> &rows);
std::string emit_json(const std::vector<SweepResultRow> &rows, const SweepConfig &config);
std::vector<SweepResultRow> rows_from_json(std::string_view text);

}  // namespace edrsim

#endif
