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

#ifndef EDRSIM_EDR_BOUNDS_H
#define EDRSIM_EDR_BOUNDS_H

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace edrsim {

/// A relation holds when its left-hand side is at least c - kSatisfactionTolerance.
inline constexpr double kSatisfactionTolerance = 1e-9;

enum class Relation : std::size_t { Heisenberg = 0, Ozawa = 1, Branciard = 2, StrongBranciard = 3 };
inline constexpr std::size_t kNumRelations = 4;
inline constexpr std::array<Relation, kNumRelations> kAllRelations = {
    Relation::Heisenberg, Relation::Ozawa, Relation::Branciard, Relation::StrongBranciard};

const char *relation_name(Relation r);

struct EdrInputs {
    double epsilon;
    double eta;
    double sigma_a;
    double sigma_b;
    double c;

    /// Non-negative fields, c in [0, 1], sigma_a * sigma_b >= c.
    /// Throws std::invalid_argument.
    void validate() const;
};

/// eps * eta.
double heisenberg(const EdrInputs &in);
/// eps sigma_B + sigma_A eta + eps eta.
double ozawa(const EdrInputs &in);
/// sqrt(eps^2 sigma_B^2 + sigma_A^2 eta^2 + 2 eps eta sqrt(sigma_A^2 sigma_B^2 - c^2)).
double branciard(const EdrInputs &in);
/// The tighter relation for +-1 valued observables with zero means, in terms
/// of tilde(eps) and tilde(eta). Needs eps, eta in [0, 2].
double strong_branciard(const EdrInputs &in);

/// v sqrt(1 - v^2/4), defined on [0, 2].
double tilde(double v);

/// 4 / (3 + cos(2 theta_w)) - 1: the commutator bound quoted for probes of
/// angle theta_w.
double effective_bound(double theta_w);

double relation_lhs(Relation r, const EdrInputs &in);

struct EdrReport {
    EdrInputs inputs;
    std::array<double, kNumRelations> lhs{};
    std::array<bool, kNumRelations> satisfied{};
    /// Spread of each lhs over repeats, present for sampled reports.
    std::optional<std::array<double, kNumRelations>> lhs_rms;
    double strength = 0;
    std::string method = "exact";
    std::size_t shots = 0;
    std::size_t repeats = 0;

    double lhs_of(Relation r) const {
        return lhs[static_cast<std::size_t>(r)];
    }
    bool holds(Relation r) const {
        return satisfied[static_cast<std::size_t>(r)];
    }
};

EdrReport classify(const EdrInputs &in);

}  // namespace edrsim

#endif
