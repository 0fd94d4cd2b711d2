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

#include "edrsim/edr_bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace edrsim {

namespace {

constexpr double kRadicandSlack = 1e-12;

double sqrt_nonnegative(double radicand, const char *what) {
    if (radicand < -kRadicandSlack) {
        throw std::invalid_argument(std::string(what) + ": negative radicand " + std::to_string(radicand) + ".");
    }
    return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

const char *relation_name(Relation r) {
    switch (r) {
        case Relation::Heisenberg:
            return "heisenberg";
        case Relation::Ozawa:
            return "ozawa";
        case Relation::Branciard:
            return "branciard";
        case Relation::StrongBranciard:
            return "strong_branciard";
    }
    return "?";
}

void EdrInputs::validate() const {
    if (!(epsilon >= 0) || !(eta >= 0) || !(sigma_a >= 0) || !(sigma_b >= 0)) {
        throw std::invalid_argument("EDR inputs: epsilon, eta, sigma_a, sigma_b must be non-negative.");
    }
    if (!(c >= 0 && c <= 1)) {
        throw std::invalid_argument("EDR inputs: c must lie in [0, 1].");
    }
    if (sigma_a * sigma_b < c - kRadicandSlack) {
        throw std::invalid_argument("EDR inputs: sigma_a * sigma_b must be at least c.");
    }
}

double heisenberg(const EdrInputs &in) {
    return in.epsilon * in.eta;
}

double ozawa(const EdrInputs &in) {
    return in.epsilon * in.sigma_b + in.sigma_a * in.eta + in.epsilon * in.eta;
}

double branciard(const EdrInputs &in) {
    double cross = sqrt_nonnegative(in.sigma_a * in.sigma_a * in.sigma_b * in.sigma_b - in.c * in.c, "branciard");
    return std::sqrt(
        in.epsilon * in.epsilon * in.sigma_b * in.sigma_b + in.sigma_a * in.sigma_a * in.eta * in.eta +
        2 * in.epsilon * in.eta * cross);
}

double tilde(double v) {
    if (!(v >= -kRadicandSlack && v <= 2 + kRadicandSlack)) {
        throw std::invalid_argument("tilde map is defined on [0, 2], got " + std::to_string(v) + ".");
    }
    return v * std::sqrt(std::max(1 - v * v / 4, 0.0));
}

double strong_branciard(const EdrInputs &in) {
    double e = tilde(in.epsilon);
    double h = tilde(in.eta);
    double cross = sqrt_nonnegative(1 - in.c * in.c, "strong_branciard");
    return std::sqrt(e * e + h * h + 2 * e * h * cross);
}

double effective_bound(double theta_w) {
    if (!(theta_w >= -kRadicandSlack && theta_w <= std::numbers::pi / 2 + kRadicandSlack)) {
        throw std::invalid_argument("effective_bound: theta_w must lie in [0, pi/2].");
    }
    return 4 / (3 + std::cos(2 * theta_w)) - 1;
}

double relation_lhs(Relation r, const EdrInputs &in) {
    switch (r) {
        case Relation::Heisenberg:
            return heisenberg(in);
        case Relation::Ozawa:
            return ozawa(in);
        case Relation::Branciard:
            return branciard(in);
        case Relation::StrongBranciard:
            return strong_branciard(in);
    }
    throw std::logic_error("Unknown relation.");
}

EdrReport classify(const EdrInputs &in) {
    in.validate();
    EdrReport report;
    report.inputs = in;
    for (auto r : kAllRelations) {
        auto k = static_cast<std::size_t>(r);
        report.lhs[k] = relation_lhs(r, in);
        report.satisfied[k] = report.lhs[k] >= in.c - kSatisfactionTolerance;
    }
    return report;
}

}  // namespace edrsim
