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


#include "edrsim/sweep.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gtest/gtest.h"
#include "json.hpp"

using namespace edrsim;

namespace {

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

SweepConfig small_config() {
    SweepConfig c;
    c.strengths = {0.0, 0.4, 1.0};
    c.shots = 5000;
    c.repeats = 3;
    c.seed = 42;
    return c;
}

}  // namespace

TEST(sweep, strength_grid_includes_endpoints) {
    auto g = strength_grid(21);
    ASSERT_EQ(g.size(), 21u);
    EXPECT_EQ(g.front(), 0);
    EXPECT_EQ(g.back(), 1);
    EXPECT_NEAR(g[1], 0.05, 1e-15);
    EXPECT_THROW(strength_grid(1), std::invalid_argument);
}

TEST(sweep, exact_grid_of_three) {
    SweepConfig c;
    c.strengths = strength_grid(3);
    c.mode = SweepMode::Exact;
    auto rows = run_sweep(c);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].strength, 0.5);
    for (const auto &r : rows) {
        EXPECT_EQ(r.method, EstimateMethod::Exact);
        EXPECT_EQ(r.shots, 0u);
        EXPECT_EQ(r.epsilon_rms, 0);
        EXPECT_FALSE(r.report.lhs_rms.has_value());
    }
    EXPECT_NEAR(rows[0].epsilon_mean, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(rows[2].epsilon_exact, 0, 1e-12);
    EXPECT_NEAR(rows[2].eta_exact, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(rows[2].report.inputs.c, effective_bound(std::acos(0.05)), 1e-15);
}

TEST(sweep, single_repeat_has_zero_rms) {
    auto c = small_config();
    c.repeats = 1;
    c.mode = SweepMode::Sampled;
    for (const auto &r : run_sweep(c)) {
        EXPECT_EQ(r.epsilon_rms, 0);
        EXPECT_EQ(r.eta_rms, 0);
        ASSERT_TRUE(r.report.lhs_rms.has_value());
        for (double v : *r.report.lhs_rms) EXPECT_EQ(v, 0);
    }
}

TEST(sweep, both_mode_pairs_exact_and_sampled_rows) {
    auto rows = run_sweep(small_config());
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t k = 0; k < rows.size(); k += 2) {
        EXPECT_EQ(rows[k].method, EstimateMethod::Exact);
        EXPECT_EQ(rows[k + 1].method, EstimateMethod::Sampled);
        EXPECT_EQ(rows[k].strength, rows[k + 1].strength);
        EXPECT_EQ(rows[k + 1].shots, 5000u);
        EXPECT_EQ(rows[k + 1].repeats, 3u);
    }
}

TEST(sweep, sources_change_c_and_sigma) {
    auto c = small_config();
    c.mode = SweepMode::Exact;
    c.c_source = BoundSource::Ideal;
    EXPECT_EQ(run_sweep(c)[0].report.inputs.c, 1);
    c.c_source = BoundSource::Simulated;
    EXPECT_NEAR(run_sweep(c)[0].report.inputs.c, 1 - 0.05 * 0.05, 1e-12);
    c.sigma_source = SigmaSource::Simulated;
    auto row = run_sweep(c)[0];
    EXPECT_NEAR(row.report.inputs.sigma_a, 1, 1e-12);
    EXPECT_NEAR(row.report.inputs.sigma_b, 1, 1e-12);
}

TEST(sweep, results_do_not_depend_on_jobs) {
    auto c = small_config();
    c.jobs = 1;
    auto serial = run_sweep(c);
    c.jobs = 4;
    auto parallel = run_sweep(c);
    EXPECT_EQ(serial, parallel);
    EXPECT_EQ(emit_csv(serial), emit_csv(parallel));
    EXPECT_EQ(emit_json(serial, c), emit_json(parallel, c));
}

TEST(sweep, csv_layout) {
    SweepConfig c;
    c.mode = SweepMode::Exact;
    auto text = emit_csv(run_sweep(c));
    auto lines = lines_of(text);
    ASSERT_EQ(lines.size(), 22u);
    EXPECT_EQ(lines[0].substr(0, lines[0].find(',')), "strength");
    std::size_t fields = std::count(lines[0].begin(), lines[0].end(), ',') + 1;
    EXPECT_EQ(fields, csv_columns().size());
    for (const auto &l : lines) {
        EXPECT_EQ(static_cast<std::size_t>(std::count(l.begin(), l.end(), ',')) + 1, fields);
    }
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(sweep, csv_numbers_round_trip) {
    auto c = small_config();
    c.mode = SweepMode::Exact;
    auto rows = run_sweep(c);
    auto lines = lines_of(emit_csv(rows));
    auto header = lines[0];
    std::vector<std::string> names;
    std::stringstream hs(header);
    for (std::string f; std::getline(hs, f, ',');) names.push_back(f);
    std::size_t col = std::find(names.begin(), names.end(), "epsilon_mean") - names.begin();
    ASSERT_LT(col, names.size());
    for (std::size_t r = 0; r < rows.size(); r++) {
        std::stringstream ls(lines[r + 1]);
        std::string f;
        for (std::size_t k = 0; k <= col; k++) std::getline(ls, f, ',');
        EXPECT_EQ(std::stod(f), rows[r].epsilon_mean);
    }
}

TEST(sweep, json_round_trip) {
    auto c = small_config();
    auto rows = run_sweep(c);
    auto text = emit_json(rows, c);
    auto doc = nlohmann::json::parse(text);
    EXPECT_EQ(doc["schema"], "edrsim.sweep");
    EXPECT_EQ(doc["schema_version"], kSweepSchemaVersion);
    EXPECT_EQ(doc["config"]["seed"], 42);
    EXPECT_FALSE(doc["config"].contains("jobs"));
    auto back = rows_from_json(text);
    EXPECT_EQ(back, rows);
    EXPECT_EQ(emit_json(back, c), text);
    EXPECT_THROW(rows_from_json("{\"schema\": \"other\"}"), std::invalid_argument);
}

TEST(sweep, seed_changes_sampled_output) {
    auto c = small_config();
    c.mode = SweepMode::Sampled;
    auto a = run_sweep(c);
    c.seed = 43;
    auto b = run_sweep(c);
    EXPECT_NE(a[1].epsilon_mean, b[1].epsilon_mean);
}

TEST(sweep, noisy_sweep_lifts_endpoints) {
    auto c = small_config();
    c.mode = SweepMode::Exact;
    c.noise = load_profile_file(EDRSIM_PROFILE_PATH);
    auto rows = run_sweep(c);
    EXPECT_GT(rows[0].eta_mean, 0.1);
    EXPECT_GT(rows[2].epsilon_mean, 0.1);
}

TEST(sweep, config_validation_and_parsing) {
    SweepConfig c;
    c.shots = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.repeats = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.strengths = {0.2, 1.5};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.theta_w_strength = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(parse_mode("both"), SweepMode::Both);
    EXPECT_EQ(parse_bound_source("simulated"), BoundSource::Simulated);
    EXPECT_EQ(parse_sigma_source("ideal"), SigmaSource::Ideal);
    EXPECT_THROW(parse_mode("fast"), std::invalid_argument);
    EXPECT_STREQ(mode_name(SweepMode::Sampled), "sampled");
}
