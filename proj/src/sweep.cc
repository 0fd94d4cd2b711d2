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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "edrsim/circuit.h"
#include "edrsim/meas_model.h"

namespace edrsim {

namespace {

using nlohmann::json;

/// Physical range of a +-1 observable's error or disturbance.
constexpr double kMaxErrorValue = 2;

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)> &body) {
    unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double clamp_physical(double v) {
    return std::clamp(v, 0.0, kMaxErrorValue);
}

struct Stats {
    double mean = 0;
    double rms = 0;
};

Stats stats_of(const std::vector<double> &values) {
    Stats s;
    for (double v : values) {
        s.mean += v;
    }
    s.mean /= static_cast<double>(values.size());
    double sq = 0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.rms = std::sqrt(sq / static_cast<double>(values.size()));
    return s;
}

/// Everything about one strength that does not depend on sampling.
struct PointContext {
    double strength;
    double theta;
    OutcomeTable table;
    double epsilon_exact;
    double eta_exact;
};

EdrInputs inputs_for(double epsilon, double eta, double sigma_a, double sigma_b, double c) {
    return EdrInputs{clamp_physical(epsilon), clamp_physical(eta), sigma_a, sigma_b, c};
}

}  // namespace

const char *mode_name(SweepMode m) {
    switch (m) {
        case SweepMode::Exact:
            return "exact";
        case SweepMode::Sampled:
            return "sampled";
        case SweepMode::Both:
            return "both";
    }
    return "?";
}

const char *bound_source_name(BoundSource s) {
    switch (s) {
        case BoundSource::Effective:
            return "effective";
        case BoundSource::Ideal:
            return "ideal";
        case BoundSource::Simulated:
            return "simulated";
    }
    return "?";
}

const char *sigma_source_name(SigmaSource s) {
    return s == SigmaSource::Ideal ? "ideal" : "simulated";
}

SweepMode parse_mode(std::string_view text) {
    for (auto m : {SweepMode::Exact, SweepMode::Sampled, SweepMode::Both}) {
        if (text == mode_name(m)) {
            return m;
        }
    }
    throw std::invalid_argument("Unknown mode '" + std::string(text) + "' (expected exact, sampled or both).");
}

BoundSource parse_bound_source(std::string_view text) {
    for (auto s : {BoundSource::Effective, BoundSource::Ideal, BoundSource::Simulated}) {
        if (text == bound_source_name(s)) {
            return s;
        }
    }
    throw std::invalid_argument("Unknown bound source '" + std::string(text) + "'.");
}

SigmaSource parse_sigma_source(std::string_view text) {
    for (auto s : {SigmaSource::Ideal, SigmaSource::Simulated}) {
        if (text == sigma_source_name(s)) {
            return s;
        }
    }
    throw std::invalid_argument("Unknown sigma source '" + std::string(text) + "'.");
}

std::vector<double> strength_grid(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("A strength grid needs at least 2 points.");
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return out;
}

void SweepConfig::validate() const {
    if (!(theta_w_strength > 0 && theta_w_strength <= 1)) {
        throw std::invalid_argument("Probe strength must lie in (0, 1].");
    }
    if (strengths.empty()) {
        throw std::invalid_argument("Need at least one apparatus strength.");
    }
    for (double s : strengths) {
        if (!(s >= 0 && s <= 1)) {
            throw std::invalid_argument("Apparatus strengths must lie in [0, 1], got " + format_double(s) + ".");
        }
    }
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1.");
    }
    if (repeats < 1) {
        throw std::invalid_argument("repeats must be at least 1.");
    }
    if (noise) {
        noise->validate();
    }
}

bool SweepResultRow::operator==(const SweepResultRow &o) const {
    return strength == o.strength && method == o.method && shots == o.shots && repeats == o.repeats &&
           epsilon_mean == o.epsilon_mean && epsilon_rms == o.epsilon_rms && eta_mean == o.eta_mean &&
           eta_rms == o.eta_rms && epsilon_sq_mean == o.epsilon_sq_mean && eta_sq_mean == o.eta_sq_mean &&
           report.inputs.epsilon == o.report.inputs.epsilon && report.inputs.eta == o.report.inputs.eta &&
           report.inputs.sigma_a == o.report.inputs.sigma_a && report.inputs.sigma_b == o.report.inputs.sigma_b &&
           report.inputs.c == o.report.inputs.c && report.lhs == o.report.lhs &&
           report.satisfied == o.report.satisfied && report.lhs_rms == o.report.lhs_rms &&
           epsilon_exact == o.epsilon_exact && eta_exact == o.eta_exact;
}

std::vector<SweepResultRow> run_sweep(const SweepConfig &config) {
    config.validate();
    const double theta_w = strength_to_angle(config.theta_w_strength);
    std::optional<NoiseModel> model;
    if (config.noise) {
        model = NoiseModel::compile(*config.noise);
    }
    const NoiseModel *noise = model ? &*model : nullptr;

    DensityMatrix entering = system_state_before_apparatus(theta_w, noise);
    double c = 1;
    switch (config.c_source) {
        case BoundSource::Effective:
            c = effective_bound(theta_w);
            break;
        case BoundSource::Ideal:
            c = 1;
            break;
        case BoundSource::Simulated:
            c = commutator_bound(entering, pauli::z(), pauli::x());
            break;
    }
    double sigma_a = 1;
    double sigma_b = 1;
    if (config.sigma_source == SigmaSource::Simulated) {
        sigma_a = standard_deviation(entering, pauli::z());
        sigma_b = standard_deviation(entering, pauli::x());
    }

    const std::size_t n = config.strengths.size();
    std::vector<PointContext> points(n);
    parallel_for(n, config.jobs, [&](std::size_t i) {
        double s = config.strengths[i];
        double theta = strength_to_angle(s);
        points[i] = PointContext{
            s, theta, exact_outcome_table(theta_w, theta, noise), exact_error(entering, s),
            exact_disturbance(entering, s)};
    });

    auto base_row = [&](const PointContext &p) {
        SweepResultRow row;
        row.strength = p.strength;
        row.epsilon_exact = p.epsilon_exact;
        row.eta_exact = p.eta_exact;
        row.report.strength = p.strength;
        return row;
    };

    std::vector<SweepResultRow> exact_rows;
    if (config.mode != SweepMode::Sampled) {
        for (const auto &p : points) {
            JointDistributions d = marginalize(p.table);
            ErrDistEstimate e = estimate_from_distribution(d.z, d.x, theta_w);
            SweepResultRow row = base_row(p);
            row.method = EstimateMethod::Exact;
            row.epsilon_mean = clamp_physical(e.epsilon);
            row.eta_mean = clamp_physical(e.eta);
            row.epsilon_sq_mean = e.epsilon_sq;
            row.eta_sq_mean = e.eta_sq;
            EdrReport report = classify(inputs_for(e.epsilon, e.eta, sigma_a, sigma_b, c));
            report.strength = p.strength;
            report.method = method_name(EstimateMethod::Exact);
            row.report = report;
            exact_rows.push_back(std::move(row));
        }
    }

    std::vector<SweepResultRow> sampled_rows;
    if (config.mode != SweepMode::Exact) {
        const std::size_t repeats = config.repeats;
        std::vector<ErrDistEstimate> estimates(n * repeats);
        parallel_for(n * repeats, config.jobs, [&](std::size_t task) {
            std::size_t i = task / repeats;
            std::size_t r = task % repeats;
            ShotRecord rec = sample_from_table(points[i].table, config.shots, derive_seed(config.seed, i, r));
            estimates[task] = estimate_from_shots(rec, theta_w);
        });

        for (std::size_t i = 0; i < n; i++) {
            std::vector<double> eps, eta, eps_sq, eta_sq;
            std::array<std::vector<double>, kNumRelations> lhs;
            for (std::size_t r = 0; r < repeats; r++) {
                const auto &e = estimates[i * repeats + r];
                eps.push_back(clamp_physical(e.epsilon));
                eta.push_back(clamp_physical(e.eta));
                eps_sq.push_back(e.epsilon_sq);
                eta_sq.push_back(e.eta_sq);
                EdrInputs in = inputs_for(e.epsilon, e.eta, sigma_a, sigma_b, c);
                for (auto rel : kAllRelations) {
                    lhs[static_cast<std::size_t>(rel)].push_back(relation_lhs(rel, in));
                }
            }
            Stats eps_stats = stats_of(eps);
            Stats eta_stats = stats_of(eta);

            SweepResultRow row = base_row(points[i]);
            row.method = EstimateMethod::Sampled;
            row.shots = config.shots;
            row.repeats = config.repeats;
            row.epsilon_mean = eps_stats.mean;
            row.epsilon_rms = eps_stats.rms;
            row.eta_mean = eta_stats.mean;
            row.eta_rms = eta_stats.rms;
            row.epsilon_sq_mean = stats_of(eps_sq).mean;
            row.eta_sq_mean = stats_of(eta_sq).mean;

            EdrReport report = classify(inputs_for(eps_stats.mean, eta_stats.mean, sigma_a, sigma_b, c));
            std::array<double, kNumRelations> spread{};
            for (std::size_t k = 0; k < kNumRelations; k++) {
                spread[k] = stats_of(lhs[k]).rms;
            }
            report.lhs_rms = spread;
            report.strength = row.strength;
            report.method = method_name(EstimateMethod::Sampled);
            report.shots = config.shots;
            report.repeats = config.repeats;
            row.report = report;
            sampled_rows.push_back(std::move(row));
        }
    }

    if (config.mode != SweepMode::Both) {
        return config.mode == SweepMode::Exact ? exact_rows : sampled_rows;
    }
    std::vector<SweepResultRow> rows;
    for (std::size_t i = 0; i < n; i++) {
        rows.push_back(exact_rows[i]);
        rows.push_back(sampled_rows[i]);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

namespace {

const char *const kLhsColumns[] = {"heisenberg_lhs", "ozawa_lhs", "branciard_lhs", "strong_branciard_lhs"};
const char *const kRmsColumns[] = {"heisenberg_rms", "ozawa_rms", "branciard_rms", "strong_branciard_rms"};
const char *const kOkColumns[] = {"heisenberg_ok", "ozawa_ok", "branciard_ok", "strong_branciard_ok"};

std::array<double, kNumRelations> lhs_spread(const SweepResultRow &row) {
    return row.report.lhs_rms.value_or(std::array<double, kNumRelations>{});
}

json row_to_json(const SweepResultRow &row) {
    json j;
    j["strength"] = row.strength;
    j["method"] = method_name(row.method);
    j["shots"] = row.shots;
    j["repeats"] = row.repeats;
    j["c"] = row.report.inputs.c;
    j["sigma_a"] = row.report.inputs.sigma_a;
    j["sigma_b"] = row.report.inputs.sigma_b;
    j["epsilon_mean"] = row.epsilon_mean;
    j["epsilon_rms"] = row.epsilon_rms;
    j["eta_mean"] = row.eta_mean;
    j["eta_rms"] = row.eta_rms;
    j["epsilon_sq_mean"] = row.epsilon_sq_mean;
    j["eta_sq_mean"] = row.eta_sq_mean;
    auto spread = lhs_spread(row);
    for (std::size_t k = 0; k < kNumRelations; k++) {
        j[kLhsColumns[k]] = row.report.lhs[k];
        j[kRmsColumns[k]] = spread[k];
        j[kOkColumns[k]] = static_cast<bool>(row.report.satisfied[k]);
    }
    j["epsilon_exact"] = row.epsilon_exact;
    j["eta_exact"] = row.eta_exact;
    return j;
}

SweepResultRow row_from_json(const json &j) {
    SweepResultRow row;
    row.strength = j.at("strength").get<double>();
    std::string method = j.at("method").get<std::string>();
    if (method == "exact") {
        row.method = EstimateMethod::Exact;
    } else if (method == "sampled") {
        row.method = EstimateMethod::Sampled;
    } else {
        throw std::invalid_argument("Unknown method '" + method + "' in sweep JSON.");
    }
    row.shots = j.at("shots").get<std::uint64_t>();
    row.repeats = j.at("repeats").get<std::uint32_t>();
    row.epsilon_mean = j.at("epsilon_mean").get<double>();
    row.epsilon_rms = j.at("epsilon_rms").get<double>();
    row.eta_mean = j.at("eta_mean").get<double>();
    row.eta_rms = j.at("eta_rms").get<double>();
    row.epsilon_sq_mean = j.at("epsilon_sq_mean").get<double>();
    row.eta_sq_mean = j.at("eta_sq_mean").get<double>();
    row.epsilon_exact = j.at("epsilon_exact").get<double>();
    row.eta_exact = j.at("eta_exact").get<double>();
    auto &report = row.report;
    report.inputs = EdrInputs{
        row.epsilon_mean, row.eta_mean, j.at("sigma_a").get<double>(), j.at("sigma_b").get<double>(),
        j.at("c").get<double>()};
    std::array<double, kNumRelations> spread{};
    for (std::size_t k = 0; k < kNumRelations; k++) {
        report.lhs[k] = j.at(kLhsColumns[k]).get<double>();
        spread[k] = j.at(kRmsColumns[k]).get<double>();
        report.satisfied[k] = j.at(kOkColumns[k]).get<bool>();
    }
    if (row.method == EstimateMethod::Sampled) {
        report.lhs_rms = spread;
    }
    report.strength = row.strength;
    report.method = method;
    report.shots = row.shots;
    report.repeats = row.repeats;
    return row;
}

}  // namespace

const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c = {
            "strength",     "method",      "shots",           "repeats",     "c",
            "sigma_a",      "sigma_b",     "epsilon_mean",    "epsilon_rms", "eta_mean",
            "eta_rms",      "epsilon_sq_mean", "eta_sq_mean"};
        for (const char *name : kLhsColumns) {
            c.push_back(name);
        }
        for (const char *name : kRmsColumns) {
            c.push_back(name);
        }
        for (const char *name : kOkColumns) {
            c.push_back(name);
        }
        c.push_back("epsilon_exact");
        c.push_back("eta_exact");
        return c;
    }();
    return columns;
}

std::string emit_csv(const std::vector<SweepResultRow> &rows) {
    if (rows.empty()) {
        throw std::invalid_argument("Nothing to emit: no sweep rows.");
    }
    std::ostringstream out;
    const auto &cols = csv_columns();
    for (std::size_t k = 0; k < cols.size(); k++) {
        out << (k ? "," : "") << cols[k];
    }
    out << "\n";
    for (const auto &row : rows) {
        const auto &in = row.report.inputs;
        out << format_double(row.strength) << "," << method_name(row.method) << "," << row.shots << ","
            << row.repeats << "," << format_double(in.c) << "," << format_double(in.sigma_a) << ","
            << format_double(in.sigma_b) << "," << format_double(row.epsilon_mean) << ","
            << format_double(row.epsilon_rms) << "," << format_double(row.eta_mean) << ","
            << format_double(row.eta_rms) << "," << format_double(row.epsilon_sq_mean) << ","
            << format_double(row.eta_sq_mean);
        for (double v : row.report.lhs) {
            out << "," << format_double(v);
        }
        for (double v : lhs_spread(row)) {
            out << "," << format_double(v);
        }
        for (bool ok : row.report.satisfied) {
            out << "," << (ok ? "true" : "false");
        }
        out << "," << format_double(row.epsilon_exact) << "," << format_double(row.eta_exact) << "\n";
    }
    return out.str();
}

std::string emit_json(const std::vector<SweepResultRow> &rows, const SweepConfig &config) {
    if (rows.empty()) {
        throw std::invalid_argument("Nothing to emit: no sweep rows.");
    }
    json doc;
    doc["schema"] = "edrsim.sweep";
    doc["schema_version"] = kSweepSchemaVersion;
    json cfg;
    cfg["theta_w_strength"] = config.theta_w_strength;
    cfg["strengths"] = config.strengths;
    cfg["shots"] = config.shots;
    cfg["repeats"] = config.repeats;
    cfg["seed"] = config.seed;
    cfg["mode"] = mode_name(config.mode);
    cfg["c_source"] = bound_source_name(config.c_source);
    cfg["sigma_source"] = sigma_source_name(config.sigma_source);
    cfg["noise_profile"] = config.noise ? json(config.noise->name) : json(nullptr);
    doc["config"] = cfg;
    json arr = json::array();
    for (const auto &row : rows) {
        arr.push_back(row_to_json(row));
    }
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

std::vector<SweepResultRow> rows_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("Sweep JSON parse error: ") + e.what());
    }
    if (doc.value("schema", "") != "edrsim.sweep" || doc.value("schema_version", 0) != kSweepSchemaVersion) {
        throw std::invalid_argument("Not an edrsim sweep document of a supported version.");
    }
    std::vector<SweepResultRow> rows;
    for (const auto &j : doc.at("rows")) {
        rows.push_back(row_from_json(j));
    }
    return rows;
}

}  // namespace edrsim
