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

// Command-line driver: strength sweeps, bound evaluation, QASM export and
// the built-in self check.
//
//   edrsim sweep --grid 21 --mode both --out results.csv
//   edrsim bounds --epsilon 0.7654 --eta 0.7654 --sigma-a 1 --sigma-b 1 --c 1
//   edrsim export-qasm --strength 0.5
//   edrsim check

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "edrsim/circuit.h"
#include "edrsim/edr_bounds.h"
#include "edrsim/noise.h"
#include "edrsim/self_check.h"
#include "edrsim/sweep.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

/// Relative output paths land in $EDRSIM_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string &out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char *dir = std::getenv("EDRSIM_OUTPUT_DIR"); dir && *dir) {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void write_output(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    auto path = resolve_output(out);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("Cannot open '" + path.string() + "' for writing.");
    }
    f << text;
    if (!f) {
        throw std::runtime_error("Failed writing '" + path.string() + "'.");
    }
}

struct SweepArgs {
    double theta_w_strength = 0.05;
    std::vector<double> strengths;
    std::size_t grid = 21;
    std::uint64_t shots = 100000;
    std::uint32_t repeats = 10;
    std::uint64_t seed = 1;
    std::string noise;
    std::string mode = "both";
    std::string out;
    std::string format;
    std::string c_source = "effective";
    std::string sigma_source = "ideal";
    unsigned jobs = 0;
};

int run_sweep_command(const SweepArgs &a) {
    edrsim::SweepConfig cfg;
    cfg.theta_w_strength = a.theta_w_strength;
    cfg.strengths = a.strengths.empty() ? edrsim::strength_grid(a.grid) : a.strengths;
    cfg.shots = a.shots;
    cfg.repeats = a.repeats;
    cfg.seed = a.seed;
    cfg.mode = edrsim::parse_mode(a.mode);
    cfg.c_source = edrsim::parse_bound_source(a.c_source);
    cfg.sigma_source = edrsim::parse_sigma_source(a.sigma_source);
    cfg.jobs = a.jobs;
    if (!a.noise.empty()) {
        cfg.noise = edrsim::load_profile_file(a.noise);
    }

    std::string format = a.format;
    if (format.empty()) {
        format = a.out.size() >= 5 && a.out.ends_with(".json") ? "json" : "csv";
    }
    auto rows = edrsim::run_sweep(cfg);
    write_output(format == "json" ? edrsim::emit_json(rows, cfg) : edrsim::emit_csv(rows), a.out);
    return kExitOk;
}

struct BoundsArgs {
    double epsilon = 0;
    double eta = 0;
    double sigma_a = 1;
    double sigma_b = 1;
    double c = 1;
};

int run_bounds_command(const BoundsArgs &a) {
    edrsim::EdrInputs in{a.epsilon, a.eta, a.sigma_a, a.sigma_b, a.c};
    edrsim::EdrReport report = edrsim::classify(in);
    std::printf("c = %.10g\n", in.c);
    for (auto r : edrsim::kAllRelations) {
        std::printf(
            "%-17s %.10f  %s\n", edrsim::relation_name(r), report.lhs_of(r),
            report.holds(r) ? "satisfied" : "violated");
    }
    return kExitOk;
}

struct QasmArgs {
    double theta_w_strength = 0.05;
    double strength = 1;
    std::string out;
};

int run_qasm_command(const QasmArgs &a) {
    auto circuit = edrsim::build_edr_circuit(
        edrsim::strength_to_angle(a.theta_w_strength), edrsim::strength_to_angle(a.strength));
    write_output(edrsim::export_qasm(circuit), a.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Weak-probe error-disturbance simulator"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Sweep the apparatus strength and evaluate error, disturbance and bounds");
    sweep->add_option("--theta-w-strength", sweep_args.theta_w_strength, "Probe strength cos(theta_w)")
        ->check(CLI::Range(0.0, 1.0));
    auto *strengths_opt =
        sweep->add_option("--strengths", sweep_args.strengths, "Apparatus strengths, comma separated")
            ->delimiter(',');
    sweep->add_option("--grid", sweep_args.grid, "Evenly spaced strengths from 0 to 1")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
        ->excludes(strengths_opt);
    sweep->add_option("--shots", sweep_args.shots, "Shots per repeat")->check(CLI::PositiveNumber);
    sweep->add_option("--repeats", sweep_args.repeats, "Repeats per strength")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_args.seed, "Base seed");
    sweep->add_option("--noise", sweep_args.noise, "Calibration profile (YAML)")->check(CLI::ExistingFile);
    sweep->add_option("--mode", sweep_args.mode, "exact, sampled or both")
        ->check(CLI::IsMember({"exact", "sampled", "both"}));
    sweep->add_option("--out", sweep_args.out, "Output file (stdout when absent)");
    sweep->add_option("--format", sweep_args.format, "csv or json (default: from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--c-source", sweep_args.c_source, "Bound c: effective, ideal or simulated")
        ->check(CLI::IsMember({"effective", "ideal", "simulated"}));
    sweep->add_option("--sigma-source", sweep_args.sigma_source, "sigma(Z), sigma(X): ideal or simulated")
        ->check(CLI::IsMember({"ideal", "simulated"}));
    sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = all cores); output does not depend on it");

    BoundsArgs bounds_args;
    auto *bounds = app.add_subcommand("bounds", "Evaluate the four error-disturbance relations at one point");
    bounds->add_option("--epsilon", bounds_args.epsilon, "Error")->required();
    bounds->add_option("--eta", bounds_args.eta, "Disturbance")->required();
    bounds->add_option("--sigma-a", bounds_args.sigma_a, "Standard deviation of A");
    bounds->add_option("--sigma-b", bounds_args.sigma_b, "Standard deviation of B");
    bounds->add_option("--c", bounds_args.c, "Commutator bound");

    QasmArgs qasm_args;
    auto *qasm = app.add_subcommand("export-qasm", "Write the circuit as OpenQASM 2.0");
    qasm->add_option("--theta-w-strength", qasm_args.theta_w_strength, "Probe strength cos(theta_w)")
        ->check(CLI::Range(0.0, 1.0));
    qasm->add_option("--strength", qasm_args.strength, "Apparatus strength cos(theta)")->check(CLI::Range(0.0, 1.0));
    qasm->add_option("--out", qasm_args.out, "Output file (stdout when absent)");

    app.add_subcommand("check", "Run the built-in invariant and oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*sweep) {
            return run_sweep_command(sweep_args);
        }
        if (*bounds) {
            return run_bounds_command(bounds_args);
        }
        if (*qasm) {
            return run_qasm_command(qasm_args);
        }
        return edrsim::run_self_check(std::cout) ? kExitOk : kExitRuntime;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
