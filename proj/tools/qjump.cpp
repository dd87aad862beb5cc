// Copyright 2026 The qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qjump/cli/commands.hpp"
#include "qjump/cli/config.hpp"

int main(int argc, char** argv) {
    using namespace qjump::cli;

    CLI::App app{"Quantum jump trajectory estimators for open quantum systems"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::size_t> trajectories;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> method;
    std::optional<double> epsilon;
    std::optional<double> dt_max;
    std::optional<double> jump_tol;
    std::optional<std::string> grid;
    std::optional<std::string> omega_grid;
    std::optional<double> burn_in;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    std::optional<std::string> target;

    app.add_option("--config", config_path, "JSON run configuration (default: two-level preset)");
    app.add_option("--trajectories", trajectories, "Number of trajectories");
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--method", method, "Correlation method")
        ->check(CLI::IsMember({"doubled", "kick", "limit", "four"}));
    app.add_option("--epsilon", epsilon, "Kick strength for --method kick");
    app.add_option("--dt-max", dt_max, "Largest integration step");
    app.add_option("--jump-tol", jump_tol, "Jump-time bisection tolerance");
    app.add_option("--grid", grid, "Time or delay grid start:stop:points");
    app.add_option("--omega-grid", omega_grid, "Frequency grid start:stop:points");
    app.add_option("--burn-in", burn_in, "Relaxation time before stationary insertions");
    app.add_option("--output", output, "Output file (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "Worker threads (1 is bit reproducible)");
    app.add_option("--target", target, "Quantity computed by the oracle subcommand")
        ->check(CLI::IsMember({"expect", "heisenberg", "corr", "spectrum"}));

    const char* descriptions[] = {"Single-space expectation value <A(t)>",
                                  "Heisenberg matrix element <phi0|A(t)|psi0>",
                                  "Multitime correlation function",
                                  "Fluorescence spectrum of a stationary correlation",
                                  "Deterministic master-equation reference",
                                  "Error versus CPU time for each correlation method"};
    for (std::size_t i = 0; i < kSubcommands.size(); ++i) {
        app.add_subcommand(kSubcommands[i], descriptions[i]);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    RunConfig config;
    try {
        config = config_path.empty() ? parse_config(R"({"model": "two_level"})")
                                     : load_config(config_path);
        if (trajectories) config.trajectories = *trajectories;
        if (seed) config.seed = *seed;
        if (method) config.method = *method;
        if (epsilon) config.epsilon = *epsilon;
        if (dt_max) config.step.dt_max = *dt_max;
        if (jump_tol) config.step.jump_tol = *jump_tol;
        if (grid) config.grid = parse_grid(*grid, "--grid");
        if (omega_grid) config.omega_grid = parse_grid(*omega_grid, "--omega-grid");
        if (burn_in) config.burn_in = *burn_in;
        if (output) config.output = *output;
        if (format) config.format = *format;
        if (threads) config.threads = *threads;
        if (target) config.target = *target;
        validate(config);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    return run_command(sub, config, std::cerr);
}
