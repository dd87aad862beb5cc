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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qjump/errors.hpp"
#include "qjump/model.hpp"
#include "qjump/propagator.hpp"

namespace qjump::cli {

// Schema violation; what() starts with the offending field path.
class ConfigError : public Error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 1;

    std::vector<double> values() const;
    bool operator==(const GridSpec&) const = default;
};

// "start:stop:points"
GridSpec parse_grid(const std::string& text, const std::string& path = "grid");
std::string format_grid(const GridSpec& grid);

// A name (built-in or from the config's operators/states tables) or an inline matrix.
using OperatorRef = std::variant<std::string, Operator>;
using StateRef = std::variant<std::string, StateVector>;

struct TimedOperatorRef {
    OperatorRef op;
    double time = 0.0;
};

struct CorrelationConfig {
    std::vector<TimedOperatorRef> a;  // the last entry is swept over the grid
    std::vector<TimedOperatorRef> b;
    bool stationary = false;
};

struct ModelConfig {
    enum class Kind { two_level, custom };
    Kind kind = Kind::two_level;
    double omega = 10.0;
    double gamma = 1.0;
    double delta = 0.0;
    Eigen::Index dim = 2;
    std::vector<HamiltonianTerm> hamiltonian;
    std::vector<DecayChannel> channels;

    LindbladModel build() const;
};

struct BenchConfig {
    std::vector<std::size_t> ladder{100, 300, 1000, 3000};
    std::vector<std::string> methods{"doubled", "limit", "four"};
};

struct RunConfig {
    ModelConfig model;
    std::map<std::string, Operator> operators;
    std::map<std::string, StateVector> states;

    StateRef initial = std::string("g");
    std::optional<StateRef> phi0;
    std::optional<StateRef> psi0;
    std::optional<OperatorRef> observable;
    std::optional<CorrelationConfig> correlation;

    GridSpec grid{0.0, 5.0, 51};
    std::optional<GridSpec> omega_grid;

    std::size_t trajectories = 1000;
    std::uint64_t seed = 1;
    std::string method = "doubled";
    double epsilon = 1e-4;
    StepControl step{};
    std::optional<double> burn_in;  // defaults to 10 / (largest decay rate)
    unsigned threads = 1;

    std::string output;  // empty: standard output
    std::string format = "csv";
    std::string target = "expect";  // quantity computed by the oracle subcommand

    BenchConfig bench;

    double effective_burn_in() const;
    Operator resolve(const OperatorRef& ref, const std::string& path) const;
    StateVector resolve(const StateRef& ref, const std::string& path) const;
};

bool operator==(const RunConfig& x, const RunConfig& y);

RunConfig parse_config(const std::string& document);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& config);

// Canonical JSON text of the model section; hashed into output metadata.
std::string serialize_model(const ModelConfig& model);
std::string model_hash(const ModelConfig& model);

// Structural checks needing more than one field (names defined, dimensions).
void validate(const RunConfig& config);

}  // namespace qjump::cli
