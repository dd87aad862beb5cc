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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qjump/cli/bench.hpp"
#include "qjump/cli/config.hpp"
#include "qjump/cli/output.hpp"
#include "qjump/estimators.hpp"
#include "qjump/schedule.hpp"
#include "qjump/statistics.hpp"

namespace qjump::cli {

inline const std::vector<std::string> kSubcommands{"expect", "heisenberg", "corr",
                                                   "spectrum", "oracle",     "bench"};

struct CommandResult {
    EstimateSeries series;
    RunMetadata meta;
    std::optional<BenchReport> bench;
};

// The correlation of the config, or the stationary <sp(tau) sm> of a two-level model.
CorrelationConfig effective_correlation(const RunConfig& config);

// Estimates the configured correlation on config.grid (tau grid when stationary).
EstimateSeries estimate_correlation(const RunConfig& config, const CorrelationMethod& method,
                                    std::size_t trajectories, std::uint64_t seed);
std::vector<Complex> oracle_correlation(const RunConfig& config);

CommandResult execute(const std::string& subcommand, const RunConfig& config);

// Formats a result in config.format.
std::string render(const CommandResult& result, const std::string& format);

// Executes and writes the output; returns the process exit status.
int run_command(const std::string& subcommand, const RunConfig& config, std::ostream& err);

}  // namespace qjump::cli
