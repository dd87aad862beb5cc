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
#include <ostream>
#include <string>
#include <vector>

#include "qjump/cli/config.hpp"
#include "qjump/cli/output.hpp"
#include "qjump/statistics.hpp"

namespace qjump::cli {

struct BenchEntry {
    std::string method;
    std::size_t trajectories = 0;
    double cpu_seconds = 0.0;
    double wall_seconds = 0.0;
    double rel_error = 0.0;   // RMS over the grid of the relative deviation from the oracle
    double est_stderr = 0.0;  // RMS over the grid of the relative estimated standard error
};

struct BenchReport {
    std::vector<double> grid;
    std::vector<Complex> oracle;
    std::vector<BenchEntry> entries;  // grouped by method, counts increasing within a group
};

// Per-point scale max(|oracle_k|, 1e-3 max_j |oracle_j|).
std::vector<double> relative_scale(const std::vector<Complex>& oracle);
double relative_error(const EstimateSeries& series, const std::vector<Complex>& oracle);
double relative_stderr(const EstimateSeries& series, const std::vector<Complex>& oracle);

BenchEntry bench_entry(const std::string& method, const EstimateSeries& series,
                       const std::vector<Complex>& oracle, double cpu_seconds, double wall_seconds);

// Runs every configured method at every ladder count on the configured correlation
// (by default the stationary <sp(tau) sm>) and compares against the regression oracle.
BenchReport run_bench(const RunConfig& config);

// Long format: method,n,cpu_seconds,rel_error,est_stderr
void emit_plot_data(std::ostream& out, const BenchReport& report);

void write_bench_json(std::ostream& out, const BenchReport& report, const RunMetadata& meta);

}  // namespace qjump::cli
