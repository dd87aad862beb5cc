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

#include "qjump/cli/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "qjump/cli/commands.hpp"
#include "qjump/errors.hpp"
#include "qjump/estimators.hpp"
#include "qjump/timing.hpp"

namespace qjump::cli {

using json = nlohmann::ordered_json;

std::vector<double> relative_scale(const std::vector<Complex>& oracle) {
    double peak = 0.0;
    for (const auto& z : oracle) peak = std::max(peak, std::abs(z));
    const double floor = 1e-3 * peak;
    std::vector<double> scale(oracle.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        scale[k] = std::max(std::abs(oracle[k]), floor);
        if (!(scale[k] > 0.0)) scale[k] = 1.0;
    }
    return scale;
}

double relative_error(const EstimateSeries& series, const std::vector<Complex>& oracle) {
    if (series.mean.size() != oracle.size()) {
        throw DimensionError("relative_error: series and oracle lengths differ");
    }
    const auto scale = relative_scale(oracle);
    double sum = 0.0;
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        const double r = std::abs(series.mean[k] - oracle[k]) / scale[k];
        sum += r * r;
    }
    return oracle.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(oracle.size()));
}

double relative_stderr(const EstimateSeries& series, const std::vector<Complex>& oracle) {
    if (series.stderr.size() != oracle.size()) {
        throw DimensionError("relative_stderr: series and oracle lengths differ");
    }
    const auto scale = relative_scale(oracle);
    double sum = 0.0;
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        const double r = series.stderr[k] / scale[k];
        sum += r * r;
    }
    return oracle.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(oracle.size()));
}

BenchEntry bench_entry(const std::string& method, const EstimateSeries& series,
                       const std::vector<Complex>& oracle, double cpu_seconds, double wall_seconds) {
    return {method, series.n, cpu_seconds, wall_seconds, relative_error(series, oracle),
            relative_stderr(series, oracle)};
}

BenchReport run_bench(const RunConfig& config) {
    BenchReport report;
    report.grid = config.grid.values();
    report.oracle = oracle_correlation(config);
    for (const auto& name : config.bench.methods) {
        const CorrelationMethod method = CorrelationMethod::parse(name, config.epsilon);
        for (std::size_t i = 0; i < config.bench.ladder.size(); ++i) {
            const std::size_t n = config.bench.ladder[i];
            // Disjoint seeds keep the rungs statistically independent.
            const Stopwatch clock;
            const EstimateSeries s = estimate_correlation(config, method, n, config.seed + i);
            const double cpu = clock.cpu_seconds();
            const double wall = clock.wall_seconds();
            report.entries.push_back(bench_entry(name, s, report.oracle, cpu, wall));
        }
    }
    return report;
}

void emit_plot_data(std::ostream& out, const BenchReport& report) {
    out << "method,n,cpu_seconds,rel_error,est_stderr\n";
    char buf[256];
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g,%.17g\n", e.method.c_str(),
                      e.trajectories, e.cpu_seconds, e.rel_error, e.est_stderr);
        out << buf;
    }
}

void write_bench_json(std::ostream& out, const BenchReport& report, const RunMetadata& meta) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["grid"] = report.grid;
    json re = json::array();
    json im = json::array();
    for (const auto& z : report.oracle) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    doc["oracle_re"] = re;
    doc["oracle_im"] = im;
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back(json{{"method", e.method},
                               {"n", e.trajectories},
                               {"cpu_seconds", e.cpu_seconds},
                               {"wall_seconds", e.wall_seconds},
                               {"rel_error", e.rel_error},
                               {"est_stderr", e.est_stderr}});
    }
    doc["entries"] = entries;
    doc["metadata"] = json{{"command", meta.command},
                           {"seed", meta.seed},
                           {"threads", meta.threads},
                           {"model_hash", meta.model_hash},
                           {"cpu_seconds", meta.cpu_seconds},
                           {"wall_seconds", meta.wall_seconds}};
    out << doc.dump(2) << '\n';
}

}  // namespace qjump::cli
