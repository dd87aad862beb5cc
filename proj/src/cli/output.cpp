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

#include "qjump/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qjump/cli/config.hpp"

namespace qjump::cli {

using json = nlohmann::ordered_json;

namespace {

std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const EstimateSeries& series) {
    out << kCsvHeader << '\n';
    for (std::size_t k = 0; k < series.grid.size(); ++k) {
        out << number(series.grid[k]) << ',' << number(series.mean[k].real()) << ','
            << number(series.mean[k].imag()) << ',' << number(series.stderr[k]) << '\n';
    }
}

void write_json(std::ostream& out, const EstimateSeries& series, const RunMetadata& meta) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["grid"] = series.grid;
    json re = json::array();
    json im = json::array();
    for (const auto& z : series.mean) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    doc["mean_re"] = re;
    doc["mean_im"] = im;
    doc["stderr"] = series.stderr;
    doc["stderr_re"] = series.stderr_re;
    doc["stderr_im"] = series.stderr_im;
    doc["n"] = series.n;
    doc["failed"] = series.failed;
    doc["zero_weight"] = series.zero_weight;
    doc["metadata"] = json{{"command", meta.command},
                           {"method", meta.method},
                           {"seed", meta.seed},
                           {"trajectories", meta.trajectories},
                           {"threads", meta.threads},
                           {"model_hash", meta.model_hash},
                           {"cpu_seconds", meta.cpu_seconds},
                           {"wall_seconds", meta.wall_seconds}};
    out << doc.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("output", "cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw ConfigError("output", "failed writing '" + path + "'");
}

}  // namespace qjump::cli
