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
#include <ostream>
#include <string>

#include "qjump/statistics.hpp"

namespace qjump::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kCsvHeader = "t_or_tau_or_omega,mean_re,mean_im,stderr";

struct RunMetadata {
    std::string command;
    std::string method;
    std::uint64_t seed = 0;
    std::size_t trajectories = 0;
    unsigned threads = 1;
    std::string model_hash;
    double cpu_seconds = 0.0;  // estimation phase only
    double wall_seconds = 0.0;
};

void write_csv(std::ostream& out, const EstimateSeries& series);
void write_json(std::ostream& out, const EstimateSeries& series, const RunMetadata& meta);

// Writes to `path`, or to standard output when it is empty.
void write_text(const std::string& path, const std::string& text);

}  // namespace qjump::cli
