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
#include <functional>
#include <span>

#include "qjump/rng.hpp"
#include "qjump/statistics.hpp"
#include "qjump/trajectory.hpp"

namespace qjump {

struct EnsembleOptions {
    std::size_t trajectories = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Fills one sample per grid point for the realization driven by `rng` and
// reports its status. Failed realizations are excluded from the statistics.
using SampleFn = std::function<TrajectoryStatus(RngStream& rng, std::span<Complex> out)>;

struct EnsembleResult {
    SeriesAccumulator stats;
    std::size_t failed = 0;
    std::size_t zero_weight = 0;
};

// Trajectory k uses RngStream(seed, k). Realizations are grouped in fixed
// blocks of consecutive indices whose partial statistics are merged in block
// order, so the result is bit-identical for any thread count.
EnsembleResult run_ensemble(std::size_t grid_points, const EnsembleOptions& opts,
                            const SampleFn& sample);

}  // namespace qjump
