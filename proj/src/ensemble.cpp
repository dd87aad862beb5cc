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

#include "qjump/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

constexpr std::size_t kBlockSize = 128;

struct BlockResult {
    SeriesAccumulator stats;
    std::size_t failed = 0;
    std::size_t zero_weight = 0;
};

BlockResult run_block(std::size_t block, std::size_t grid_points, const EnsembleOptions& opts,
                      const SampleFn& sample) {
    BlockResult out{SeriesAccumulator(grid_points)};
    std::vector<Complex> buf(grid_points);
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(opts.trajectories, begin + kBlockSize);
    for (std::size_t k = begin; k < end; ++k) {
        RngStream rng(opts.seed, k);
        std::fill(buf.begin(), buf.end(), Complex(0.0, 0.0));
        const TrajectoryStatus status = sample(rng, buf);
        if (status == TrajectoryStatus::failed) {
            ++out.failed;
            continue;
        }
        if (status == TrajectoryStatus::zero_weight) {
            ++out.zero_weight;
        }
        out.stats.add(buf);
    }
    return out;
}

}  // namespace

EnsembleResult run_ensemble(std::size_t grid_points, const EnsembleOptions& opts,
                            const SampleFn& sample) {
    if (opts.trajectories < 2) {
        throw PreconditionError("ensemble: at least two trajectories are required");
    }
    const std::size_t blocks = (opts.trajectories + kBlockSize - 1) / kBlockSize;
    std::vector<BlockResult> results(blocks);
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(blocks)));

    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            results[b] = run_block(b, grid_points, opts, sample);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= blocks) return;
                    try {
                        results[b] = run_block(b, grid_points, opts, sample);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next.store(blocks);
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    EnsembleResult total{SeriesAccumulator(grid_points)};
    for (const auto& r : results) {
        total.stats.merge(r.stats);
        total.failed += r.failed;
        total.zero_weight += r.zero_weight;
    }
    return total;
}

}  // namespace qjump
