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

#include <array>
#include <cstdint>

namespace qjump {

// Philox4x32-10 (Salmon et al., SC'11). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Uniform stream keyed by (master_seed, stream_index, substream). The n-th
// draw is philox(counter = {n, substream, stream lo, stream hi}, key = seed),
// so a draw depends only on its coordinates and never on scheduling.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index, std::uint32_t substream = 0);

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }
    std::uint32_t substream() const { return substream_; }
    std::uint64_t draws() const { return counter_; }

    std::uint64_t next_u64();

    // Uniform on (0, 1): a 53-bit draw of exactly 0 is replaced by 2^-53.
    double uniform_open();

    // Independent stream for the same trajectory (e.g. sub-trajectories).
    RngStream fork(std::uint32_t substream) const { return {seed_, stream_, substream}; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint32_t substream_;
    std::uint64_t counter_ = 0;
};

}  // namespace qjump
