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

#include <cmath>
#include <set>

#include "doctest.h"
#include "qjump/rng.hpp"

using namespace qjump;

TEST_CASE("philox4x32-10 known answers") {
    using W = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and addressable") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.draws() == 100);

    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(RngStream(42, s).next_u64());
    CHECK(firsts.size() == 1000);

    CHECK(RngStream(42, 7).next_u64() != RngStream(43, 7).next_u64());
    CHECK(RngStream(42, 7).next_u64() != RngStream(42, 7, 1).next_u64());
    CHECK(RngStream(42, 7).fork(1).next_u64() == RngStream(42, 7, 1).next_u64());
    CHECK(RngStream(1, std::uint64_t{1} << 40).next_u64() != RngStream(1, 0).next_u64());
}

TEST_CASE("uniform draws lie in the open unit interval") {
    RngStream r(9, 0);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double u = r.uniform_open();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5e-3);
    CHECK(std::abs(var - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("property: adjacent uniforms are uncorrelated") {
    RngStream r(11, 3);
    const int n = 100000;
    double prev = r.uniform_open();
    double cov = 0.0;
    for (int k = 0; k < n; ++k) {
        const double u = r.uniform_open();
        cov += (u - 0.5) * (prev - 0.5);
        prev = u;
    }
    CHECK(std::abs(cov / n) < 2e-3);
}
