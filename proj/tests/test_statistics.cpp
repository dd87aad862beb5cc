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
#include <random>
#include <vector>

#include "doctest.h"
#include "qjump/errors.hpp"
#include "qjump/statistics.hpp"

using namespace qjump;

TEST_CASE("two-sample statistics") {
    const std::vector<Complex> s{{0.0, 0.0}, {2.0, 0.0}};
    const MeanStderr r = statistics_merge(s);
    CHECK(r.mean == Complex(1.0, 0.0));
    CHECK(std::abs(r.stderr - 1.0) < 1e-15);
    CHECK(r.stderr_im == 0.0);
}

TEST_CASE("constant samples have zero stderr") {
    const std::vector<Complex> s(10, Complex(0.5, -1.5));
    const MeanStderr r = statistics_merge(s);
    CHECK(std::abs(r.mean - Complex(0.5, -1.5)) < 1e-15);
    CHECK(r.stderr == 0.0);
}

TEST_CASE("too few samples") {
    const std::vector<Complex> s{{1.0, 0.0}};
    CHECK_THROWS_AS(statistics_merge(s), PreconditionError);
}

TEST_CASE("complex stderr combines both components") {
    const std::vector<Complex> s{{0.0, 0.0}, {2.0, 2.0}};
    const MeanStderr r = statistics_merge(s);
    CHECK(std::abs(r.stderr_re - 1.0) < 1e-15);
    CHECK(std::abs(r.stderr_im - 1.0) < 1e-15);
    CHECK(std::abs(r.stderr - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("property: merging partial accumulators matches a single pass") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> nd(3.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> s(1000);
        for (auto& x : s) x = Complex(nd(gen), nd(gen));
        Accumulator whole, left, right;
        for (std::size_t k = 0; k < s.size(); ++k) {
            whole.add(s[k]);
            (k < 437 ? left : right).add(s[k]);
        }
        left.merge(right);
        CHECK(left.count() == whole.count());
        CHECK(std::abs(left.mean() - whole.mean()) < 1e-12);
        CHECK(std::abs(left.stderr() - whole.stderr()) < 1e-12);
    }
}

TEST_CASE("series accumulator") {
    SeriesAccumulator acc(2);
    const std::vector<Complex> a{{1.0, 0.0}, {0.0, 1.0}};
    const std::vector<Complex> b{{3.0, 0.0}, {0.0, 3.0}};
    acc.add(a);
    acc.add(b);
    const EstimateSeries out = acc.finish({0.0, 1.0});
    CHECK(out.n == 2);
    CHECK(out.mean[0] == Complex(2.0, 0.0));
    CHECK(out.mean[1] == Complex(0.0, 2.0));
    CHECK(std::abs(out.stderr[1] - 1.0) < 1e-15);
    const std::vector<Complex> bad{{1.0, 0.0}};
    CHECK_THROWS_AS(acc.add(bad), DimensionError);
}
