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
#include <span>
#include <vector>

#include "qjump/hilbert.hpp"

namespace qjump {

// Running mean and squared deviations of complex samples, real and imaginary
// parts tracked separately. merge() is the pairwise update of Chan et al.
class Accumulator {
public:
    void add(Complex x);
    void merge(const Accumulator& other);

    std::size_t count() const { return n_; }
    Complex mean() const { return mean_; }

    // Standard deviation of the mean per component; requires count() >= 2.
    double stderr_re() const;
    double stderr_im() const;
    // sqrt(stderr_re^2 + stderr_im^2)
    double stderr() const;

private:
    std::size_t n_ = 0;
    Complex mean_{0.0, 0.0};
    double m2_re_ = 0.0;
    double m2_im_ = 0.0;
};

struct MeanStderr {
    Complex mean;
    double stderr;
    double stderr_re;
    double stderr_im;
};

// Throws PreconditionError for fewer than two samples.
MeanStderr statistics_merge(std::span<const Complex> samples);

struct EstimateSeries {
    std::vector<double> grid;
    std::vector<Complex> mean;
    std::vector<double> stderr;
    std::vector<double> stderr_re;
    std::vector<double> stderr_im;
    std::size_t n = 0;            // samples per grid point
    std::size_t failed = 0;       // excluded realizations
    std::size_t zero_weight = 0;  // realizations that contributed exactly 0
};

class SeriesAccumulator {
public:
    explicit SeriesAccumulator(std::size_t points = 0) : acc_(points) {}

    std::size_t size() const { return acc_.size(); }
    std::size_t count() const { return acc_.empty() ? 0 : acc_.front().count(); }
    void add(std::span<const Complex> sample);
    void merge(const SeriesAccumulator& other);
    const Accumulator& at(std::size_t k) const { return acc_.at(k); }

    EstimateSeries finish(std::vector<double> grid) const;

private:
    std::vector<Accumulator> acc_;
};

}  // namespace qjump
