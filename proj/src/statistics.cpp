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

#include "qjump/statistics.hpp"

#include <cmath>

#include "qjump/errors.hpp"

namespace qjump {

void Accumulator::add(Complex x) {
    ++n_;
    const Complex d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    const Complex d2 = x - mean_;
    m2_re_ += d.real() * d2.real();
    m2_im_ += d.imag() * d2.imag();
}

void Accumulator::merge(const Accumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const Complex delta = other.mean_ - mean_;
    mean_ += delta * (nb / n);
    m2_re_ += other.m2_re_ + delta.real() * delta.real() * na * nb / n;
    m2_im_ += other.m2_im_ + delta.imag() * delta.imag() * na * nb / n;
    n_ += other.n_;
}

namespace {

double stderr_of(double m2, std::size_t n) {
    if (n < 2) {
        throw PreconditionError("stderr requires at least two samples");
    }
    const double nd = static_cast<double>(n);
    return std::sqrt(m2 / (nd - 1.0) / nd);
}

}  // namespace

double Accumulator::stderr_re() const { return stderr_of(m2_re_, n_); }
double Accumulator::stderr_im() const { return stderr_of(m2_im_, n_); }
double Accumulator::stderr() const { return stderr_of(m2_re_ + m2_im_, n_); }

MeanStderr statistics_merge(std::span<const Complex> samples) {
    Accumulator acc;
    for (const Complex& s : samples) acc.add(s);
    return {acc.mean(), acc.stderr(), acc.stderr_re(), acc.stderr_im()};
}

void SeriesAccumulator::add(std::span<const Complex> sample) {
    if (sample.size() != acc_.size()) {
        throw DimensionError("SeriesAccumulator: sample length mismatch");
    }
    for (std::size_t k = 0; k < acc_.size(); ++k) acc_[k].add(sample[k]);
}

void SeriesAccumulator::merge(const SeriesAccumulator& other) {
    if (other.acc_.size() != acc_.size()) {
        throw DimensionError("SeriesAccumulator: merge length mismatch");
    }
    for (std::size_t k = 0; k < acc_.size(); ++k) acc_[k].merge(other.acc_[k]);
}

EstimateSeries SeriesAccumulator::finish(std::vector<double> grid) const {
    if (grid.size() != acc_.size()) {
        throw DimensionError("SeriesAccumulator: grid length mismatch");
    }
    EstimateSeries s;
    s.grid = std::move(grid);
    s.n = count();
    for (const auto& a : acc_) {
        s.mean.push_back(a.mean());
        s.stderr.push_back(a.stderr());
        s.stderr_re.push_back(a.stderr_re());
        s.stderr_im.push_back(a.stderr_im());
    }
    return s;
}

}  // namespace qjump
