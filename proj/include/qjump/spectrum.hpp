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

#include <span>
#include <vector>

#include "qjump/ensemble.hpp"
#include "qjump/statistics.hpp"

namespace qjump {

// S(w) = 2 Re sum_k w_k exp(i w tau_k) C(tau_k) dtau with trapezoid weights on
// a uniform tau grid starting at 0.
class SpectrumTransform {
public:
    // Throws PreconditionError when tau is not uniform from 0 or has < 2 points.
    SpectrumTransform(std::span<const double> tau, std::span<const double> omega);

    std::size_t tau_points() const { return tau_points_; }
    const std::vector<double>& omega() const { return omega_; }

    std::vector<double> apply(std::span<const Complex> corr) const;

    // Sum_k |d S(w) / d C_k| s_k, which bounds the standard deviation of S(w)
    // whatever the correlation between the C_k.
    std::vector<double> propagate_bound(std::span<const double> stderr) const;

private:
    std::size_t tau_points_;
    std::vector<double> omega_;
    Eigen::MatrixXcd kernel_;  // rows: omega, cols: tau
};

// Transform of the mean; stderr holds the conservative propagate_bound.
EstimateSeries spectrum(const EstimateSeries& corr, std::span<const double> omega);

// Wraps a correlation sampler so each realization yields its own spectrum;
// the ensemble statistics then carry a proper standard error for S(w).
SampleFn make_spectrum_sampler(SampleFn correlation_sampler, std::vector<double> tau,
                               std::vector<double> omega);

}  // namespace qjump
