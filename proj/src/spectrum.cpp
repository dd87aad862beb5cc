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

#include "qjump/spectrum.hpp"

#include <cmath>
#include <memory>

#include "qjump/errors.hpp"

namespace qjump {

SpectrumTransform::SpectrumTransform(std::span<const double> tau, std::span<const double> omega)
    : tau_points_(tau.size()), omega_(omega.begin(), omega.end()) {
    if (tau.size() < 2) {
        throw PreconditionError("spectrum: need at least two tau points");
    }
    const double dtau = tau[1] - tau[0];
    if (!(dtau > 0.0) || std::abs(tau[0]) > 1e-12 * dtau) {
        throw PreconditionError("spectrum: tau grid must start at 0 and increase");
    }
    for (std::size_t k = 0; k < tau.size(); ++k) {
        if (std::abs(tau[k] - static_cast<double>(k) * dtau) > 1e-9 * dtau * static_cast<double>(k + 1)) {
            throw PreconditionError("spectrum: tau grid is not uniform");
        }
    }
    kernel_.resize(static_cast<Eigen::Index>(omega_.size()), static_cast<Eigen::Index>(tau.size()));
    for (std::size_t j = 0; j < omega_.size(); ++j) {
        for (std::size_t k = 0; k < tau.size(); ++k) {
            const double w = (k == 0 || k + 1 == tau.size()) ? 0.5 : 1.0;
            const double tk = static_cast<double>(k) * dtau;
            kernel_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                2.0 * w * dtau * std::polar(1.0, omega_[j] * tk);
        }
    }
}

std::vector<double> SpectrumTransform::apply(std::span<const Complex> corr) const {
    if (corr.size() != tau_points_) {
        throw DimensionError("spectrum: correlation length does not match the tau grid");
    }
    Eigen::Map<const Eigen::VectorXcd> c(corr.data(), static_cast<Eigen::Index>(corr.size()));
    const Eigen::VectorXcd s = kernel_ * c;
    std::vector<double> out(omega_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = s(static_cast<Eigen::Index>(j)).real();
    return out;
}

std::vector<double> SpectrumTransform::propagate_bound(std::span<const double> stderr) const {
    if (stderr.size() != tau_points_) {
        throw DimensionError("spectrum: stderr length does not match the tau grid");
    }
    std::vector<double> out(omega_.size(), 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        for (std::size_t k = 0; k < tau_points_; ++k) {
            out[j] += std::abs(kernel_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) *
                      stderr[k];
        }
    }
    return out;
}

EstimateSeries spectrum(const EstimateSeries& corr, std::span<const double> omega) {
    SpectrumTransform transform(corr.grid, omega);
    EstimateSeries out;
    out.grid.assign(omega.begin(), omega.end());
    for (double s : transform.apply(corr.mean)) out.mean.emplace_back(s, 0.0);
    if (corr.stderr.size() == corr.grid.size()) {
        out.stderr = transform.propagate_bound(corr.stderr);
    } else {
        out.stderr.assign(omega.size(), 0.0);
    }
    out.stderr_re = out.stderr;
    out.stderr_im.assign(omega.size(), 0.0);
    out.n = corr.n;
    out.failed = corr.failed;
    out.zero_weight = corr.zero_weight;
    return out;
}

SampleFn make_spectrum_sampler(SampleFn correlation_sampler, std::vector<double> tau,
                               std::vector<double> omega) {
    auto transform = std::make_shared<const SpectrumTransform>(tau, omega);
    return [inner = std::move(correlation_sampler), transform](RngStream& rng,
                                                               std::span<Complex> out) {
        std::vector<Complex> corr(transform->tau_points(), Complex(0.0, 0.0));
        const TrajectoryStatus status = inner(rng, corr);
        if (status == TrajectoryStatus::failed) return status;
        const std::vector<double> s = transform->apply(corr);
        for (std::size_t j = 0; j < s.size(); ++j) out[j] = Complex(s[j], 0.0);
        return status;
    };
}

}  // namespace qjump
