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
#include <string>
#include <vector>

#include "qjump/ensemble.hpp"
#include "qjump/model.hpp"
#include "qjump/propagator.hpp"
#include "qjump/schedule.hpp"
#include "qjump/statistics.hpp"
#include "qjump/trajectory.hpp"

namespace qjump {

class CorrelationMethod {
public:
    enum class Kind { doubled, kick, four };

    static CorrelationMethod doubled() { return CorrelationMethod(Kind::doubled, KickMode::doubled()); }
    static CorrelationMethod kick_epsilon(double eps) {
        return CorrelationMethod(Kind::kick, KickMode::epsilon(eps));
    }
    static CorrelationMethod kick_limit() { return CorrelationMethod(Kind::kick, KickMode::limit()); }
    static CorrelationMethod four() { return CorrelationMethod(Kind::four, KickMode::doubled()); }

    // "doubled", "kick", "limit" or "four"
    static CorrelationMethod parse(const std::string& name, double eps = 1e-4);

    Kind kind() const { return kind_; }
    const KickMode& kick_mode() const { return mode_; }
    std::string name() const;

private:
    CorrelationMethod(Kind kind, KickMode mode) : kind_(kind), mode_(mode) {}
    Kind kind_;
    KickMode mode_;
};

// Sample functions are self-contained (they own a copy of the model) and can be
// shared across threads.
SampleFn make_expectation_sampler(const LindbladModel& model, const StateVector& psi0,
                                  const Operator& a, std::vector<double> grid,
                                  const StepControl& ctrl);

SampleFn make_heisenberg_sampler(const LindbladModel& model, const StateVector& phi0,
                                 const StateVector& psi0, const Operator& a,
                                 std::vector<double> grid, const StepControl& ctrl);

// The last entry of spec.a is evaluated at every time of final_grid (its own
// time is ignored); all remaining insertions are fixed and must not come after
// final_grid.front().
SampleFn make_correlation_sampler(const LindbladModel& model, const CorrelationSpec& spec,
                                  std::vector<double> final_grid, const CorrelationMethod& method,
                                  const StepControl& ctrl);

// Mean over single-space trajectories of <psi(t)|A|psi(t)>; grid[0] is the
// start time.
EstimateSeries expectation(const LindbladModel& model, const StateVector& psi0, const Operator& a,
                           std::span<const double> grid, const EnsembleOptions& opts,
                           const StepControl& ctrl = {});

// Tr{A V(t, t0) |psi0><phi0|} from doubled-space trajectories started at
// (phi0, psi0)/sqrt(2); grid[0] is t0.
EstimateSeries heisenberg_element(const LindbladModel& model, const StateVector& phi0,
                                  const StateVector& psi0, const Operator& a,
                                  std::span<const double> grid, const EnsembleOptions& opts,
                                  const StepControl& ctrl = {});

EstimateSeries correlation(const LindbladModel& model, const CorrelationSpec& spec,
                           std::span<const double> final_grid, const CorrelationMethod& method,
                           const EnsembleOptions& opts, const StepControl& ctrl = {});

// <A(burn_in + tau) B(burn_in)> after relaxing from `initial` for burn_in.
CorrelationSpec stationary_spec(const StateVector& initial, double burn_in, const Operator& b,
                                const Operator& a);

// Correlation estimate indexed by tau rather than absolute time.
EstimateSeries stationary_correlation(const LindbladModel& model, const StateVector& initial,
                                      double burn_in, const Operator& b, const Operator& a,
                                      std::span<const double> tau_grid,
                                      const CorrelationMethod& method, const EnsembleOptions& opts,
                                      const StepControl& ctrl = {});

EstimateSeries finish_ensemble(const EnsembleResult& result, std::vector<double> grid);

}  // namespace qjump
