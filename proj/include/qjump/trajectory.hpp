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
#include "qjump/model.hpp"
#include "qjump/propagator.hpp"
#include "qjump/rng.hpp"
#include "qjump/schedule.hpp"

namespace qjump {

struct JumpEvent {
    double time = 0.0;
    std::size_t channel = 0;
    bool operator==(const JumpEvent&) const = default;
};

enum class TrajectoryStatus { completed, zero_weight, failed };

struct TrajectoryRecord {
    std::vector<JumpEvent> jumps;
    std::vector<StateBlock> snapshots;  // normalized, one per grid time
    double weight = 1.0;                // product of insertion norm^2 factors
    TrajectoryStatus status = TrajectoryStatus::completed;
};

// How the second component of a correlation trajectory is formed at the first
// insertion: the full doubled-space pair, a pair with the lower side scaled by
// epsilon, or the epsilon -> 0 limit in which the lower side is slaved to the
// upper side's jumps and normalization.
class KickMode {
public:
    enum class Kind { doubled, epsilon, limit };

    static KickMode doubled() { return KickMode(Kind::doubled, 0.0); }
    static KickMode epsilon(double eps);
    static KickMode limit() { return KickMode(Kind::limit, 0.0); }

    Kind kind() const { return kind_; }
    double eps() const { return eps_; }

private:
    KickMode(Kind kind, double eps) : kind_(kind), eps_(eps) {}
    Kind kind_;
    double eps_;
};

// Cumulative inversion of u over gamma_i * |J_i state|^2. Throws DarkStateError
// when every weight vanishes.
std::size_t select_channel(const StateBlock& state, std::span<const DecayChannel> channels, double u,
                           NormDriver driver = NormDriver::joint);

// J state / |J state|
StateBlock apply_jump(const StateBlock& state, const DecayChannel& channel,
                      NormDriver driver = NormDriver::joint);

StateBlock normalize(const StateBlock& state, NormDriver driver = NormDriver::joint);

// The piecewise deterministic jump process for one realization.
class JumpProcess {
public:
    JumpProcess(const EffectiveHamiltonian& heff, std::span<const DecayChannel> channels,
                const StepControl& ctrl);

    // Replaces the state (assumed normalized w.r.t. `driver`) and draws a fresh
    // waiting-time threshold.
    void restart(double t, const StateBlock& state, NormDriver driver, RngStream& rng);

    void advance_to(double t, RngStream& rng);

    double time() const { return t_; }
    const StateBlock& raw_state() const { return x_; }
    StateBlock normalized() const { return normalize(x_, driver_); }
    const std::vector<JumpEvent>& jumps() const { return jumps_; }

private:
    Rk4Stepper stepper_;
    std::span<const DecayChannel> channels_;
    bool can_jump_;
    NormDriver driver_ = NormDriver::joint;
    double t_ = 0.0;
    double eta_ = 1.0;
    StateBlock x_;
    std::vector<JumpEvent> jumps_;
};

class TrajectoryEngine {
public:
    TrajectoryEngine(const LindbladModel& model, const StepControl& ctrl);

    const LindbladModel& model() const { return model_; }
    const StepControl& control() const { return ctrl_; }

    // Jump process started at grid[0] from a normalized state (one column for
    // the single space, two for a doubled-space pair).
    TrajectoryRecord run(const StateBlock& initial, double weight, std::span<const double> grid,
                         RngStream& rng) const;

    // Single-space evolution from phi0 up to the first schedule time, then
    // insertions at every schedule time; snapshots are two-column pairs at grid
    // times, which must not precede the last insertion.
    TrajectoryRecord run_kick(const StateVector& phi0, double t0, const FGSchedule& schedule,
                              std::span<const double> grid, RngStream& rng, KickMode mode) const;

private:
    const LindbladModel& model_;
    StepControl ctrl_;
    EffectiveHamiltonian heff_;
};

TrajectoryRecord run_trajectory(const LindbladModel& model, const StateVector& psi0,
                                std::span<const double> grid, RngStream& rng,
                                const StepControl& ctrl);
TrajectoryRecord run_trajectory(const LindbladModel& model, const PairedState& theta0,
                                std::span<const double> grid, RngStream& rng,
                                const StepControl& ctrl);
TrajectoryRecord run_trajectory_kick(const LindbladModel& model, const StateVector& phi0, double t0,
                                     const FGSchedule& schedule, std::span<const double> grid,
                                     RngStream& rng, KickMode mode, const StepControl& ctrl);

}  // namespace qjump
