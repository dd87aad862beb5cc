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

#include "qjump/trajectory.hpp"

#include <cmath>
#include <limits>

#include "qjump/errors.hpp"

namespace qjump {

KickMode KickMode::epsilon(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw PreconditionError("KickMode: epsilon must be positive");
    }
    return KickMode(Kind::epsilon, eps);
}

std::size_t select_channel(const StateBlock& state, std::span<const DecayChannel> channels, double u,
                           NormDriver driver) {
    std::vector<double> weights(channels.size());
    double total = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const auto& ch = channels[i];
        weights[i] = ch.rate > 0.0 ? ch.rate * driver_norm2(ch.jump_op * state, driver) : 0.0;
        total += weights[i];
    }
    if (!(total > 0.0)) {
        throw DarkStateError(std::numeric_limits<double>::quiet_NaN());
    }
    const double target = u * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        cum += weights[i];
        if (target < cum) return i;
    }
    return last_positive;
}

StateBlock normalize(const StateBlock& state, NormDriver driver) {
    const double n2 = driver_norm2(state, driver);
    if (!(n2 > 0.0)) {
        throw Error("normalize: zero norm");
    }
    return state / std::sqrt(n2);
}

StateBlock apply_jump(const StateBlock& state, const DecayChannel& channel, NormDriver driver) {
    StateBlock image = channel.jump_op * state;
    if (!(driver_norm2(image, driver) > 0.0)) {
        throw Error("apply_jump: jump operator annihilates the state");
    }
    return normalize(image, driver);
}

JumpProcess::JumpProcess(const EffectiveHamiltonian& heff, std::span<const DecayChannel> channels,
                         const StepControl& ctrl)
    : stepper_(heff, ctrl), channels_(channels), can_jump_(false) {
    for (const auto& ch : channels_) {
        if (ch.rate > 0.0 && ch.jump_op.cwiseAbs().maxCoeff() > 0.0) {
            can_jump_ = true;
        }
    }
}

void JumpProcess::restart(double t, const StateBlock& state, NormDriver driver, RngStream& rng) {
    t_ = t;
    x_ = state;
    driver_ = driver;
    eta_ = rng.uniform_open();
}

void JumpProcess::advance_to(double t, RngStream& rng) {
    if (t < t_) {
        throw PreconditionError("JumpProcess: cannot advance backwards in time");
    }
    if (!can_jump_) {
        stepper_.evolve(x_, t_, t);
        t_ = t;
        return;
    }
    while (true) {
        const JumpOutcome out = stepper_.advance_until(x_, t_, t, eta_, driver_);
        t_ = out.time;
        if (!out.jumped) {
            return;
        }
        std::size_t ch = 0;
        try {
            ch = select_channel(x_, channels_, rng.uniform_open(), driver_);
        } catch (const DarkStateError&) {
            throw DarkStateError(t_);
        }
        x_ = apply_jump(x_, channels_[ch], driver_);
        jumps_.push_back({t_, ch});
        eta_ = rng.uniform_open();
    }
}

namespace {

void check_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw PreconditionError("trajectory: empty time grid");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k]) || (k > 0 && grid[k] < grid[k - 1])) {
            throw PreconditionError("trajectory: time grid must be finite and ordered");
        }
    }
}

TrajectoryRecord zero_record(std::size_t n, Eigen::Index dim, std::vector<JumpEvent> jumps) {
    TrajectoryRecord rec;
    rec.jumps = std::move(jumps);
    rec.snapshots.assign(n, StateBlock::Zero(dim, 2));
    rec.weight = 0.0;
    rec.status = TrajectoryStatus::zero_weight;
    return rec;
}

}  // namespace

TrajectoryEngine::TrajectoryEngine(const LindbladModel& model, const StepControl& ctrl)
    : model_(model), ctrl_(ctrl), heff_(model) {
    ctrl_.validate();
}

TrajectoryRecord TrajectoryEngine::run(const StateBlock& initial, double weight,
                                       std::span<const double> grid, RngStream& rng) const {
    check_grid(grid);
    if (initial.rows() != model_.dim() || initial.cols() < 1) {
        throw DimensionError("trajectory: initial state does not match the model dimension");
    }
    if (std::abs(driver_norm2(initial, NormDriver::joint) - 1.0) > 1e-10) {
        throw PreconditionError("trajectory: initial state must be normalized");
    }
    TrajectoryRecord rec;
    rec.weight = weight;
    JumpProcess proc(heff_, model_.channels(), ctrl_);
    try {
        proc.restart(grid.front(), initial, NormDriver::joint, rng);
        rec.snapshots.reserve(grid.size());
        for (double t : grid) {
            proc.advance_to(t, rng);
            rec.snapshots.push_back(proc.normalized());
        }
    } catch (const DarkStateError&) {
        rec.status = TrajectoryStatus::failed;
    } catch (const NumericalBlowUp& e) {
        throw TrajectoryError(rng.stream_index(), e.what());
    }
    rec.jumps = proc.jumps();
    return rec;
}

TrajectoryRecord TrajectoryEngine::run_kick(const StateVector& phi0, double t0,
                                            const FGSchedule& schedule, std::span<const double> grid,
                                            RngStream& rng, KickMode mode) const {
    check_grid(grid);
    const Eigen::Index n = model_.dim();
    if (phi0.size() != n) {
        throw DimensionError("trajectory: initial state does not match the model dimension");
    }
    if (std::abs(phi0.squaredNorm() - 1.0) > 1e-10) {
        throw PreconditionError("trajectory: initial state must be normalized");
    }
    double last = t0;
    for (const auto& e : schedule.entries) {
        if (e.time < last) {
            throw PreconditionError("trajectory: schedule precedes t0 or is unordered");
        }
        if (e.upper.rows() != n || e.lower.rows() != n) {
            throw DimensionError("trajectory: schedule operator has wrong shape");
        }
        last = e.time;
    }
    if (grid.front() < last) {
        throw PreconditionError("trajectory: grid times must not precede the last insertion");
    }

    TrajectoryRecord rec;
    JumpProcess proc(heff_, model_.channels(), ctrl_);
    try {
        proc.restart(t0, StateBlock(phi0), NormDriver::joint, rng);
        double weight = 1.0;
        for (std::size_t l = 0; l < schedule.entries.size(); ++l) {
            const auto& entry = schedule.entries[l];
            proc.advance_to(entry.time, rng);
            const StateBlock cur = proc.normalized();
            StateVector up = entry.upper * cur.col(0);
            StateVector lo = entry.lower * (l == 0 ? cur.col(0) : cur.col(1));
            if (l == 0 && mode.kind() == KickMode::Kind::epsilon) {
                lo *= mode.eps();
            }
            StateBlock next(n, 2);
            NormDriver driver = NormDriver::joint;
            if (mode.kind() == KickMode::Kind::limit) {
                const double n2 = up.squaredNorm();
                if (!(n2 > 0.0)) {
                    return zero_record(grid.size(), n, proc.jumps());
                }
                const double scale = 1.0 / std::sqrt(n2);
                next.col(0) = up * scale;
                next.col(1) = lo * scale;
                weight *= n2;
                driver = NormDriver::leading;
            } else {
                PairedState p;
                try {
                    p = pair(up, lo);
                } catch (const ZeroWeightInsertion&) {
                    return zero_record(grid.size(), n, proc.jumps());
                }
                next = p.block();
                weight *= p.weight();
            }
            proc.restart(entry.time, next, driver, rng);
        }
        rec.weight = weight;
        rec.snapshots.reserve(grid.size());
        for (double t : grid) {
            proc.advance_to(t, rng);
            StateBlock snap = proc.normalized();
            if (snap.cols() == 1) {
                // No insertion: the pair is (phi, phi) with unit weight.
                StateBlock both(n, 2);
                both.col(0) = snap.col(0);
                both.col(1) = snap.col(0);
                snap = std::move(both);
            }
            rec.snapshots.push_back(std::move(snap));
        }
    } catch (const DarkStateError&) {
        rec.status = TrajectoryStatus::failed;
        rec.snapshots.clear();
    } catch (const NumericalBlowUp& e) {
        throw TrajectoryError(rng.stream_index(), e.what());
    }
    rec.jumps = proc.jumps();
    return rec;
}

TrajectoryRecord run_trajectory(const LindbladModel& model, const StateVector& psi0,
                                std::span<const double> grid, RngStream& rng,
                                const StepControl& ctrl) {
    return TrajectoryEngine(model, ctrl).run(StateBlock(psi0), 1.0, grid, rng);
}

TrajectoryRecord run_trajectory(const LindbladModel& model, const PairedState& theta0,
                                std::span<const double> grid, RngStream& rng,
                                const StepControl& ctrl) {
    return TrajectoryEngine(model, ctrl).run(theta0.block(), theta0.weight(), grid, rng);
}

TrajectoryRecord run_trajectory_kick(const LindbladModel& model, const StateVector& phi0, double t0,
                                     const FGSchedule& schedule, std::span<const double> grid,
                                     RngStream& rng, KickMode mode, const StepControl& ctrl) {
    return TrajectoryEngine(model, ctrl).run_kick(phi0, t0, schedule, grid, rng, mode);
}

}  // namespace qjump
