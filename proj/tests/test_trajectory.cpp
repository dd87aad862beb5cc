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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qjump/ensemble.hpp"
#include "qjump/errors.hpp"
#include "qjump/trajectory.hpp"

using namespace qjump;

namespace {

StateVector plus_state() {
    return (two_level::ground() + two_level::excited()) / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("closed system never jumps") {
    const LindbladModel m(2, {{two_level::sigma_x(), Coefficient::constant(1.0)}}, {});
    const std::vector<double> grid{0.0, 1.0, 2.0};
    RngStream rng(1, 0);
    const TrajectoryRecord rec = run_trajectory(m, two_level::excited(), grid, rng, StepControl{});
    CHECK(rec.jumps.empty());
    CHECK(rec.status == TrajectoryStatus::completed);
    REQUIRE(rec.snapshots.size() == 3);
    // exp(-i t sx)|e>: population of |e> is cos^2 t
    CHECK(std::abs(std::norm(rec.snapshots[2](1, 0)) - std::pow(std::cos(2.0), 2)) < 1e-8);
}

TEST_CASE("pure decay jumps exactly once with exponential waiting time") {
    const LindbladModel m = preset_two_level(0.0, 1.0);
    const std::vector<double> grid{0.0, 8.0};
    const TrajectoryEngine engine(m, StepControl{});
    std::vector<double> times;
    int no_jump = 0;
    for (std::uint64_t s = 0; s < 40000; ++s) {
        RngStream rng(5, s);
        const TrajectoryRecord rec = engine.run(StateBlock(two_level::excited()), 1.0, grid, rng);
        REQUIRE(rec.jumps.size() <= 1);
        if (rec.jumps.empty()) {
            ++no_jump;
            continue;
        }
        CHECK(rec.jumps[0].channel == 0);
        times.push_back(rec.jumps[0].time);
        CHECK(std::abs(rec.snapshots.back()(0, 0)) == doctest::Approx(1.0));
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    CHECK(std::abs(times[times.size() / 2] - std::numbers::ln2) < 0.015);
    // P(no jump by t = 8) = e^-8
    CHECK(no_jump < 40);
}

TEST_CASE("doubled run of a symmetric pair keeps both halves equal") {
    const LindbladModel m = preset_two_level(3.0, 1.0);
    const PairedState theta = pair(plus_state(), plus_state());
    CHECK(theta.weight() == doctest::Approx(2.0));
    const std::vector<double> grid{0.0, 0.5, 1.0, 3.0};
    RngStream rng(2, 4);
    const TrajectoryRecord rec = run_trajectory(m, theta, grid, rng, StepControl{});
    CHECK(rec.weight == theta.weight());
    for (const auto& s : rec.snapshots) {
        CHECK((s.col(0) - s.col(1)).norm() == 0.0);
        CHECK(s.squaredNorm() == doctest::Approx(1.0));
    }
}

TEST_CASE("channel selection follows the rates") {
    const std::vector<DecayChannel> equal{{1.0, two_level::sigma_minus()},
                                          {1.0, two_level::sigma_minus()}};
    const std::vector<DecayChannel> skew{{3.0, two_level::sigma_minus()},
                                         {1.0, two_level::sigma_minus()}};
    const StateBlock e(two_level::excited());
    RngStream rng(8, 0);
    const int n = 100000;
    int first_equal = 0;
    int first_skew = 0;
    for (int k = 0; k < n; ++k) {
        first_equal += select_channel(e, equal, rng.uniform_open()) == 0;
        first_skew += select_channel(e, skew, rng.uniform_open()) == 0;
    }
    CHECK(std::abs(first_equal / double(n) - 0.5) < 0.01);
    CHECK(std::abs(first_skew / double(n) - 0.75) < 0.01);

    CHECK_THROWS_AS(select_channel(StateBlock(two_level::ground()), equal, 0.3), DarkStateError);
    const std::vector<DecayChannel> dead{{0.0, two_level::sigma_minus()},
                                         {1.0, two_level::sigma_minus()}};
    CHECK(select_channel(e, dead, 1e-12) == 1);
}

TEST_CASE("jumps renormalize the image") {
    const DecayChannel ch{2.0, two_level::sigma_minus()};
    const StateBlock out = apply_jump(StateBlock(plus_state()), ch);
    CHECK((out.col(0) - two_level::ground()).norm() < 1e-15);
    CHECK_THROWS_AS(apply_jump(StateBlock(two_level::ground()), ch), Error);

    StateBlock pairblk(2, 2);
    pairblk.col(0) = two_level::excited();
    pairblk.col(1) = 0.5 * two_level::excited();
    const StateBlock lead = apply_jump(pairblk, ch, NormDriver::leading);
    CHECK(lead.col(0).norm() == doctest::Approx(1.0));
    CHECK(lead.col(1).norm() == doctest::Approx(0.5));
}

TEST_CASE("limit kick slaves the pair to the single-space trajectory") {
    const LindbladModel m = preset_two_level(2.0, 1.0, 0.3);
    CorrelationSpec spec;
    spec.a = {{two_level::identity(), 0.0}};
    spec.b = {{two_level::sigma_minus(), 0.0}};
    spec.initial = plus_state();
    const FGSchedule sched = build_fg_schedule(spec);
    const std::vector<double> grid{0.0, 0.7, 2.0, 4.0};
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream a(3, s);
        const TrajectoryRecord kick =
            run_trajectory_kick(m, plus_state(), 0.0, sched, grid, a, KickMode::limit(), StepControl{});
        RngStream b(3, s);
        // The kicked run draws one threshold before the insertion; renormalizing
        // by a norm of 1 up to rounding leaves ulp-level differences.
        b.uniform_open();
        const TrajectoryRecord single = run_trajectory(m, plus_state(), grid, b, StepControl{});
        REQUIRE(kick.jumps == single.jumps);
        CHECK(kick.weight == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK((kick.snapshots[k].col(0) - single.snapshots[k].col(0)).norm() < 1e-14);
        }
    }
}

TEST_CASE("identity insertion reproduces the plain trajectory") {
    const LindbladModel m = preset_two_level(2.0, 1.0);
    CorrelationSpec spec;
    spec.a = {{two_level::identity(), 0.5}};
    spec.b = {{two_level::identity(), 0.5}};
    spec.initial = two_level::ground();
    const FGSchedule sched = build_fg_schedule(spec);
    const std::vector<double> grid{0.5, 1.0, 3.0};
    RngStream rng(4, 9);
    const TrajectoryRecord rec = run_trajectory_kick(m, two_level::ground(), 0.0, sched, grid, rng,
                                                     KickMode::doubled(), StepControl{});
    CHECK(rec.weight == doctest::Approx(2.0));
    for (const auto& s : rec.snapshots) CHECK((s.col(0) - s.col(1)).norm() < 1e-14);
}

TEST_CASE("zero-weight insertion contributes nothing") {
    const LindbladModel m = preset_two_level(0.0, 1.0);
    CorrelationSpec spec;
    spec.a = {{two_level::sigma_plus(), 0.0}};
    spec.b = {{two_level::sigma_minus(), 0.0}};
    spec.initial = two_level::ground();
    const FGSchedule sched = build_fg_schedule(spec);
    const std::vector<double> grid{0.0, 1.0};
    RngStream rng(1, 1);
    const TrajectoryRecord rec = run_trajectory_kick(m, two_level::ground(), 0.0, sched, grid, rng,
                                                     KickMode::doubled(), StepControl{});
    CHECK(rec.status == TrajectoryStatus::zero_weight);
    CHECK(rec.weight == 0.0);
}

TEST_CASE("property: paired block evolves like the lifted single-column state") {
    const LindbladModel m = preset_two_level(4.0, 1.0, -0.5);
    const LindbladModel lifted = lift_to_doubled(m);
    StateVector phi(2), psi(2);
    phi << Complex(0.3, 0.2), Complex(-0.1, 0.9);
    psi << Complex(0.0, -0.7), Complex(0.4, 0.1);
    const PairedState theta = pair(phi, psi);
    const std::vector<double> grid{0.0, 0.5, 1.5, 3.0};
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream a(6, s);
        RngStream b(6, s);
        const TrajectoryRecord blk = run_trajectory(m, theta, grid, a, StepControl{});
        const StateVector flat = lift_state(theta.upper(), theta.lower());
        const TrajectoryRecord big =
            TrajectoryEngine(lifted, StepControl{}).run(StateBlock(flat), 1.0, grid, b);
        REQUIRE(blk.jumps.size() == big.jumps.size());
        for (std::size_t j = 0; j < blk.jumps.size(); ++j) {
            CHECK(std::abs(blk.jumps[j].time - big.jumps[j].time) < 1e-9);
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK((blk.snapshots[k].col(0) - big.snapshots[k].col(0).head(2)).norm() < 1e-10);
            CHECK((blk.snapshots[k].col(1) - big.snapshots[k].col(0).tail(2)).norm() < 1e-10);
        }
    }
}

TEST_CASE("ensemble results do not depend on the thread count") {
    const LindbladModel m = preset_two_level(3.0, 1.0);
    const std::vector<double> grid{0.0, 1.0, 2.0};
    const TrajectoryEngine engine(m, StepControl{});
    const SampleFn sample = [&](RngStream& rng, std::span<Complex> out) {
        const TrajectoryRecord rec = engine.run(StateBlock(two_level::ground()), 1.0, grid, rng);
        for (std::size_t k = 0; k < grid.size(); ++k) out[k] = std::norm(rec.snapshots[k](1, 0));
        return rec.status;
    };
    EnsembleOptions serial{600, 21, 1};
    EnsembleOptions parallel{600, 21, 4};
    const EnsembleResult a = run_ensemble(grid.size(), serial, sample);
    const EnsembleResult b = run_ensemble(grid.size(), parallel, sample);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(a.stats.at(k).mean() == b.stats.at(k).mean());
        CHECK(a.stats.at(k).stderr() == b.stats.at(k).stderr());
    }
    CHECK(a.stats.count() == 600);
}

TEST_CASE("trajectory preconditions") {
    const LindbladModel m = preset_two_level(1.0, 1.0);
    RngStream rng(1, 0);
    const std::vector<double> grid{0.0, 1.0};
    const std::vector<double> backwards{1.0, 0.0};
    CHECK_THROWS_AS(run_trajectory(m, StateVector(2 * two_level::ground()), grid, rng, StepControl{}),
                    PreconditionError);
    CHECK_THROWS_AS(run_trajectory(m, two_level::ground(), backwards, rng, StepControl{}),
                    PreconditionError);
    CHECK_THROWS_AS(KickMode::epsilon(0.0), PreconditionError);
}
