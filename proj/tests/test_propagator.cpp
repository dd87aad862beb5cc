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
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qjump/errors.hpp"
#include "qjump/propagator.hpp"

using namespace qjump;

namespace {

StateBlock column(const StateVector& v) { return StateBlock(v); }

double norm2(const StateBlock& b) { return b.squaredNorm(); }

}  // namespace

TEST_CASE("unitary evolution preserves the norm") {
    const LindbladModel m(2, {{two_level::sigma_x(), Coefficient::constant(2.0)}}, {});
    const EffectiveHamiltonian heff(m);
    const StateBlock out = evolve(column(two_level::excited()), heff, 0.0, 5.0, StepControl{});
    CHECK(std::abs(norm2(out) - 1.0) < 1e-8);
}

TEST_CASE("pure decay halves the excited population at ln 2") {
    const LindbladModel m = preset_two_level(0.0, 1.0);
    const EffectiveHamiltonian heff(m);
    const StateBlock out =
        evolve(column(two_level::excited()), heff, 0.0, std::numbers::ln2, StepControl{});
    CHECK(std::abs(norm2(out) - 0.5) < 1e-6);
}

TEST_CASE("evolution matches the matrix exponential") {
    const LindbladModel m = preset_two_level(3.0, 1.0, 0.4);
    const EffectiveHamiltonian heff(m);
    StateVector psi(2);
    psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const double t = 0.1;
    const Operator gen = Complex(0.0, -t) * effective_hamiltonian(m, 0.0);
    const StateVector exact = gen.exp() * psi;
    const StateBlock out = evolve(column(psi), heff, 0.0, t, StepControl{});
    CHECK((out.col(0) - exact).norm() < 1e-7);
}

TEST_CASE("fourth-order convergence") {
    const LindbladModel m = preset_two_level(3.0, 1.0, 0.4);
    const EffectiveHamiltonian heff(m);
    const StateVector psi = two_level::excited();
    const double t = 1.0;
    const StateVector exact = (Complex(0.0, -t) * effective_hamiltonian(m, 0.0)).exp() * psi;
    StepControl coarse{0.1, 1e-6, 10.0};
    StepControl fine{0.05, 1e-6, 10.0};
    const double e1 = (evolve(column(psi), heff, 0.0, t, coarse).col(0) - exact).norm();
    const double e2 = (evolve(column(psi), heff, 0.0, t, fine).col(0) - exact).norm();
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("norm is non-increasing under the effective hamiltonian") {
    const LindbladModel m = preset_two_level(5.0, 1.0);
    const EffectiveHamiltonian heff(m);
    StateBlock x = column(two_level::ground());
    double prev = norm2(x);
    for (int k = 1; k <= 100; ++k) {
        x = evolve(x, heff, 0.05 * (k - 1), 0.05 * k, StepControl{});
        const double now = norm2(x);
        CHECK(now <= prev + 1e-12);
        prev = now;
    }
}

TEST_CASE("jump time search") {
    const LindbladModel m = preset_two_level(0.0, 1.0);
    const EffectiveHamiltonian heff(m);
    const StepControl ctrl{};

    const JumpSearch half = find_jump_time(column(two_level::excited()), heff, 0.0, 10.0, 0.5, ctrl);
    REQUIRE(half.jumped);
    CHECK(std::abs(half.time - std::numbers::ln2) <= ctrl.jump_tol + 1e-9);
    CHECK(norm2(half.state) < 0.5 + 1e-6);

    const JumpSearch immediate =
        find_jump_time(column(two_level::excited()), heff, 2.0, 10.0, 1.0, ctrl);
    CHECK(immediate.jumped);
    CHECK(immediate.time == 2.0);

    const JumpSearch none = find_jump_time(column(two_level::excited()), heff, 0.0, 0.1, 0.5, ctrl);
    CHECK_FALSE(none.jumped);
    CHECK(none.time == 0.1);

    const LindbladModel closed(2, {{two_level::sigma_x(), Coefficient::constant(1.0)}}, {});
    const EffectiveHamiltonian heff_closed(closed);
    const JumpSearch never =
        find_jump_time(column(two_level::excited()), heff_closed, 0.0, 20.0, 0.5, ctrl);
    CHECK_FALSE(never.jumped);

    CHECK_THROWS_AS(find_jump_time(column(two_level::excited()), heff, 0.0, 1.0, 0.0, ctrl),
                    PreconditionError);
    CHECK_THROWS_AS(find_jump_time(column(two_level::excited()), heff, 0.0, 1.0, 1.5, ctrl),
                    PreconditionError);
}

TEST_CASE("leading driver ignores the second column") {
    const LindbladModel m = preset_two_level(0.0, 1.0);
    const EffectiveHamiltonian heff(m);
    StateBlock pair(2, 2);
    pair.col(0) = two_level::excited();
    pair.col(1) = two_level::ground();
    const JumpSearch lead = find_jump_time(pair, heff, 0.0, 10.0, 0.5, StepControl{},
                                           NormDriver::leading);
    REQUIRE(lead.jumped);
    CHECK(std::abs(lead.time - std::numbers::ln2) < 2e-6);
}

TEST_CASE("step control validation") {
    CHECK_THROWS_AS((StepControl{0.0, 1e-6, 0.1}).validate(), PreconditionError);
    CHECK_THROWS_AS((StepControl{0.01, 0.1, 0.1}).validate(), PreconditionError);
    CHECK_THROWS_AS((StepControl{0.01, 1e-6, -1.0}).validate(), PreconditionError);
    CHECK_NOTHROW(StepControl{}.validate());
}
