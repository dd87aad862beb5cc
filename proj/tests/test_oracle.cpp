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

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qjump/errors.hpp"
#include "qjump/oracle.hpp"

using namespace qjump;

namespace {

DensityMatrix projector(const StateVector& v) { return v * v.adjoint(); }

StateVector plus_state() {
    return (two_level::ground() + two_level::excited()) / std::sqrt(2.0);
}

// Resonant two-level steady-state excited population.
double rho_ee(double rabi, double gamma) {
    return (rabi * rabi / 4) / (gamma * gamma / 4 + rabi * rabi / 2);
}

}  // namespace

TEST_CASE("liouvillian on basis operators") {
    const LindbladModel decay = preset_two_level(0.0, 1.0);
    const DensityMatrix out = liouvillian_apply(decay, 0.0, projector(two_level::excited()));
    DensityMatrix expected = DensityMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    CHECK((out - expected).norm() < 1e-15);

    const DensityMatrix coh = two_level::ground() * two_level::excited().adjoint();
    CHECK((liouvillian_apply(decay, 0.0, coh) + 0.5 * coh).norm() < 1e-15);

    const LindbladModel driven = preset_two_level(2.0, 0.0);
    const DensityMatrix g = projector(two_level::ground());
    // -i[H, rho] with H = sx: off-diagonal -i, +i
    const DensityMatrix d = liouvillian_apply(driven, 0.0, g);
    CHECK(std::abs(d(1, 0) - Complex(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(d(0, 1) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(d(0, 0)) < 1e-15);
}

TEST_CASE("property: liouvillian output is traceless and hermiticity preserving") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> nd;
    const LindbladModel m = preset_two_level(3.0, 1.2, 0.7);
    for (int trial = 0; trial < 50; ++trial) {
        Operator x(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) x(i, j) = Complex(nd(gen), nd(gen));
        const DensityMatrix rho = x * x.adjoint();
        const DensityMatrix out = liouvillian_apply(m, 0.0, rho);
        CHECK(std::abs(out.trace()) < 1e-13);
        CHECK(hermiticity_error(out) < 1e-13);
        const Eigen::VectorXcd v = liouvillian_matrix(m, 0.0) * vectorize(rho);
        CHECK((unvectorize(v, 2) - out).norm() < 1e-13);
    }
}

TEST_CASE("master equation integration") {
    const LindbladModel decay = preset_two_level(0.0, 1.0);
    for (double t : {0.5, 1.0, 3.0}) {
        const DensityMatrix rho = integrate_master(decay, projector(two_level::excited()), 0.0, t);
        CHECK(std::abs(rho(1, 1).real() - std::exp(-t)) < 1e-8);
    }

    const LindbladModel m = preset_two_level(10.0, 1.0);
    const DensityMatrix rho = integrate_master(m, projector(two_level::ground()), 0.0, 10.0);
    CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-10);
    CHECK(hermiticity_error(rho) < 1e-10);

    const Propagator p = propagator(m, 0.0, 0.4);
    const Propagator q = propagator_expm(m, 0.0, 0.4);
    CHECK((p.matrix - q.matrix).cwiseAbs().maxCoeff() < 1e-7);
    const DensityMatrix r0 = projector(plus_state());
    CHECK((p.apply(r0) - integrate_master(m, r0, 0.0, 0.4)).norm() < 1e-10);
}

TEST_CASE("property: propagator preserves the trace of any operator") {
    const LindbladModel m = preset_two_level(2.5, 0.8, 0.3);
    const Propagator p = propagator_expm(m, 0.0, 1.3);
    // Left action of vec(I)^dagger is the identity: trace preservation.
    const Eigen::VectorXcd id = vectorize(Operator::Identity(2, 2));
    const Eigen::RowVectorXcd left = id.adjoint() * p.matrix;
    CHECK((left - id.adjoint()).norm() < 1e-12);
}

TEST_CASE("heisenberg element oracle") {
    const LindbladModel decay = preset_two_level(0.0, 1.0);
    const std::vector<double> grid{0.0, 1.0, 2.0};
    const auto pe = heisenberg_oracle(decay, two_level::excited(), two_level::excited(),
                                      two_level::excited_projector(), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(pe[k] - std::exp(-grid[k])) < 1e-8);
    }
    const auto off = heisenberg_oracle(decay, two_level::excited(), two_level::ground(),
                                       two_level::sigma_minus(), grid);
    // rho = |g><e| decays at rate 1/2; Tr(sm |g><e|) = 0 and Tr(sp ...) = e^{-t/2}
    for (auto v : off) CHECK(std::abs(v) < 1e-12);
    const auto offp = heisenberg_oracle(decay, two_level::excited(), two_level::ground(),
                                        two_level::sigma_plus(), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(offp[k] - std::exp(-grid[k] / 2)) < 1e-8);
    }
}

TEST_CASE("property: heisenberg oracle is linear and matches the lifted model") {
    const LindbladModel m = preset_two_level(3.0, 1.0, -0.4);
    const LindbladModel lifted = lift_to_doubled(m);
    StateVector phi(2), psi(2), chi(2);
    phi << Complex(0.6, 0.0), Complex(0.0, 0.8);
    psi << Complex(0.2, 0.1), Complex(-0.5, 0.3);
    chi << Complex(0.0, 1.0), Complex(0.3, -0.2);
    const Operator a = two_level::sigma_x() + 0.5 * two_level::sigma_minus();
    const std::vector<double> grid{0.0, 0.5, 2.0};

    const auto base = heisenberg_oracle(m, phi, psi, a, grid);
    const auto other = heisenberg_oracle(m, phi, chi, a, grid);
    const Complex c(0.7, -1.1);
    const auto combo = heisenberg_oracle(m, phi, StateVector(psi + c * chi), a, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(combo[k] - (base[k] + c * other[k])) < 1e-10);
    }

    const StateVector theta = lift_state(phi, psi);
    const auto rhos = integrate_master_grid(lifted, projector(theta), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Operator block = rhos[k].bottomLeftCorner(2, 2);  // psi phi^dagger block
        CHECK(std::abs((a * block).trace() - base[k]) < 1e-8);
    }
}

TEST_CASE("steady state of the driven two-level system") {
    const LindbladModel m = preset_two_level(10.0, 1.0);
    const DensityMatrix ss = steady_state(m);
    CHECK(std::abs(ss(1, 1).real() - rho_ee(10.0, 1.0)) < 1e-8);
    CHECK(std::abs(ss(1, 1).real() - 0.4975124378) < 1e-8);
    CHECK(liouvillian_apply(m, 0.0, ss).cwiseAbs().maxCoeff() < 1e-9);

    const DensityMatrix ns = steady_state_nullspace(m);
    CHECK((ns - ss).cwiseAbs().maxCoeff() < 1e-8);

    const LindbladModel weak = preset_two_level(0.5, 1.0);
    CHECK(std::abs(steady_state_nullspace(weak)(1, 1).real() - rho_ee(0.5, 1.0)) < 1e-10);
}

TEST_CASE("regression correlation") {
    const LindbladModel decay = preset_two_level(0.0, 1.0);
    CorrelationSpec spec;
    spec.initial = plus_state();
    spec.b = {{two_level::sigma_minus(), 0.0}};
    spec.a = {{two_level::sigma_plus(), 0.0}};
    const std::vector<double> tau{0.0, 1.0, 2.5, 5.0};
    const auto c = regression_correlation(decay, projector(plus_state()), spec, tau);
    for (std::size_t k = 0; k < tau.size(); ++k) {
        CHECK(std::abs(c[k] - 0.5 * std::exp(-tau[k] / 2)) < 1e-8);
    }

    // B = I reduces to an expectation value.
    const LindbladModel m = preset_two_level(4.0, 1.0);
    CorrelationSpec plain;
    plain.initial = two_level::ground();
    plain.b = {{two_level::identity(), 0.0}};
    plain.a = {{two_level::sigma_z(), 0.0}};
    const auto r = regression_correlation(m, projector(two_level::ground()), plain, tau);
    const auto rhos = integrate_master_grid(m, projector(two_level::ground()), tau);
    for (std::size_t k = 0; k < tau.size(); ++k) {
        CHECK(std::abs(r[k] - (two_level::sigma_z() * rhos[k]).trace()) < 1e-10);
    }

    // At zero delay the stationary correlation is the steady-state moment.
    const auto s = stationary_regression(m, two_level::sigma_minus(), two_level::sigma_plus(),
                                         std::vector<double>{0.0});
    CHECK(std::abs(s[0] - rho_ee(4.0, 1.0)) < 1e-8);

    const std::vector<double> early{-0.5};
    spec.b = {{two_level::sigma_minus(), 1.0}};
    CHECK_THROWS_AS(regression_correlation(decay, projector(plus_state()), spec, early),
                    PreconditionError);
}
