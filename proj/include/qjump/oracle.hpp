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

#include "qjump/hilbert.hpp"
#include "qjump/model.hpp"
#include "qjump/schedule.hpp"

namespace qjump {

// Dense density matrices; not required to be physical (|psi><phi| is allowed).
using DensityMatrix = Operator;

struct OracleControl {
    double dt_max = 1e-3;
    double safety = 0.1;
};

// drho/dt = K rho + rho K^dag + sum_k rate_k J_k rho J_k^dag with K = -i H_eff.
class Liouvillian {
public:
    explicit Liouvillian(const LindbladModel& model);

    Eigen::Index dim() const { return dim_; }
    void apply(double t, const DensityMatrix& rho, DensityMatrix& out) const;
    double norm_bound() const { return bound_; }

private:
    Eigen::Index dim_;
    EffectiveHamiltonian heff_;
    std::vector<DecayChannel> channels_;
    double bound_;
    mutable Operator k_;
};

DensityMatrix liouvillian_apply(const LindbladModel& model, double t, const DensityMatrix& rho);

// Fixed-step RK4 of the master equation.
DensityMatrix integrate_master(const LindbladModel& model, const DensityMatrix& rho0, double t0,
                               double t1, const OracleControl& ctrl = {});

// States at every grid time; grid[0] is the start time of rho0.
std::vector<DensityMatrix> integrate_master_grid(const LindbladModel& model,
                                                 const DensityMatrix& rho0,
                                                 std::span<const double> grid,
                                                 const OracleControl& ctrl = {});

// Tr{A V(t, t0) |psi0><phi0|} at every grid time; grid[0] is t0.
std::vector<Complex> heisenberg_oracle(const LindbladModel& model, const StateVector& phi0,
                                       const StateVector& psi0, const Operator& a,
                                       std::span<const double> grid, const OracleControl& ctrl = {});

// Column-major vectorization: vec(X)[i + n*j] = X(i, j).
Eigen::VectorXcd vectorize(const DensityMatrix& rho);
DensityMatrix unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

// Superoperator matrix of L(t) acting on vectorize(rho).
Eigen::MatrixXcd liouvillian_matrix(const LindbladModel& model, double t);

struct Propagator {
    Eigen::MatrixXcd matrix;  // dim^2 x dim^2
    double t0 = 0.0;
    double t1 = 0.0;

    DensityMatrix apply(const DensityMatrix& rho) const;
};

// Columns from integrating each matrix unit.
Propagator propagator(const LindbladModel& model, double t0, double t1,
                      const OracleControl& ctrl = {});
// exp(L (t1 - t0)); time-independent models only.
Propagator propagator_expm(const LindbladModel& model, double t0, double t1);

struct SteadyStateControl {
    double residual_tol = 1e-10;
    double horizon = 2000.0;
    double check_interval = 1.0;
    OracleControl integration{};
};

// Long-time integration from the maximally mixed state until |L rho|_max is
// below residual_tol. Throws ConvergenceError past the horizon.
DensityMatrix steady_state(const LindbladModel& model, const SteadyStateControl& ctrl = {});

// Least-squares solve of L rho = 0 with Tr rho = 1.
DensityMatrix steady_state_nullspace(const LindbladModel& model);

// Quantum regression: from rho_init at spec.t0, B-operators multiply from the
// left and A-operators from the right at their times; the last A is applied at
// each final time and the trace is returned. Same contract for final_grid as
// the stochastic correlation estimator.
std::vector<Complex> regression_correlation(const LindbladModel& model,
                                            const DensityMatrix& rho_init,
                                            const CorrelationSpec& spec,
                                            std::span<const double> final_grid,
                                            const OracleControl& ctrl = {});

// <A(tau) B(0)> in the stationary state.
std::vector<Complex> stationary_regression(const LindbladModel& model, const Operator& b,
                                           const Operator& a, std::span<const double> tau_grid,
                                           const OracleControl& ctrl = {});

}  // namespace qjump
