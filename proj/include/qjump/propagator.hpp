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

#include "qjump/hilbert.hpp"
#include "qjump/model.hpp"

namespace qjump {

struct StepControl {
    double dt_max = 0.01;
    double jump_tol = 1e-6;
    double safety = 0.1;

    // Throws PreconditionError unless all fields are positive and jump_tol < dt_max.
    void validate() const;
};

// Which columns of a StateBlock define the norm that drives the jump process.
// `joint` uses every column (single and doubled space); `leading` uses only
// column 0, so the remaining columns are carried along with the leading one.
enum class NormDriver { joint, leading };

double driver_norm2(const StateBlock& state, NormDriver driver);

struct JumpOutcome {
    bool jumped = false;
    double time = 0.0;
};

struct JumpSearch {
    bool jumped = false;
    double time = 0.0;
    StateBlock state;  // unnormalized
};

// Fixed-step classical RK4 for i dx/ds = H_eff(s) x with preallocated buffers.
// Columns are propagated independently with the same arithmetic, so a column
// evolves bit-identically whether or not it is stacked with others.
class Rk4Stepper {
public:
    Rk4Stepper(const EffectiveHamiltonian& heff, const StepControl& ctrl);

    // min(dt_max, safety / max|H_eff|)
    double max_step() const { return h_max_; }
    const StepControl& control() const { return ctrl_; }

    void step(StateBlock& x, double t, double h);

    // Uniform substeps of at most max_step(); throws NumericalBlowUp.
    void evolve(StateBlock& x, double t0, double t1);

    // Evolves from t_start toward t_end and stops at the first time the driver
    // norm^2 drops below eta, refined by bisection to a bracket narrower than
    // jump_tol. On return x holds the state at the returned time.
    JumpOutcome advance_until(StateBlock& x, double t_start, double t_end, double eta,
                             NormDriver driver);

private:
    void generator_at(double t);
    void apply(const StateBlock& in, StateBlock& out) const;

    const EffectiveHamiltonian& heff_;
    StepControl ctrl_;
    double h_max_;
    Operator gen_;  // -i H_eff(t)
    Operator scratch_;
    StateBlock k1_, k2_, k3_, k4_, tmp_, prev_, probe_;
};

// Unnormalized state at t1; the norm decay is left in place.
StateBlock evolve(const StateBlock& state, const EffectiveHamiltonian& heff, double t0, double t1,
                  const StepControl& ctrl);

// Precondition: 0 < eta <= driver norm^2 of `state`. When no jump happens
// before t_end the result has jumped == false and holds the state at t_end.
JumpSearch find_jump_time(const StateBlock& state, const EffectiveHamiltonian& heff,
                          double t_start, double t_end, double eta, const StepControl& ctrl,
                          NormDriver driver = NormDriver::joint);

}  // namespace qjump
