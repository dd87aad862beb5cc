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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qjump {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

// Columns are the components that share one jump process: a single state
// has one column, a doubled-space pair (upper, lower) has two.
using StateBlock = Eigen::MatrixXcd;

inline constexpr Complex I_UNIT{0.0, 1.0};

StateVector basis_state(Eigen::Index dim, Eigen::Index index);

Complex inner(const StateVector& u, const StateVector& v);
Complex matrix_element(const StateVector& u, const Operator& a, const StateVector& v);

double hermiticity_error(const Operator& m);
bool is_hermitian(const Operator& m, double tol = 1e-12);
bool all_finite(const StateBlock& m);

// Element (upper, lower) of the doubled space together with the norm^2 factor
// that was divided out when it was formed.
class PairedState {
public:
    PairedState() = default;

    const StateVector& upper() const { return upper_; }
    const StateVector& lower() const { return lower_; }
    double weight() const { return weight_; }
    Eigen::Index dim() const { return upper_.size(); }

    double joint_norm() const;

    StateBlock block() const;
    static PairedState from_block(const StateBlock& block, double weight);

private:
    friend PairedState pair(const StateVector& phi, const StateVector& psi);
    PairedState(StateVector upper, StateVector lower, double weight);

    StateVector upper_;
    StateVector lower_;
    double weight_ = 0.0;
};

// Normalizes (phi, psi) jointly; weight is the removed squared norm.
// Throws ZeroWeightInsertion when both components vanish.
PairedState pair(const StateVector& phi, const StateVector& psi);

struct SplitState {
    StateVector upper;
    StateVector lower;
    double weight;
};

SplitState split(const PairedState& theta);

}  // namespace qjump
