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

#include "qjump/hilbert.hpp"

#include <cmath>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

StateVector basis_state(Eigen::Index dim, Eigen::Index index) {
    if (dim <= 0 || index < 0 || index >= dim) {
        throw DimensionError("basis_state: index out of range");
    }
    StateVector v = StateVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

Complex inner(const StateVector& u, const StateVector& v) {
    require_same_dim(u.size(), v.size(), "inner");
    return u.dot(v);  // Eigen conjugates the first argument
}

Complex matrix_element(const StateVector& u, const Operator& a, const StateVector& v) {
    require_same_dim(a.rows(), a.cols(), "matrix_element (operator not square)");
    require_same_dim(u.size(), a.rows(), "matrix_element");
    require_same_dim(v.size(), a.cols(), "matrix_element");
    return u.dot(a * v);
}

double hermiticity_error(const Operator& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("hermiticity_error: operator not square");
    }
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& m, double tol) { return hermiticity_error(m) <= tol; }

bool all_finite(const StateBlock& m) { return m.allFinite(); }

PairedState::PairedState(StateVector upper, StateVector lower, double weight)
    : upper_(std::move(upper)), lower_(std::move(lower)), weight_(weight) {}

double PairedState::joint_norm() const {
    return std::sqrt(upper_.squaredNorm() + lower_.squaredNorm());
}

StateBlock PairedState::block() const {
    StateBlock b(upper_.size(), 2);
    b.col(0) = upper_;
    b.col(1) = lower_;
    return b;
}

PairedState PairedState::from_block(const StateBlock& block, double weight) {
    if (block.cols() != 2) {
        throw DimensionError("PairedState::from_block: expected two columns");
    }
    if (!(weight >= 0.0)) {
        throw PreconditionError("PairedState::from_block: negative weight");
    }
    return PairedState(block.col(0), block.col(1), weight);
}

PairedState pair(const StateVector& phi, const StateVector& psi) {
    require_same_dim(phi.size(), psi.size(), "pair");
    const double norm2 = phi.squaredNorm() + psi.squaredNorm();
    if (!(norm2 > 0.0)) {
        throw ZeroWeightInsertion();
    }
    const double scale = 1.0 / std::sqrt(norm2);
    return PairedState(phi * scale, psi * scale, norm2);
}

SplitState split(const PairedState& theta) {
    return SplitState{theta.upper(), theta.lower(), theta.weight()};
}

}  // namespace qjump
