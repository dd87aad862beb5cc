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

#include <utility>
#include <variant>
#include <vector>

#include "qjump/hilbert.hpp"

namespace qjump {

struct ConstantCoeff {
    double value = 1.0;
    bool operator==(const ConstantCoeff&) const = default;
};

// amplitude * cos(angular_frequency * t + phase)
struct SinusoidCoeff {
    double amplitude = 1.0;
    double angular_frequency = 0.0;
    double phase = 0.0;
    bool operator==(const SinusoidCoeff&) const = default;
};

// Entries (t_k, v_k) with strictly increasing t_k. The coefficient is v_k on
// [t_k, t_{k+1}); the table covers [t_0, t_last] and nothing else.
struct PiecewiseCoeff {
    std::vector<std::pair<double, double>> table;
    bool operator==(const PiecewiseCoeff&) const = default;
};

class Coefficient {
public:
    using Spec = std::variant<ConstantCoeff, SinusoidCoeff, PiecewiseCoeff>;

    Coefficient() : spec_(ConstantCoeff{}) {}
    Coefficient(Spec spec);  // NOLINT(google-explicit-constructor)

    static Coefficient constant(double value) { return Coefficient(ConstantCoeff{value}); }

    double operator()(double t) const;
    double max_abs() const;
    bool is_constant() const { return std::holds_alternative<ConstantCoeff>(spec_); }
    const Spec& spec() const { return spec_; }

    bool operator==(const Coefficient&) const = default;

private:
    Spec spec_;
};

struct HamiltonianTerm {
    Operator base;
    Coefficient coeff;
};

struct DecayChannel {
    double rate = 0.0;
    Operator jump_op;
};

// Validated on construction: consistent dimensions, hermitian terms, rates >= 0.
class LindbladModel {
public:
    LindbladModel(Eigen::Index dim, std::vector<HamiltonianTerm> terms,
                  std::vector<DecayChannel> channels);

    Eigen::Index dim() const { return dim_; }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }
    const std::vector<DecayChannel>& channels() const { return channels_; }
    bool time_independent() const;

private:
    Eigen::Index dim_;
    std::vector<HamiltonianTerm> terms_;
    std::vector<DecayChannel> channels_;
};

Operator hamiltonian_at(const LindbladModel& model, double t);

// H(t) - (i/2) sum_k rate_k J_k^dagger J_k
Operator effective_hamiltonian(const LindbladModel& model, double t);

// diag(M, M)
Operator lift_operator(const Operator& m);
StateVector lift_state(const StateVector& upper, const StateVector& lower);
LindbladModel lift_to_doubled(const LindbladModel& model);

// Basis convention for two-level systems: index 0 = |g>, index 1 = |e>.
namespace two_level {
StateVector ground();
StateVector excited();
Operator sigma_minus();
Operator sigma_plus();
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator excited_projector();
Operator identity();
}  // namespace two_level

// Rotating-frame driven two-level atom: H = (rabi/2)(s+ + s-) - detuning |e><e|,
// one channel (decay_rate, s-).
LindbladModel preset_two_level(double rabi, double decay_rate, double detuning = 0.0);

// Caches the dissipative part and the constant sum so trajectory inner loops
// evaluate H_eff(t) without allocating.
class EffectiveHamiltonian {
public:
    explicit EffectiveHamiltonian(const LindbladModel& model);

    Eigen::Index dim() const { return dim_; }
    bool time_independent() const { return time_dependent_.empty(); }

    // Valid only when time_independent().
    const Operator& constant() const { return constant_; }
    void evaluate(double t, Operator& out) const;

    // Upper bound of max|H_eff(t)_ij| over all t.
    double max_entry_bound() const { return bound_; }

private:
    Eigen::Index dim_;
    Operator constant_;
    std::vector<HamiltonianTerm> time_dependent_;
    double bound_ = 0.0;
};

}  // namespace qjump
