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

#include "qjump/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

Coefficient::Coefficient(Spec spec) : spec_(std::move(spec)) {
    if (const auto* pw = std::get_if<PiecewiseCoeff>(&spec_)) {
        if (pw->table.empty()) {
            throw PreconditionError("piecewise coefficient: empty table");
        }
        for (std::size_t k = 0; k < pw->table.size(); ++k) {
            if (!std::isfinite(pw->table[k].first) || !std::isfinite(pw->table[k].second)) {
                throw PreconditionError("piecewise coefficient: non-finite entry");
            }
            if (k > 0 && !(pw->table[k].first > pw->table[k - 1].first)) {
                throw PreconditionError("piecewise coefficient: times must be strictly increasing");
            }
        }
    }
}

double Coefficient::operator()(double t) const {
    if (!std::isfinite(t)) {
        throw PreconditionError("coefficient evaluated at non-finite time");
    }
    return std::visit(
        [t](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return c.value;
            } else if constexpr (std::is_same_v<T, SinusoidCoeff>) {
                return c.amplitude * std::cos(c.angular_frequency * t + c.phase);
            } else {
                const auto& tab = c.table;
                if (t < tab.front().first || t > tab.back().first) {
                    throw OutOfRangeError("piecewise coefficient: t=" + std::to_string(t) +
                                          " outside [" + std::to_string(tab.front().first) +
                                          ", " + std::to_string(tab.back().first) + "]");
                }
                auto it = std::upper_bound(
                    tab.begin(), tab.end(), t,
                    [](double x, const std::pair<double, double>& e) { return x < e.first; });
                return std::prev(it)->second;
            }
        },
        spec_);
}

double Coefficient::max_abs() const {
    return std::visit(
        [](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return std::abs(c.value);
            } else if constexpr (std::is_same_v<T, SinusoidCoeff>) {
                return std::abs(c.amplitude);
            } else {
                double m = 0.0;
                for (const auto& e : c.table) m = std::max(m, std::abs(e.second));
                return m;
            }
        },
        spec_);
}

LindbladModel::LindbladModel(Eigen::Index dim, std::vector<HamiltonianTerm> terms,
                             std::vector<DecayChannel> channels)
    : dim_(dim), terms_(std::move(terms)), channels_(std::move(channels)) {
    if (dim_ < 1) {
        throw DimensionError("LindbladModel: dim must be >= 1");
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& base = terms_[k].base;
        if (base.rows() != dim_ || base.cols() != dim_) {
            throw DimensionError("LindbladModel: hamiltonian term " + std::to_string(k) +
                                 " has wrong shape");
        }
        if (!base.allFinite()) {
            throw PreconditionError("LindbladModel: hamiltonian term " + std::to_string(k) +
                                    " not finite");
        }
        if (!is_hermitian(base)) {
            throw PreconditionError("LindbladModel: hamiltonian term " + std::to_string(k) +
                                    " is not hermitian");
        }
    }
    for (std::size_t k = 0; k < channels_.size(); ++k) {
        const auto& ch = channels_[k];
        if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate)) {
            throw PreconditionError("LindbladModel: channel " + std::to_string(k) +
                                    " has negative or non-finite rate");
        }
        if (ch.jump_op.rows() != dim_ || ch.jump_op.cols() != dim_) {
            throw DimensionError("LindbladModel: channel " + std::to_string(k) +
                                 " operator has wrong shape");
        }
        if (!ch.jump_op.allFinite()) {
            throw PreconditionError("LindbladModel: channel " + std::to_string(k) +
                                    " operator not finite");
        }
    }
}

bool LindbladModel::time_independent() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const HamiltonianTerm& h) { return h.coeff.is_constant(); });
}

Operator hamiltonian_at(const LindbladModel& model, double t) {
    Operator h = Operator::Zero(model.dim(), model.dim());
    for (const auto& term : model.terms()) {
        h += term.coeff(t) * term.base;
    }
    return h;
}

namespace {

Operator dissipator(const LindbladModel& model) {
    Operator d = Operator::Zero(model.dim(), model.dim());
    for (const auto& ch : model.channels()) {
        d += ch.rate * (ch.jump_op.adjoint() * ch.jump_op);
    }
    return Complex(0.0, -0.5) * d;
}

}  // namespace

Operator effective_hamiltonian(const LindbladModel& model, double t) {
    return hamiltonian_at(model, t) + dissipator(model);
}

Operator lift_operator(const Operator& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("lift_operator: operator not square");
    }
    const Eigen::Index n = m.rows();
    Operator out = Operator::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = m;
    out.bottomRightCorner(n, n) = m;
    return out;
}

StateVector lift_state(const StateVector& upper, const StateVector& lower) {
    if (upper.size() != lower.size()) {
        throw DimensionError("lift_state: dimension mismatch");
    }
    StateVector out(upper.size() * 2);
    out << upper, lower;
    return out;
}

LindbladModel lift_to_doubled(const LindbladModel& model) {
    std::vector<HamiltonianTerm> terms;
    terms.reserve(model.terms().size());
    for (const auto& t : model.terms()) {
        terms.push_back({lift_operator(t.base), t.coeff});
    }
    std::vector<DecayChannel> channels;
    channels.reserve(model.channels().size());
    for (const auto& ch : model.channels()) {
        channels.push_back({ch.rate, lift_operator(ch.jump_op)});
    }
    return LindbladModel(2 * model.dim(), std::move(terms), std::move(channels));
}

namespace two_level {

StateVector ground() { return basis_state(2, 0); }
StateVector excited() { return basis_state(2, 1); }

Operator sigma_minus() {
    Operator m = Operator::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Operator sigma_plus() { return sigma_minus().adjoint(); }

Operator sigma_x() { return sigma_minus() + sigma_plus(); }

Operator sigma_y() {
    Operator m = Operator::Zero(2, 2);
    m(0, 1) = Complex(0.0, 1.0);
    m(1, 0) = Complex(0.0, -1.0);
    return m;
}

Operator sigma_z() {
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Operator excited_projector() {
    Operator m = Operator::Zero(2, 2);
    m(1, 1) = 1.0;
    return m;
}

Operator identity() { return Operator::Identity(2, 2); }

}  // namespace two_level

LindbladModel preset_two_level(double rabi, double decay_rate, double detuning) {
    if (!(decay_rate >= 0.0)) {
        throw PreconditionError("preset_two_level: decay rate must be >= 0");
    }
    Operator h = 0.5 * rabi * two_level::sigma_x() - detuning * two_level::excited_projector();
    std::vector<HamiltonianTerm> terms{{h, Coefficient::constant(1.0)}};
    std::vector<DecayChannel> channels{{decay_rate, two_level::sigma_minus()}};
    return LindbladModel(2, std::move(terms), std::move(channels));
}

EffectiveHamiltonian::EffectiveHamiltonian(const LindbladModel& model)
    : dim_(model.dim()), constant_(dissipator(model)) {
    double varying_bound = 0.0;
    for (const auto& term : model.terms()) {
        if (term.coeff.is_constant()) {
            constant_ += term.coeff(0.0) * term.base;
        } else {
            time_dependent_.push_back(term);
            varying_bound += term.coeff.max_abs() * term.base.cwiseAbs().maxCoeff();
        }
    }
    bound_ = constant_.cwiseAbs().maxCoeff() + varying_bound;
}

void EffectiveHamiltonian::evaluate(double t, Operator& out) const {
    out = constant_;
    for (const auto& term : time_dependent_) {
        out += term.coeff(t) * term.base;
    }
}

}  // namespace qjump
