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

#include "qjump/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qjump/errors.hpp"

namespace qjump {

void StepControl::validate() const {
    if (!(dt_max > 0.0) || !(jump_tol > 0.0) || !(safety > 0.0)) {
        throw PreconditionError("StepControl: dt_max, jump_tol and safety must be positive");
    }
    if (!(jump_tol < dt_max)) {
        throw PreconditionError("StepControl: jump_tol must be smaller than dt_max");
    }
}

double driver_norm2(const StateBlock& state, NormDriver driver) {
    if (driver == NormDriver::leading) {
        return state.col(0).squaredNorm();
    }
    double n2 = 0.0;
    for (Eigen::Index c = 0; c < state.cols(); ++c) {
        n2 += state.col(c).squaredNorm();
    }
    return n2;
}

Rk4Stepper::Rk4Stepper(const EffectiveHamiltonian& heff, const StepControl& ctrl)
    : heff_(heff), ctrl_(ctrl) {
    ctrl_.validate();
    const double bound = heff_.max_entry_bound();
    h_max_ = bound > 0.0 ? std::min(ctrl_.dt_max, ctrl_.safety / bound) : ctrl_.dt_max;
    if (heff_.time_independent()) {
        gen_ = Complex(0.0, -1.0) * heff_.constant();
    }
}

void Rk4Stepper::generator_at(double t) {
    if (heff_.time_independent()) {
        return;
    }
    heff_.evaluate(t, scratch_);
    gen_ = Complex(0.0, -1.0) * scratch_;
}

void Rk4Stepper::apply(const StateBlock& in, StateBlock& out) const {
    const Eigen::Index n = gen_.rows();
    out.resize(n, in.cols());
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex acc(0.0, 0.0);
            for (Eigen::Index j = 0; j < n; ++j) {
                acc += gen_(i, j) * in(j, c);
            }
            out(i, c) = acc;
        }
    }
}

void Rk4Stepper::step(StateBlock& x, double t, double h) {
    if (x.rows() != heff_.dim()) {
        throw DimensionError("Rk4Stepper: state dimension does not match the model");
    }
    const double half = 0.5 * h;
    generator_at(t);
    apply(x, k1_);
    generator_at(t + half);
    tmp_ = x + half * k1_;
    apply(tmp_, k2_);
    tmp_ = x + half * k2_;
    apply(tmp_, k3_);
    generator_at(t + h);
    tmp_ = x + h * k3_;
    apply(tmp_, k4_);
    x += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

namespace {

Eigen::Index step_count(double span, double h_max) {
    if (!(span > 0.0)) {
        return 0;
    }
    const double ratio = span / h_max;
    auto n = static_cast<Eigen::Index>(std::ceil(ratio * (1.0 - 1e-12)));
    return std::max<Eigen::Index>(n, 1);
}

}  // namespace

void Rk4Stepper::evolve(StateBlock& x, double t0, double t1) {
    if (!(t1 >= t0)) {
        throw PreconditionError("evolve: t1 must not precede t0");
    }
    const Eigen::Index n = step_count(t1 - t0, h_max_);
    const double h = (t1 - t0) / static_cast<double>(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double ta = t0 + static_cast<double>(k) * h;
        const double tb = (k + 1 == n) ? t1 : t0 + static_cast<double>(k + 1) * h;
        step(x, ta, tb - ta);
        if (!x.allFinite()) {
            throw NumericalBlowUp(tb);
        }
    }
}

JumpOutcome Rk4Stepper::advance_until(StateBlock& x, double t_start, double t_end, double eta,
                                     NormDriver driver) {
    if (!(t_end >= t_start)) {
        throw PreconditionError("find_jump_time: t_end must not precede t_start");
    }
    const double norm2 = driver_norm2(x, driver);
    if (!(eta > 0.0) || eta > norm2) {
        throw PreconditionError("find_jump_time: eta must lie in (0, norm^2]");
    }
    if (norm2 <= eta) {
        return {true, t_start};
    }
    const Eigen::Index n = step_count(t_end - t_start, h_max_);
    const double h = n > 0 ? (t_end - t_start) / static_cast<double>(n) : 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double ta = t_start + static_cast<double>(k) * h;
        const double tb = (k + 1 == n) ? t_end : t_start + static_cast<double>(k + 1) * h;
        prev_ = x;
        step(x, ta, tb - ta);
        if (!x.allFinite()) {
            throw NumericalBlowUp(tb);
        }
        if (driver_norm2(x, driver) >= eta) {
            continue;
        }
        // Bracket [a, b] with norm^2(a) >= eta > norm^2(b); prev_ holds the state at a.
        double a = ta;
        double b = tb;
        while (b - a >= ctrl_.jump_tol) {
            const double mid = 0.5 * (a + b);
            if (!(mid > a && mid < b)) {
                break;
            }
            probe_ = prev_;
            step(probe_, a, mid - a);
            if (driver_norm2(probe_, driver) < eta) {
                b = mid;
                x = probe_;
            } else {
                a = mid;
                prev_ = probe_;
            }
        }
        return {true, b};
    }
    return {false, t_end};
}

StateBlock evolve(const StateBlock& state, const EffectiveHamiltonian& heff, double t0, double t1,
                  const StepControl& ctrl) {
    Rk4Stepper stepper(heff, ctrl);
    StateBlock x = state;
    stepper.evolve(x, t0, t1);
    return x;
}

JumpSearch find_jump_time(const StateBlock& state, const EffectiveHamiltonian& heff,
                          double t_start, double t_end, double eta, const StepControl& ctrl,
                          NormDriver driver) {
    Rk4Stepper stepper(heff, ctrl);
    StateBlock x = state;
    const JumpOutcome out = stepper.advance_until(x, t_start, t_end, eta, driver);
    return {out.jumped, out.time, std::move(x)};
}

}  // namespace qjump
