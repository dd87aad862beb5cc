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

#include "qjump/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qjump/errors.hpp"

namespace qjump {

Liouvillian::Liouvillian(const LindbladModel& model)
    : dim_(model.dim()), heff_(model), channels_(model.channels()) {
    double jumps = 0.0;
    for (const auto& ch : channels_) {
        jumps += ch.rate * (ch.jump_op.adjoint() * ch.jump_op).cwiseAbs().maxCoeff();
    }
    bound_ = static_cast<double>(dim_) * (2.0 * heff_.max_entry_bound() + jumps);
    if (heff_.time_independent()) {
        k_ = Complex(0.0, -1.0) * heff_.constant();
    }
}

void Liouvillian::apply(double t, const DensityMatrix& rho, DensityMatrix& out) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw DimensionError("liouvillian: density matrix has wrong shape");
    }
    if (!heff_.time_independent()) {
        heff_.evaluate(t, k_);
        k_ *= Complex(0.0, -1.0);
    }
    out.noalias() = k_ * rho;
    out.noalias() += rho * k_.adjoint();
    for (const auto& ch : channels_) {
        if (ch.rate == 0.0) continue;
        out.noalias() += ch.rate * (ch.jump_op * rho * ch.jump_op.adjoint());
    }
}

DensityMatrix liouvillian_apply(const LindbladModel& model, double t, const DensityMatrix& rho) {
    DensityMatrix out;
    Liouvillian(model).apply(t, rho, out);
    return out;
}

namespace {

class MasterStepper {
public:
    MasterStepper(const LindbladModel& model, const OracleControl& ctrl) : l_(model) {
        if (!(ctrl.dt_max > 0.0) || !(ctrl.safety > 0.0)) {
            throw PreconditionError("oracle: dt_max and safety must be positive");
        }
        const double b = l_.norm_bound();
        h_max_ = b > 0.0 ? std::min(ctrl.dt_max, ctrl.safety / b) : ctrl.dt_max;
    }

    const Liouvillian& liouvillian() const { return l_; }

    void evolve(DensityMatrix& rho, double t0, double t1) {
        if (!(t1 >= t0)) {
            throw PreconditionError("integrate_master: t1 must not precede t0");
        }
        if (!(t1 > t0)) return;
        auto n = static_cast<long>(std::ceil((t1 - t0) / h_max_ * (1.0 - 1e-12)));
        n = std::max(n, 1L);
        const double h = (t1 - t0) / static_cast<double>(n);
        for (long k = 0; k < n; ++k) {
            const double ta = t0 + static_cast<double>(k) * h;
            const double tb = (k + 1 == n) ? t1 : t0 + static_cast<double>(k + 1) * h;
            step(rho, ta, tb - ta);
            if (!rho.allFinite()) throw NumericalBlowUp(tb);
        }
    }

private:
    void step(DensityMatrix& rho, double t, double h) {
        l_.apply(t, rho, k1_);
        tmp_ = rho + 0.5 * h * k1_;
        l_.apply(t + 0.5 * h, tmp_, k2_);
        tmp_ = rho + 0.5 * h * k2_;
        l_.apply(t + 0.5 * h, tmp_, k3_);
        tmp_ = rho + h * k3_;
        l_.apply(t + h, tmp_, k4_);
        rho += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

    Liouvillian l_;
    double h_max_;
    DensityMatrix k1_, k2_, k3_, k4_, tmp_;
};

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw PreconditionError("oracle: empty grid");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k] < grid[k - 1]) throw PreconditionError("oracle: grid must be ordered");
    }
}

}  // namespace

DensityMatrix integrate_master(const LindbladModel& model, const DensityMatrix& rho0, double t0,
                               double t1, const OracleControl& ctrl) {
    MasterStepper stepper(model, ctrl);
    DensityMatrix rho = rho0;
    stepper.evolve(rho, t0, t1);
    return rho;
}

std::vector<DensityMatrix> integrate_master_grid(const LindbladModel& model,
                                                 const DensityMatrix& rho0,
                                                 std::span<const double> grid,
                                                 const OracleControl& ctrl) {
    check_grid(grid);
    MasterStepper stepper(model, ctrl);
    DensityMatrix rho = rho0;
    std::vector<DensityMatrix> out;
    out.reserve(grid.size());
    double t = grid.front();
    for (double g : grid) {
        stepper.evolve(rho, t, g);
        t = g;
        out.push_back(rho);
    }
    return out;
}

std::vector<Complex> heisenberg_oracle(const LindbladModel& model, const StateVector& phi0,
                                       const StateVector& psi0, const Operator& a,
                                       std::span<const double> grid, const OracleControl& ctrl) {
    if (phi0.size() != model.dim() || psi0.size() != model.dim() || a.rows() != model.dim()) {
        throw DimensionError("heisenberg_oracle: dimension mismatch");
    }
    const DensityMatrix rho0 = psi0 * phi0.adjoint();
    std::vector<Complex> out;
    for (const auto& rho : integrate_master_grid(model, rho0, grid, ctrl)) {
        out.push_back((a * rho).trace());
    }
    return out;
}

Eigen::VectorXcd vectorize(const DensityMatrix& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DensityMatrix unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw DimensionError("unvectorize: length mismatch");
    return Eigen::Map<const DensityMatrix>(v.data(), dim, dim);
}

Eigen::MatrixXcd liouvillian_matrix(const LindbladModel& model, double t) {
    // vec(A X B) = (B^T kron A) vec(X)
    const Eigen::Index n = model.dim();
    const Operator id = Operator::Identity(n, n);
    const Operator k = Complex(0.0, -1.0) * effective_hamiltonian(model, t);
    Eigen::MatrixXcd l = Eigen::kroneckerProduct(id, k).eval();
    l += Eigen::kroneckerProduct(k.conjugate(), id).eval();
    for (const auto& ch : model.channels()) {
        l += ch.rate * Eigen::kroneckerProduct(ch.jump_op.conjugate(), ch.jump_op).eval();
    }
    return l;
}

DensityMatrix Propagator::apply(const DensityMatrix& rho) const {
    const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(matrix.rows()))));
    return unvectorize(matrix * vectorize(rho), n);
}

Propagator propagator(const LindbladModel& model, double t0, double t1, const OracleControl& ctrl) {
    const Eigen::Index n = model.dim();
    Propagator p{Eigen::MatrixXcd(n * n, n * n), t0, t1};
    MasterStepper stepper(model, ctrl);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            DensityMatrix e = DensityMatrix::Zero(n, n);
            e(i, j) = 1.0;
            stepper.evolve(e, t0, t1);
            p.matrix.col(i + n * j) = vectorize(e);
        }
    }
    return p;
}

Propagator propagator_expm(const LindbladModel& model, double t0, double t1) {
    if (!model.time_independent()) {
        throw PreconditionError("propagator_expm: model must be time independent");
    }
    const Eigen::MatrixXcd generator = liouvillian_matrix(model, t0) * (t1 - t0);
    return Propagator{generator.exp(), t0, t1};
}

DensityMatrix steady_state(const LindbladModel& model, const SteadyStateControl& ctrl) {
    if (!model.time_independent()) {
        throw PreconditionError("steady_state: model must be time independent");
    }
    const Eigen::Index n = model.dim();
    MasterStepper stepper(model, ctrl.integration);
    DensityMatrix rho = DensityMatrix::Identity(n, n) / static_cast<double>(n);
    DensityMatrix drho;
    double t = 0.0;
    double residual = 0.0;
    while (true) {
        stepper.liouvillian().apply(t, rho, drho);
        residual = drho.cwiseAbs().maxCoeff();
        if (residual < ctrl.residual_tol) break;
        if (t >= ctrl.horizon) {
            throw ConvergenceError("steady_state: not converged within horizon", residual);
        }
        stepper.evolve(rho, t, t + ctrl.check_interval);
        t += ctrl.check_interval;
    }
    return rho;
}

DensityMatrix steady_state_nullspace(const LindbladModel& model) {
    const Eigen::Index n = model.dim();
    const Eigen::MatrixXcd l = liouvillian_matrix(model, 0.0);
    Eigen::MatrixXcd aug(n * n + 1, n * n);
    aug.topRows(n * n) = l;
    aug.row(n * n) = vectorize(DensityMatrix::Identity(n, n)).transpose();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n * n + 1);
    rhs(n * n) = 1.0;
    const Eigen::VectorXcd sol = aug.colPivHouseholderQr().solve(rhs);
    DensityMatrix rho = unvectorize(sol, n);
    return 0.5 * (rho + rho.adjoint());
}

std::vector<Complex> regression_correlation(const LindbladModel& model,
                                            const DensityMatrix& rho_init,
                                            const CorrelationSpec& spec,
                                            std::span<const double> final_grid,
                                            const OracleControl& ctrl) {
    spec.validate();
    check_grid(final_grid);
    if (spec.a.empty()) {
        throw PreconditionError("regression_correlation: the A list must name the final operator");
    }
    const Eigen::Index n = model.dim();
    if (rho_init.rows() != n || rho_init.cols() != n || spec.dim() != n) {
        throw DimensionError("regression_correlation: dimension mismatch");
    }

    struct Event {
        double time;
        bool left;  // B from the left, otherwise A from the right
        const Operator* op;
    };
    std::vector<Event> events;
    for (std::size_t i = 0; i + 1 < spec.a.size(); ++i) {
        events.push_back({spec.a[i].time, false, &spec.a[i].op});
    }
    for (const auto& e : spec.b) events.push_back({e.time, true, &e.op});
    // Stable: operators on one side keep their list order at equal times.
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& x, const Event& y) { return x.time < y.time; });
    const double last = events.empty() ? spec.t0 : events.back().time;
    if (final_grid.front() < last) {
        throw PreconditionError("regression_correlation: final times precede an insertion");
    }

    MasterStepper stepper(model, ctrl);
    DensityMatrix rho = rho_init;
    double t = spec.t0;
    for (const auto& e : events) {
        stepper.evolve(rho, t, e.time);
        t = e.time;
        rho = e.left ? DensityMatrix(*e.op * rho) : DensityMatrix(rho * *e.op);
    }
    std::vector<Complex> out;
    out.reserve(final_grid.size());
    for (double g : final_grid) {
        stepper.evolve(rho, t, g);
        t = g;
        out.push_back((rho * spec.a.back().op).trace());
    }
    return out;
}

std::vector<Complex> stationary_regression(const LindbladModel& model, const Operator& b,
                                           const Operator& a, std::span<const double> tau_grid,
                                           const OracleControl& ctrl) {
    SteadyStateControl ss;
    ss.integration = ctrl;
    const DensityMatrix rho = steady_state(model, ss);
    CorrelationSpec spec;
    spec.initial = StateVector::Zero(model.dim());
    spec.initial(0) = 1.0;
    spec.t0 = 0.0;
    spec.b = {{b, 0.0}};
    spec.a = {{a, 0.0}};
    return regression_correlation(model, rho, spec, tau_grid, ctrl);
}

}  // namespace qjump
