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

#include "qjump/estimators.hpp"

#include <array>
#include <cmath>
#include <memory>

#include "qjump/errors.hpp"

namespace qjump {

CorrelationMethod CorrelationMethod::parse(const std::string& name, double eps) {
    if (name == "doubled") return doubled();
    if (name == "kick") return kick_epsilon(eps);
    if (name == "limit") return kick_limit();
    if (name == "four") return four();
    throw PreconditionError("unknown correlation method '" + name + "'");
}

std::string CorrelationMethod::name() const {
    switch (kind_) {
        case Kind::doubled:
            return "doubled";
        case Kind::four:
            return "four";
        case Kind::kick:
            return mode_.kind() == KickMode::Kind::limit ? "limit" : "kick";
    }
    return "unknown";
}

namespace {

void require_normalized(const StateVector& v, const char* what) {
    if (std::abs(v.squaredNorm() - 1.0) > 1e-10) {
        throw PreconditionError(std::string(what) + " must be normalized");
    }
}

void require_operator(const Operator& a, Eigen::Index dim, const char* what) {
    if (a.rows() != dim || a.cols() != dim) {
        throw DimensionError(std::string(what) + " does not match the model dimension");
    }
}

// Model copy plus an engine bound to it; held by shared_ptr so the engine's
// reference stays valid for the lifetime of the sample function.
struct EngineHolder {
    EngineHolder(const LindbladModel& m, const StepControl& ctrl)
        : model(m), heff(model), engine(model, ctrl) {}
    LindbladModel model;
    EffectiveHamiltonian heff;
    TrajectoryEngine engine;
    EngineHolder(const EngineHolder&) = delete;
    EngineHolder& operator=(const EngineHolder&) = delete;
};

Complex cross_element(const StateBlock& pair_block, const Operator& a) {
    return pair_block.col(0).dot(a * pair_block.col(1));
}

}  // namespace

SampleFn make_expectation_sampler(const LindbladModel& model, const StateVector& psi0,
                                  const Operator& a, std::vector<double> grid,
                                  const StepControl& ctrl) {
    require_operator(a, model.dim(), "observable");
    require_normalized(psi0, "initial state");
    auto holder = std::make_shared<const EngineHolder>(model, ctrl);
    const StateBlock initial(psi0);
    return [holder, initial, a, grid = std::move(grid)](RngStream& rng, std::span<Complex> out) {
        const TrajectoryRecord rec = holder->engine.run(initial, 1.0, grid, rng);
        if (rec.status == TrajectoryStatus::failed) return rec.status;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto& s = rec.snapshots[k];
            // Same reduction in numerator and denominator: A = I gives exactly 1.
            out[k] = s.col(0).dot(a * s.col(0)) / s.col(0).dot(s.col(0)).real();
        }
        return rec.status;
    };
}

SampleFn make_heisenberg_sampler(const LindbladModel& model, const StateVector& phi0,
                                 const StateVector& psi0, const Operator& a,
                                 std::vector<double> grid, const StepControl& ctrl) {
    require_operator(a, model.dim(), "operator");
    require_normalized(phi0, "phi0");
    require_normalized(psi0, "psi0");
    const PairedState theta0 = pair(phi0, psi0);
    auto holder = std::make_shared<const EngineHolder>(model, ctrl);
    return [holder, theta0, a, grid = std::move(grid)](RngStream& rng, std::span<Complex> out) {
        const TrajectoryRecord rec = holder->engine.run(theta0.block(), theta0.weight(), grid, rng);
        if (rec.status == TrajectoryStatus::failed) return rec.status;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out[k] = rec.weight * cross_element(rec.snapshots[k], a);
        }
        return rec.status;
    };
}

namespace {

struct CorrelationPlan {
    StateVector phi0;
    double t0;
    FGSchedule fixed;
    Operator final_op;
    std::vector<double> grid;
};

CorrelationPlan plan_correlation(const LindbladModel& model, const CorrelationSpec& spec,
                                 std::vector<double> final_grid) {
    if (spec.a.empty()) {
        throw PreconditionError("correlation: the A list must name the final operator");
    }
    if (spec.dim() != model.dim()) {
        throw DimensionError("correlation: initial state does not match the model dimension");
    }
    require_normalized(spec.initial, "correlation initial state");
    if (final_grid.empty()) {
        throw PreconditionError("correlation: empty final-time grid");
    }
    CorrelationSpec fixed = spec;
    fixed.a.pop_back();
    FGSchedule schedule = build_fg_schedule(fixed);
    require_operator(spec.a.back().op, model.dim(), "final operator");
    double last = spec.t0;
    if (!schedule.entries.empty()) last = schedule.entries.back().time;
    for (std::size_t k = 0; k < final_grid.size(); ++k) {
        if (final_grid[k] < last || (k > 0 && final_grid[k] < final_grid[k - 1])) {
            throw PreconditionError(
                "correlation: final times must be ordered and not precede any insertion");
        }
    }
    return {spec.initial, spec.t0, std::move(schedule), spec.a.back().op, std::move(final_grid)};
}

}  // namespace

SampleFn make_correlation_sampler(const LindbladModel& model, const CorrelationSpec& spec,
                                  std::vector<double> final_grid, const CorrelationMethod& method,
                                  const StepControl& ctrl) {
    auto plan = std::make_shared<const CorrelationPlan>(
        plan_correlation(model, spec, std::move(final_grid)));
    auto holder = std::make_shared<const EngineHolder>(model, ctrl);

    if (method.kind() != CorrelationMethod::Kind::four) {
        const KickMode mode = method.kick_mode();
        const bool scaled =
            mode.kind() == KickMode::Kind::epsilon && !plan->fixed.entries.empty();
        const double inv_eps = scaled ? 1.0 / mode.eps() : 1.0;
        return [holder, plan, mode, inv_eps](RngStream& rng, std::span<Complex> out) {
            const TrajectoryRecord rec = holder->engine.run_kick(plan->phi0, plan->t0, plan->fixed,
                                                                 plan->grid, rng, mode);
            if (rec.status != TrajectoryStatus::completed) return rec.status;
            const double scale = rec.weight * inv_eps;
            for (std::size_t k = 0; k < plan->grid.size(); ++k) {
                out[k] = scale * cross_element(rec.snapshots[k], plan->final_op);
            }
            return rec.status;
        };
    }

    // Four sub-trajectories: B|phi><phi| = 1/4 sum_a conj(a) (1 + aB)|phi><phi|(1 + aB)^dag
    // over a in {1, -1, i, -i}, each term propagated by the single-space process.
    if (spec.a.size() != 1 || spec.b.size() != 1) {
        throw PreconditionError("four-trajectory method supports two-time correlations only");
    }
    const Operator b = spec.b.front().op;
    const double s1 = spec.b.front().time;
    return [holder, plan, b, s1](RngStream& rng, std::span<Complex> out) {
        static const std::array<Complex, 4> alphas{Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                                   Complex(0, -1)};
        const auto& model = holder->model;
        const EffectiveHamiltonian& heff_model = holder->heff;
        const StepControl& ctrl = holder->engine.control();
        try {
            JumpProcess main(heff_model, model.channels(), ctrl);
            main.restart(plan->t0, StateBlock(plan->phi0), NormDriver::joint, rng);
            main.advance_to(s1, rng);
            const StateVector phi = main.normalized().col(0);
            const StateVector bphi = b * phi;
            for (std::size_t q = 0; q < alphas.size(); ++q) {
                const StateVector chi = phi + alphas[q] * bphi;
                const double n2 = chi.squaredNorm();
                if (!(n2 > 0.0)) continue;
                RngStream sub = rng.fork(static_cast<std::uint32_t>(q + 1));
                JumpProcess proc(heff_model, model.channels(), ctrl);
                proc.restart(s1, StateBlock(chi / std::sqrt(n2)), NormDriver::joint, sub);
                const Complex coeff = 0.25 * std::conj(alphas[q]) * n2;
                for (std::size_t k = 0; k < plan->grid.size(); ++k) {
                    proc.advance_to(plan->grid[k], sub);
                    const StateBlock v = proc.normalized();
                    out[k] += coeff * v.col(0).dot(plan->final_op * v.col(0));
                }
            }
        } catch (const DarkStateError&) {
            return TrajectoryStatus::failed;
        } catch (const NumericalBlowUp& e) {
            throw TrajectoryError(rng.stream_index(), e.what());
        }
        return TrajectoryStatus::completed;
    };
}

EstimateSeries finish_ensemble(const EnsembleResult& result, std::vector<double> grid) {
    EstimateSeries s = result.stats.finish(std::move(grid));
    s.failed = result.failed;
    s.zero_weight = result.zero_weight;
    return s;
}

EstimateSeries expectation(const LindbladModel& model, const StateVector& psi0, const Operator& a,
                           std::span<const double> grid, const EnsembleOptions& opts,
                           const StepControl& ctrl) {
    std::vector<double> g(grid.begin(), grid.end());
    const auto result = run_ensemble(g.size(), opts, make_expectation_sampler(model, psi0, a, g, ctrl));
    return finish_ensemble(result, std::move(g));
}

EstimateSeries heisenberg_element(const LindbladModel& model, const StateVector& phi0,
                                  const StateVector& psi0, const Operator& a,
                                  std::span<const double> grid, const EnsembleOptions& opts,
                                  const StepControl& ctrl) {
    std::vector<double> g(grid.begin(), grid.end());
    const auto result =
        run_ensemble(g.size(), opts, make_heisenberg_sampler(model, phi0, psi0, a, g, ctrl));
    return finish_ensemble(result, std::move(g));
}

EstimateSeries correlation(const LindbladModel& model, const CorrelationSpec& spec,
                           std::span<const double> final_grid, const CorrelationMethod& method,
                           const EnsembleOptions& opts, const StepControl& ctrl) {
    std::vector<double> g(final_grid.begin(), final_grid.end());
    const auto result =
        run_ensemble(g.size(), opts, make_correlation_sampler(model, spec, g, method, ctrl));
    return finish_ensemble(result, std::move(g));
}

CorrelationSpec stationary_spec(const StateVector& initial, double burn_in, const Operator& b,
                                const Operator& a) {
    if (!(burn_in >= 0.0)) {
        throw PreconditionError("burn-in must be non-negative");
    }
    CorrelationSpec spec;
    spec.initial = initial;
    spec.t0 = 0.0;
    spec.b = {{b, burn_in}};
    spec.a = {{a, burn_in}};
    return spec;
}

EstimateSeries stationary_correlation(const LindbladModel& model, const StateVector& initial,
                                      double burn_in, const Operator& b, const Operator& a,
                                      std::span<const double> tau_grid,
                                      const CorrelationMethod& method, const EnsembleOptions& opts,
                                      const StepControl& ctrl) {
    std::vector<double> absolute;
    absolute.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        if (tau < 0.0) throw PreconditionError("stationary correlation: negative tau");
        absolute.push_back(burn_in + tau);
    }
    EstimateSeries s =
        correlation(model, stationary_spec(initial, burn_in, b, a), absolute, method, opts, ctrl);
    s.grid.assign(tau_grid.begin(), tau_grid.end());
    return s;
}

}  // namespace qjump
