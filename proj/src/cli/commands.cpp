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

#include "qjump/cli/commands.hpp"

#include <algorithm>
#include <sstream>

#include "qjump/errors.hpp"
#include "qjump/oracle.hpp"
#include "qjump/spectrum.hpp"
#include "qjump/timing.hpp"

namespace qjump::cli {

namespace {

EnsembleOptions ensemble_options(const RunConfig& c, std::size_t n, std::uint64_t seed) {
    return {n, seed, c.threads};
}

const OperatorRef& require_observable(const RunConfig& c) {
    if (!c.observable) throw ConfigError("observable", "required for this command");
    return *c.observable;
}

CorrelationSpec absolute_spec(const RunConfig& c, const CorrelationConfig& cc) {
    CorrelationSpec spec;
    spec.initial = c.resolve(c.initial, "initial");
    spec.t0 = 0.0;
    for (std::size_t i = 0; i < cc.a.size(); ++i) {
        spec.a.push_back({c.resolve(cc.a[i].op, "correlation.a"), cc.a[i].time});
    }
    for (std::size_t i = 0; i < cc.b.size(); ++i) {
        spec.b.push_back({c.resolve(cc.b[i].op, "correlation.b"), cc.b[i].time});
    }
    // The final operator is swept over the grid; anchor it at the latest insertion.
    double last = 0.0;
    for (std::size_t i = 0; i + 1 < spec.a.size(); ++i) last = std::max(last, spec.a[i].time);
    for (const auto& e : spec.b) last = std::max(last, e.time);
    spec.a.back().time = last;
    return spec;
}

std::vector<double> tau_grid(const RunConfig& c) {
    std::vector<double> tau = c.grid.values();
    if (tau.front() < 0.0) throw ConfigError("grid", "delays must be non-negative");
    return tau;
}

std::vector<double> omega_values(const RunConfig& c) {
    if (!c.omega_grid) throw ConfigError("omega_grid", "required for spectra");
    return c.omega_grid->values();
}

const CorrelationConfig& require_stationary(const CorrelationConfig& cc) {
    if (!cc.stationary) {
        throw ConfigError("correlation.stationary", "spectra require a stationary correlation");
    }
    return cc;
}

SampleFn correlation_sampler(const RunConfig& c, const CorrelationMethod& method) {
    const LindbladModel model = c.model.build();
    const CorrelationConfig cc = effective_correlation(c);
    if (cc.stationary) {
        const double burn = c.effective_burn_in();
        std::vector<double> absolute;
        for (double tau : tau_grid(c)) absolute.push_back(burn + tau);
        const CorrelationSpec spec = stationary_spec(
            c.resolve(c.initial, "initial"), burn, c.resolve(cc.b.front().op, "correlation.b"),
            c.resolve(cc.a.front().op, "correlation.a"));
        return make_correlation_sampler(model, spec, std::move(absolute), method, c.step);
    }
    return make_correlation_sampler(model, absolute_spec(c, cc), c.grid.values(), method, c.step);
}

EstimateSeries oracle_series(std::vector<double> grid, const std::vector<Complex>& values) {
    EstimateSeries s;
    s.grid = std::move(grid);
    s.mean = values;
    s.stderr.assign(values.size(), 0.0);
    s.stderr_re = s.stderr;
    s.stderr_im = s.stderr;
    return s;
}

std::vector<Complex> oracle_values(const RunConfig& c, const std::string& target,
                                   std::vector<double>& grid) {
    const LindbladModel model = c.model.build();
    grid = c.grid.values();
    if (target == "expect") {
        const StateVector psi = c.resolve(c.initial, "initial");
        return heisenberg_oracle(model, psi, psi, c.resolve(require_observable(c), "observable"), grid);
    }
    if (target == "heisenberg") {
        if (!c.phi0) throw ConfigError("phi0", "required for this command");
        if (!c.psi0) throw ConfigError("psi0", "required for this command");
        return heisenberg_oracle(model, c.resolve(*c.phi0, "phi0"), c.resolve(*c.psi0, "psi0"),
                                 c.resolve(require_observable(c), "observable"), grid);
    }
    if (target == "corr") return oracle_correlation(c);
    // spectrum
    require_stationary(effective_correlation(c));
    const std::vector<Complex> corr = oracle_correlation(c);
    const EstimateSeries s = spectrum(oracle_series(grid, corr), omega_values(c));
    grid = s.grid;
    return s.mean;
}

}  // namespace

CorrelationConfig effective_correlation(const RunConfig& c) {
    if (c.correlation) return *c.correlation;
    if (c.model.dim != 2) {
        throw ConfigError("correlation", "required for models other than the two-level preset");
    }
    CorrelationConfig cc;
    cc.a = {{std::string("sp"), 0.0}};
    cc.b = {{std::string("sm"), 0.0}};
    cc.stationary = true;
    return cc;
}

EstimateSeries estimate_correlation(const RunConfig& c, const CorrelationMethod& method,
                                    std::size_t trajectories, std::uint64_t seed) {
    const std::vector<double> grid = effective_correlation(c).stationary ? tau_grid(c) : c.grid.values();
    const auto result =
        run_ensemble(grid.size(), ensemble_options(c, trajectories, seed), correlation_sampler(c, method));
    return finish_ensemble(result, grid);
}

std::vector<Complex> oracle_correlation(const RunConfig& c) {
    const LindbladModel model = c.model.build();
    const CorrelationConfig cc = effective_correlation(c);
    if (cc.stationary) {
        return stationary_regression(model, c.resolve(cc.b.front().op, "correlation.b"),
                                     c.resolve(cc.a.front().op, "correlation.a"), tau_grid(c));
    }
    const CorrelationSpec spec = absolute_spec(c, cc);
    const DensityMatrix rho0 = spec.initial * spec.initial.adjoint();
    return regression_correlation(model, rho0, spec, c.grid.values());
}

CommandResult execute(const std::string& sub, const RunConfig& c) {
    CommandResult r;
    r.meta.command = sub;
    r.meta.seed = c.seed;
    r.meta.trajectories = c.trajectories;
    r.meta.threads = c.threads;
    r.meta.model_hash = model_hash(c.model);
    const LindbladModel model = c.model.build();
    const EnsembleOptions opts = ensemble_options(c, c.trajectories, c.seed);

    if (sub == "expect") {
        r.meta.method = "single";
        const StateVector psi = c.resolve(c.initial, "initial");
        const Operator a = c.resolve(require_observable(c), "observable");
        const std::vector<double> grid = c.grid.values();
        const Stopwatch clock;
        r.series = expectation(model, psi, a, grid, opts, c.step);
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
    } else if (sub == "heisenberg") {
        r.meta.method = "doubled";
        if (!c.phi0) throw ConfigError("phi0", "required for this command");
        if (!c.psi0) throw ConfigError("psi0", "required for this command");
        const StateVector phi = c.resolve(*c.phi0, "phi0");
        const StateVector psi = c.resolve(*c.psi0, "psi0");
        const Operator a = c.resolve(require_observable(c), "observable");
        const std::vector<double> grid = c.grid.values();
        const Stopwatch clock;
        r.series = heisenberg_element(model, phi, psi, a, grid, opts, c.step);
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
    } else if (sub == "corr") {
        const CorrelationMethod method = CorrelationMethod::parse(c.method, c.epsilon);
        r.meta.method = method.name();
        const Stopwatch clock;
        r.series = estimate_correlation(c, method, c.trajectories, c.seed);
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
    } else if (sub == "spectrum") {
        const CorrelationMethod method = CorrelationMethod::parse(c.method, c.epsilon);
        r.meta.method = method.name();
        require_stationary(effective_correlation(c));
        std::vector<double> omega = omega_values(c);
        const SampleFn sampler = make_spectrum_sampler(correlation_sampler(c, method), tau_grid(c), omega);
        const Stopwatch clock;
        const EnsembleResult result = run_ensemble(omega.size(), opts, sampler);
        r.series = finish_ensemble(result, std::move(omega));
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
    } else if (sub == "oracle") {
        r.meta.method = "oracle";
        r.meta.trajectories = 0;
        std::vector<double> grid;
        const Stopwatch clock;
        const std::vector<Complex> values = oracle_values(c, c.target, grid);
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
        r.series = oracle_series(std::move(grid), values);
    } else if (sub == "bench") {
        r.meta.method = "bench";
        const Stopwatch clock;
        r.bench = run_bench(c);
        r.meta.cpu_seconds = clock.cpu_seconds();
        r.meta.wall_seconds = clock.wall_seconds();
    } else {
        throw ConfigError("command", "unknown subcommand '" + sub + "'");
    }
    return r;
}

std::string render(const CommandResult& r, const std::string& format) {
    std::ostringstream out;
    if (r.bench) {
        if (format == "json") {
            write_bench_json(out, *r.bench, r.meta);
        } else {
            emit_plot_data(out, *r.bench);
        }
    } else if (format == "json") {
        write_json(out, r.series, r.meta);
    } else {
        write_csv(out, r.series);
    }
    return out.str();
}

int run_command(const std::string& sub, const RunConfig& c, std::ostream& err) {
    try {
        const CommandResult r = execute(sub, c);
        write_text(c.output, render(r, c.format));
        if (r.series.failed > 0) {
            err << "warning: " << r.series.failed << " trajectories hit a dark state and were excluded\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qjump::cli
