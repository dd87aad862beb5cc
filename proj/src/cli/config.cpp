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

#include "qjump/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qjump::cli {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKnownKeys{
    "model",   "omega",      "gamma",      "delta",    "dim",       "hamiltonian", "channels",
    "operators", "states",   "initial",    "phi0",     "psi0",      "observable",  "correlation",
    "grid",    "omega_grid", "trajectories", "seed",   "method",    "epsilon",     "dt_max",
    "jump_tol", "safety",    "burn_in",    "threads",  "output",    "format",      "target",
    "bench"};

const std::set<std::string> kMethods{"doubled", "kick", "limit", "four"};
const std::set<std::string> kTargets{"expect", "heisenberg", "corr", "spectrum"};

std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

std::string key_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void require_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
            throw ConfigError(key_path(path, it.key()), "unknown field");
        }
    }
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    return j;
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

Complex get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {get_number(j, path), 0.0};
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected a [re, im] pair");
    return {get_number(j[0], index_path(path, 0)), get_number(j[1], index_path(path, 1))};
}

Operator get_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Operator m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rp = index_path(path, static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ConfigError(rp, "matrix must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                                  index_path(rp, static_cast<std::size_t>(c)));
        }
    }
    return m;
}

StateVector get_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty array");
    StateVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = get_complex(j[i], index_path(path, i));
    }
    return v;
}

OperatorRef get_operator_ref(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    return get_matrix(j, path);
}

StateRef get_state_ref(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    return get_vector(j, path);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Operator& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const StateVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json ref_json(const OperatorRef& ref) {
    if (const auto* name = std::get_if<std::string>(&ref)) return *name;
    return matrix_json(std::get<Operator>(ref));
}

json ref_json(const StateRef& ref) {
    if (const auto* name = std::get_if<std::string>(&ref)) return *name;
    return vector_json(std::get<StateVector>(ref));
}

bool same(const Operator& x, const Operator& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
}

bool same(const OperatorRef& x, const OperatorRef& y) {
    if (x.index() != y.index()) return false;
    if (const auto* n = std::get_if<std::string>(&x)) return *n == std::get<std::string>(y);
    return same(std::get<Operator>(x), std::get<Operator>(y));
}

bool same(const StateRef& x, const StateRef& y) {
    if (x.index() != y.index()) return false;
    if (const auto* n = std::get_if<std::string>(&x)) return *n == std::get<std::string>(y);
    const auto& a = std::get<StateVector>(x);
    const auto& b = std::get<StateVector>(y);
    return a.size() == b.size() && a == b;
}

bool same(const std::vector<TimedOperatorRef>& x, const std::vector<TimedOperatorRef>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].time != y[i].time || !same(x[i].op, y[i].op)) return false;
    }
    return true;
}

bool same(const CorrelationConfig& x, const CorrelationConfig& y) {
    return x.stationary == y.stationary && same(x.a, y.a) && same(x.b, y.b);
}

template <typename T>
bool same(const std::optional<T>& x, const std::optional<T>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || same(*x, *y);
}

bool same(const ModelConfig& x, const ModelConfig& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == ModelConfig::Kind::two_level) {
        return x.omega == y.omega && x.gamma == y.gamma && x.delta == y.delta;
    }
    if (x.dim != y.dim || x.hamiltonian.size() != y.hamiltonian.size() ||
        x.channels.size() != y.channels.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.hamiltonian.size(); ++i) {
        if (!(x.hamiltonian[i].coeff == y.hamiltonian[i].coeff) ||
            !same(x.hamiltonian[i].base, y.hamiltonian[i].base)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < x.channels.size(); ++i) {
        if (x.channels[i].rate != y.channels[i].rate ||
            !same(x.channels[i].jump_op, y.channels[i].jump_op)) {
            return false;
        }
    }
    return true;
}

std::optional<Operator> builtin_operator(const std::string& name, Eigen::Index dim) {
    if (name == "id") return Operator::Identity(dim, dim);
    if (dim != 2) return std::nullopt;
    if (name == "sm") return two_level::sigma_minus();
    if (name == "sp") return two_level::sigma_plus();
    if (name == "sx") return two_level::sigma_x();
    if (name == "sy") return two_level::sigma_y();
    if (name == "sz") return two_level::sigma_z();
    if (name == "pe") return two_level::excited_projector();
    return std::nullopt;
}

std::optional<StateVector> builtin_state(const std::string& name, Eigen::Index dim) {
    if (dim != 2) return std::nullopt;
    if (name == "g") return two_level::ground();
    if (name == "e") return two_level::excited();
    return std::nullopt;
}

bool is_builtin_name(const std::string& name) {
    static const std::set<std::string> names{"id", "sm", "sp", "sx", "sy", "sz", "pe", "g", "e"};
    return names.count(name) > 0;
}

Operator lookup_operator(const std::map<std::string, Operator>& table, const std::string& name,
                         Eigen::Index dim, const std::string& path) {
    if (auto it = table.find(name); it != table.end()) return it->second;
    if (auto op = builtin_operator(name, dim)) return *op;
    throw ConfigError(path, "undefined operator '" + name + "'");
}

Coefficient get_coefficient(const json& j, const std::string& path) {
    if (j.is_number()) return Coefficient::constant(get_number(j, path));
    require_object(j, path);
    if (!j.contains("type")) throw ConfigError(key_path(path, "type"), "required");
    const std::string type = get_string(j.at("type"), key_path(path, "type"));
    if (type == "constant") {
        require_keys(j, path, {"type", "value"});
        return Coefficient::constant(get_number(j.value("value", json(1.0)), key_path(path, "value")));
    }
    if (type == "sinusoid") {
        require_keys(j, path, {"type", "amplitude", "frequency", "phase"});
        SinusoidCoeff s;
        if (j.contains("amplitude")) s.amplitude = get_number(j["amplitude"], key_path(path, "amplitude"));
        if (j.contains("frequency")) {
            s.angular_frequency = get_number(j["frequency"], key_path(path, "frequency"));
        }
        if (j.contains("phase")) s.phase = get_number(j["phase"], key_path(path, "phase"));
        return Coefficient(s);
    }
    if (type == "piecewise") {
        require_keys(j, path, {"type", "table"});
        const std::string tp = key_path(path, "table");
        if (!j.contains("table") || !j["table"].is_array()) throw ConfigError(tp, "expected an array");
        PiecewiseCoeff p;
        for (std::size_t i = 0; i < j["table"].size(); ++i) {
            const json& row = j["table"][i];
            const std::string rp = index_path(tp, i);
            if (!row.is_array() || row.size() != 2) throw ConfigError(rp, "expected a [time, value] pair");
            p.table.emplace_back(get_number(row[0], index_path(rp, 0)),
                                 get_number(row[1], index_path(rp, 1)));
        }
        try {
            return Coefficient(p);
        } catch (const Error& e) {
            throw ConfigError(tp, e.what());
        }
    }
    throw ConfigError(key_path(path, "type"), "expected constant, sinusoid or piecewise");
}

json coefficient_json(const Coefficient& c) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return s.value;
            } else if constexpr (std::is_same_v<T, SinusoidCoeff>) {
                return json{{"type", "sinusoid"},
                            {"amplitude", s.amplitude},
                            {"frequency", s.angular_frequency},
                            {"phase", s.phase}};
            } else {
                json table = json::array();
                for (const auto& [t, v] : s.table) table.push_back(json::array({t, v}));
                return json{{"type", "piecewise"}, {"table", table}};
            }
        },
        c.spec());
}

std::vector<TimedOperatorRef> get_timed_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    std::vector<TimedOperatorRef> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ip = index_path(path, i);
        const json& e = require_object(j[i], ip);
        require_keys(e, ip, {"op", "time"});
        if (!e.contains("op")) throw ConfigError(key_path(ip, "op"), "required");
        TimedOperatorRef t{get_operator_ref(e["op"], key_path(ip, "op")), 0.0};
        if (e.contains("time")) t.time = get_number(e["time"], key_path(ip, "time"));
        out.push_back(std::move(t));
    }
    return out;
}

json timed_list_json(const std::vector<TimedOperatorRef>& list) {
    json out = json::array();
    for (const auto& t : list) out.push_back(json{{"op", ref_json(t.op)}, {"time", t.time}});
    return out;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = start;
        return out;
    }
    for (std::size_t k = 0; k < points; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    out.back() = stop;
    return out;
}

GridSpec parse_grid(const std::string& text, const std::string& path) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw ConfigError(path, "expected start:stop:points");
    }
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw ConfigError(path, "invalid number '" + s + "'");
        }
        return v;
    };
    GridSpec g;
    g.start = number(text.substr(0, c1));
    g.stop = number(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string pts = text.substr(c2 + 1);
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(pts.data(), pts.data() + pts.size(), n);
    if (ec != std::errc() || end != pts.data() + pts.size() || n == 0) {
        throw ConfigError(path, "point count must be a positive integer");
    }
    g.points = n;
    if (n == 1 ? g.stop != g.start : !(g.stop > g.start)) {
        throw ConfigError(path, "grid must be strictly increasing");
    }
    return g;
}

std::string format_grid(const GridSpec& grid) {
    return format_double(grid.start) + ":" + format_double(grid.stop) + ":" +
           std::to_string(grid.points);
}

LindbladModel ModelConfig::build() const {
    if (kind == Kind::two_level) return preset_two_level(omega, gamma, delta);
    return LindbladModel(dim, hamiltonian, channels);
}

double RunConfig::effective_burn_in() const {
    if (burn_in) return *burn_in;
    double rate = 0.0;
    if (model.kind == ModelConfig::Kind::two_level) {
        rate = model.gamma;
    } else {
        for (const auto& ch : model.channels) rate = std::max(rate, ch.rate);
    }
    return rate > 0.0 ? 10.0 / rate : 10.0;
}

Operator RunConfig::resolve(const OperatorRef& ref, const std::string& path) const {
    Operator op = std::holds_alternative<std::string>(ref)
                      ? lookup_operator(operators, std::get<std::string>(ref), model.dim, path)
                      : std::get<Operator>(ref);
    if (op.rows() != model.dim) {
        throw ConfigError(path, "operator dimension does not match the model");
    }
    return op;
}

StateVector RunConfig::resolve(const StateRef& ref, const std::string& path) const {
    StateVector v;
    if (const auto* name = std::get_if<std::string>(&ref)) {
        if (auto it = states.find(*name); it != states.end()) {
            v = it->second;
        } else if (auto b = builtin_state(*name, model.dim)) {
            v = *b;
        } else {
            throw ConfigError(path, "undefined state '" + *name + "'");
        }
    } else {
        v = std::get<StateVector>(ref);
    }
    if (v.size() != model.dim) throw ConfigError(path, "state dimension does not match the model");
    if (std::abs(v.squaredNorm() - 1.0) > 1e-10) throw ConfigError(path, "state must be normalized");
    return v;
}

bool operator==(const RunConfig& x, const RunConfig& y) {
    if (!same(x.model, y.model)) return false;
    if (x.operators.size() != y.operators.size() || x.states.size() != y.states.size()) return false;
    for (const auto& [name, op] : x.operators) {
        auto it = y.operators.find(name);
        if (it == y.operators.end() || !same(op, it->second)) return false;
    }
    for (const auto& [name, v] : x.states) {
        auto it = y.states.find(name);
        if (it == y.states.end() || !same(StateRef(v), StateRef(it->second))) return false;
    }
    if (!same(x.initial, y.initial) || !same(x.phi0, y.phi0) || !same(x.psi0, y.psi0) ||
        !same(x.observable, y.observable) || !same(x.correlation, y.correlation)) {
        return false;
    }
    return x.grid == y.grid && x.omega_grid == y.omega_grid && x.trajectories == y.trajectories &&
           x.seed == y.seed && x.method == y.method && x.epsilon == y.epsilon &&
           x.step.dt_max == y.step.dt_max && x.step.jump_tol == y.step.jump_tol &&
           x.step.safety == y.step.safety && x.burn_in == y.burn_in && x.threads == y.threads &&
           x.output == y.output && x.format == y.format && x.target == y.target &&
           x.bench.ladder == y.bench.ladder && x.bench.methods == y.bench.methods;
}

RunConfig parse_config(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ConfigError("document", e.what());
    }
    if (!doc.is_object()) throw ConfigError("document", "expected a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!kKnownKeys.count(it.key())) throw ConfigError(it.key(), "unknown field");
    }

    RunConfig c;
    if (!doc.contains("model")) throw ConfigError("model", "required");
    const std::string kind = get_string(doc["model"], "model");
    if (kind == "two_level") {
        c.model.kind = ModelConfig::Kind::two_level;
        for (const char* k : {"dim", "hamiltonian", "channels"}) {
            if (doc.contains(k)) throw ConfigError(k, "only valid for custom models");
        }
        if (doc.contains("omega")) c.model.omega = get_number(doc["omega"], "omega");
        if (doc.contains("gamma")) c.model.gamma = get_number(doc["gamma"], "gamma");
        if (doc.contains("delta")) c.model.delta = get_number(doc["delta"], "delta");
        if (c.model.gamma < 0.0) throw ConfigError("gamma", "decay rate must be non-negative");
        c.model.dim = 2;
    } else if (kind == "custom") {
        c.model.kind = ModelConfig::Kind::custom;
        for (const char* k : {"omega", "gamma", "delta"}) {
            if (doc.contains(k)) throw ConfigError(k, "only valid for the two_level model");
        }
        if (!doc.contains("dim")) throw ConfigError("dim", "required for custom models");
        const std::uint64_t dim = get_unsigned(doc["dim"], "dim");
        if (dim == 0) throw ConfigError("dim", "must be positive");
        c.model.dim = static_cast<Eigen::Index>(dim);
    } else {
        throw ConfigError("model", "expected two_level or custom");
    }
    const Eigen::Index dim = c.model.dim;

    if (doc.contains("operators")) {
        const json& ops = require_object(doc["operators"], "operators");
        for (auto it = ops.begin(); it != ops.end(); ++it) {
            const std::string p = key_path("operators", it.key());
            if (is_builtin_name(it.key())) throw ConfigError(p, "name clashes with a built-in");
            c.operators[it.key()] = get_matrix(it.value(), p);
        }
    }
    if (doc.contains("states")) {
        const json& st = require_object(doc["states"], "states");
        for (auto it = st.begin(); it != st.end(); ++it) {
            const std::string p = key_path("states", it.key());
            if (is_builtin_name(it.key())) throw ConfigError(p, "name clashes with a built-in");
            c.states[it.key()] = get_vector(it.value(), p);
        }
    }

    if (c.model.kind == ModelConfig::Kind::custom) {
        if (doc.contains("hamiltonian")) {
            const json& h = doc["hamiltonian"];
            if (!h.is_array()) throw ConfigError("hamiltonian", "expected an array");
            for (std::size_t i = 0; i < h.size(); ++i) {
                const std::string p = index_path("hamiltonian", i);
                require_object(h[i], p);
                require_keys(h[i], p, {"matrix", "coefficient"});
                if (!h[i].contains("matrix")) throw ConfigError(key_path(p, "matrix"), "required");
                const std::string mp = key_path(p, "matrix");
                const OperatorRef ref = get_operator_ref(h[i]["matrix"], mp);
                Operator base = std::holds_alternative<std::string>(ref)
                                    ? lookup_operator(c.operators, std::get<std::string>(ref), dim, mp)
                                    : std::get<Operator>(ref);
                if (base.rows() != dim) throw ConfigError(mp, "dimension does not match dim");
                if (!is_hermitian(base)) throw ConfigError(mp, "hamiltonian term must be hermitian");
                Coefficient coeff = Coefficient::constant(1.0);
                if (h[i].contains("coefficient")) {
                    coeff = get_coefficient(h[i]["coefficient"], key_path(p, "coefficient"));
                }
                c.model.hamiltonian.push_back({std::move(base), std::move(coeff)});
            }
        }
        if (doc.contains("channels")) {
            const json& ch = doc["channels"];
            if (!ch.is_array()) throw ConfigError("channels", "expected an array");
            for (std::size_t i = 0; i < ch.size(); ++i) {
                const std::string p = index_path("channels", i);
                require_object(ch[i], p);
                require_keys(ch[i], p, {"rate", "operator"});
                if (!ch[i].contains("rate")) throw ConfigError(key_path(p, "rate"), "required");
                if (!ch[i].contains("operator")) throw ConfigError(key_path(p, "operator"), "required");
                const double rate = get_number(ch[i]["rate"], key_path(p, "rate"));
                if (rate < 0.0) throw ConfigError(key_path(p, "rate"), "rate must be non-negative");
                const std::string op_path = key_path(p, "operator");
                const OperatorRef ref = get_operator_ref(ch[i]["operator"], op_path);
                Operator op = std::holds_alternative<std::string>(ref)
                                  ? lookup_operator(c.operators, std::get<std::string>(ref), dim, op_path)
                                  : std::get<Operator>(ref);
                if (op.rows() != dim) throw ConfigError(op_path, "dimension does not match dim");
                c.model.channels.push_back({rate, std::move(op)});
            }
        }
    }

    if (doc.contains("initial")) c.initial = get_state_ref(doc["initial"], "initial");
    if (doc.contains("phi0")) c.phi0 = get_state_ref(doc["phi0"], "phi0");
    if (doc.contains("psi0")) c.psi0 = get_state_ref(doc["psi0"], "psi0");
    if (doc.contains("observable")) c.observable = get_operator_ref(doc["observable"], "observable");
    if (doc.contains("correlation")) {
        const json& cj = require_object(doc["correlation"], "correlation");
        require_keys(cj, "correlation", {"a", "b", "stationary"});
        CorrelationConfig cc;
        if (cj.contains("a")) cc.a = get_timed_list(cj["a"], "correlation.a");
        if (cj.contains("b")) cc.b = get_timed_list(cj["b"], "correlation.b");
        if (cj.contains("stationary")) cc.stationary = get_bool(cj["stationary"], "correlation.stationary");
        c.correlation = std::move(cc);
    }

    if (doc.contains("grid")) c.grid = parse_grid(get_string(doc["grid"], "grid"), "grid");
    if (doc.contains("omega_grid")) {
        c.omega_grid = parse_grid(get_string(doc["omega_grid"], "omega_grid"), "omega_grid");
    }
    if (doc.contains("trajectories")) c.trajectories = get_unsigned(doc["trajectories"], "trajectories");
    if (doc.contains("seed")) c.seed = get_unsigned(doc["seed"], "seed");
    if (doc.contains("method")) c.method = get_string(doc["method"], "method");
    if (doc.contains("epsilon")) c.epsilon = get_number(doc["epsilon"], "epsilon");
    if (doc.contains("dt_max")) c.step.dt_max = get_number(doc["dt_max"], "dt_max");
    if (doc.contains("jump_tol")) c.step.jump_tol = get_number(doc["jump_tol"], "jump_tol");
    if (doc.contains("safety")) c.step.safety = get_number(doc["safety"], "safety");
    if (doc.contains("burn_in")) c.burn_in = get_number(doc["burn_in"], "burn_in");
    if (doc.contains("threads")) {
        const std::uint64_t t = get_unsigned(doc["threads"], "threads");
        if (t == 0 || t > 1024) throw ConfigError("threads", "must be between 1 and 1024");
        c.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("output")) c.output = get_string(doc["output"], "output");
    if (doc.contains("format")) c.format = get_string(doc["format"], "format");
    if (doc.contains("target")) c.target = get_string(doc["target"], "target");
    if (doc.contains("bench")) {
        const json& bj = require_object(doc["bench"], "bench");
        require_keys(bj, "bench", {"ladder", "methods"});
        if (bj.contains("ladder")) {
            if (!bj["ladder"].is_array()) throw ConfigError("bench.ladder", "expected an array");
            c.bench.ladder.clear();
            for (std::size_t i = 0; i < bj["ladder"].size(); ++i) {
                c.bench.ladder.push_back(get_unsigned(bj["ladder"][i], index_path("bench.ladder", i)));
            }
        }
        if (bj.contains("methods")) {
            if (!bj["methods"].is_array()) throw ConfigError("bench.methods", "expected an array");
            c.bench.methods.clear();
            for (std::size_t i = 0; i < bj["methods"].size(); ++i) {
                c.bench.methods.push_back(get_string(bj["methods"][i], index_path("bench.methods", i)));
            }
        }
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    if (c.model.kind == ModelConfig::Kind::two_level && c.model.gamma < 0.0) {
        throw ConfigError("gamma", "decay rate must be non-negative");
    }
    for (std::size_t i = 0; i < c.model.channels.size(); ++i) {
        if (!(c.model.channels[i].rate >= 0.0)) {
            throw ConfigError(key_path(index_path("channels", i), "rate"), "rate must be non-negative");
        }
    }
    for (std::size_t i = 0; i < c.model.hamiltonian.size(); ++i) {
        if (!is_hermitian(c.model.hamiltonian[i].base)) {
            throw ConfigError(key_path(index_path("hamiltonian", i), "matrix"),
                              "hamiltonian term must be hermitian");
        }
    }
    for (const auto& [name, op] : c.operators) {
        if (op.rows() != c.model.dim) {
            throw ConfigError(key_path("operators", name), "dimension does not match the model");
        }
    }
    for (const auto& [name, v] : c.states) {
        if (v.size() != c.model.dim) {
            throw ConfigError(key_path("states", name), "dimension does not match the model");
        }
    }
    try {
        (void)c.model.build();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("model", e.what());
    }

    c.resolve(c.initial, "initial");
    if (c.phi0) c.resolve(*c.phi0, "phi0");
    if (c.psi0) c.resolve(*c.psi0, "psi0");
    if (c.observable) c.resolve(*c.observable, "observable");
    if (c.correlation) {
        const auto& cc = *c.correlation;
        if (cc.a.empty()) throw ConfigError("correlation.a", "must name at least the final operator");
        if (cc.stationary && (cc.a.size() != 1 || cc.b.size() != 1)) {
            throw ConfigError("correlation", "stationary correlations take exactly one a and one b");
        }
        for (std::size_t i = 0; i < cc.a.size(); ++i) {
            c.resolve(cc.a[i].op, key_path(index_path("correlation.a", i), "op"));
        }
        for (std::size_t i = 0; i < cc.b.size(); ++i) {
            c.resolve(cc.b[i].op, key_path(index_path("correlation.b", i), "op"));
        }
    }

    const GridSpec* grids[] = {&c.grid, c.omega_grid ? &*c.omega_grid : nullptr};
    const char* names[] = {"grid", "omega_grid"};
    for (int i = 0; i < 2; ++i) {
        const GridSpec* g = grids[i];
        if (!g) continue;
        if (g->points == 0 || (g->points == 1 ? g->stop != g->start : !(g->stop > g->start))) {
            throw ConfigError(names[i], "grid must be strictly increasing");
        }
    }
    if (c.trajectories < 2) throw ConfigError("trajectories", "at least two trajectories are required");
    if (!kMethods.count(c.method)) throw ConfigError("method", "expected doubled, kick, limit or four");
    if (!(c.epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
    if (!(c.step.dt_max > 0.0)) throw ConfigError("dt_max", "must be positive");
    if (!(c.step.jump_tol > 0.0) || !(c.step.jump_tol < c.step.dt_max)) {
        throw ConfigError("jump_tol", "must be positive and smaller than dt_max");
    }
    if (!(c.step.safety > 0.0)) throw ConfigError("safety", "must be positive");
    if (c.burn_in && !(*c.burn_in >= 0.0)) throw ConfigError("burn_in", "must be non-negative");
    if (c.threads == 0) throw ConfigError("threads", "must be positive");
    if (c.format != "csv" && c.format != "json") throw ConfigError("format", "expected csv or json");
    if (!kTargets.count(c.target)) {
        throw ConfigError("target", "expected expect, heisenberg, corr or spectrum");
    }
    if (c.bench.ladder.empty()) throw ConfigError("bench.ladder", "must not be empty");
    for (std::size_t i = 0; i < c.bench.ladder.size(); ++i) {
        if (c.bench.ladder[i] < 2 || (i > 0 && c.bench.ladder[i] <= c.bench.ladder[i - 1])) {
            throw ConfigError(index_path("bench.ladder", i),
                              "trajectory counts must be increasing and at least 2");
        }
    }
    for (std::size_t i = 0; i < c.bench.methods.size(); ++i) {
        if (!kMethods.count(c.bench.methods[i])) {
            throw ConfigError(index_path("bench.methods", i), "expected doubled, kick, limit or four");
        }
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

namespace {

json model_json(const ModelConfig& m) {
    json out;
    if (m.kind == ModelConfig::Kind::two_level) {
        out["model"] = "two_level";
        out["omega"] = m.omega;
        out["gamma"] = m.gamma;
        out["delta"] = m.delta;
        return out;
    }
    out["model"] = "custom";
    out["dim"] = m.dim;
    json h = json::array();
    for (const auto& t : m.hamiltonian) {
        h.push_back(json{{"matrix", matrix_json(t.base)}, {"coefficient", coefficient_json(t.coeff)}});
    }
    out["hamiltonian"] = h;
    json ch = json::array();
    for (const auto& c : m.channels) {
        ch.push_back(json{{"rate", c.rate}, {"operator", matrix_json(c.jump_op)}});
    }
    out["channels"] = ch;
    return out;
}

}  // namespace

std::string serialize_model(const ModelConfig& model) { return model_json(model).dump(); }

std::string model_hash(const ModelConfig& model) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_model(model)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize(const RunConfig& c) {
    json out = model_json(c.model);
    if (!c.operators.empty()) {
        json ops = json::object();
        for (const auto& [name, op] : c.operators) ops[name] = matrix_json(op);
        out["operators"] = ops;
    }
    if (!c.states.empty()) {
        json st = json::object();
        for (const auto& [name, v] : c.states) st[name] = vector_json(v);
        out["states"] = st;
    }
    out["initial"] = ref_json(c.initial);
    if (c.phi0) out["phi0"] = ref_json(*c.phi0);
    if (c.psi0) out["psi0"] = ref_json(*c.psi0);
    if (c.observable) out["observable"] = ref_json(*c.observable);
    if (c.correlation) {
        out["correlation"] = json{{"a", timed_list_json(c.correlation->a)},
                                  {"b", timed_list_json(c.correlation->b)},
                                  {"stationary", c.correlation->stationary}};
    }
    out["grid"] = format_grid(c.grid);
    if (c.omega_grid) out["omega_grid"] = format_grid(*c.omega_grid);
    out["trajectories"] = c.trajectories;
    out["seed"] = c.seed;
    out["method"] = c.method;
    out["epsilon"] = c.epsilon;
    out["dt_max"] = c.step.dt_max;
    out["jump_tol"] = c.step.jump_tol;
    out["safety"] = c.step.safety;
    if (c.burn_in) out["burn_in"] = *c.burn_in;
    out["threads"] = c.threads;
    out["output"] = c.output;
    out["format"] = c.format;
    out["target"] = c.target;
    out["bench"] = json{{"ladder", c.bench.ladder}, {"methods", c.bench.methods}};
    return out.dump(2);
}

}  // namespace qjump::cli
