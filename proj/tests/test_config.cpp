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

#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "qjump/cli/config.hpp"

using namespace qjump;
using namespace qjump::cli;

namespace {

std::string error_path(const std::string& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<accepted>";
}

}  // namespace

TEST_CASE("minimal preset document gives the benchmark model") {
    const RunConfig c = parse_config(R"({"model": "two_level", "omega": 10, "gamma": 1})");
    const LindbladModel m = c.model.build();
    const LindbladModel ref = preset_two_level(10.0, 1.0);
    CHECK((hamiltonian_at(m, 0.0) - hamiltonian_at(ref, 0.0)).norm() == 0.0);
    REQUIRE(m.channels().size() == 1);
    CHECK(m.channels()[0].rate == 1.0);
    CHECK(c.step.dt_max == 0.01);
    CHECK(c.step.jump_tol == 1e-6);
    CHECK(c.epsilon == 1e-4);
    CHECK(c.effective_burn_in() == 10.0);
    CHECK(c.threads == 1);
    CHECK(c.format == "csv");
}

TEST_CASE("custom models with inline matrices") {
    const RunConfig c = parse_config(R"({
        "model": "custom", "dim": 2,
        "hamiltonian": [{"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "coefficient": 2.5}],
        "channels": [{"rate": 0.5, "operator": [[[0,0],[1,0]],[[0,0],[0,0]]]}]
    })");
    const LindbladModel m = c.model.build();
    CHECK((m.channels()[0].jump_op - two_level::sigma_minus()).norm() == 0.0);
    CHECK((hamiltonian_at(m, 0.0) - 2.5 * two_level::sigma_x()).norm() == 0.0);
    CHECK(c.effective_burn_in() == 20.0);

    const RunConfig named = parse_config(R"({
        "model": "custom", "dim": 2,
        "operators": {"drive": [[0, 1], [1, 0]]},
        "hamiltonian": [{"matrix": "drive", "coefficient": {"type": "sinusoid", "amplitude": 1, "frequency": 2}}],
        "channels": [{"rate": 1, "operator": "sm"}]
    })");
    CHECK(named.model.hamiltonian[0].coeff(0.0) == 1.0);
}

TEST_CASE("schema violations name the offending field") {
    CHECK(error_path(R"({"model": "custom", "dim": 2,
        "channels": [{"rate": -1, "operator": "sm"}]})") == "channels[0].rate");
    CHECK(error_path(R"({"model": "custom", "dim": 2,
        "hamiltonian": [{"matrix": "sm"}]})") == "hamiltonian[0].matrix");
    CHECK(error_path(R"({"model": "two_level", "gamma": -1})") == "gamma");
    CHECK(error_path(R"({"model": "two_level", "observable": "nope"})") == "observable");
    CHECK(error_path(R"({"model": "two_level", "bogus": 1})") == "bogus");
    CHECK(error_path(R"({"model": "two_level", "grid": "0:1"})") == "grid");
    CHECK(error_path(R"({"model": "two_level", "grid": "1:0:5"})") == "grid");
    CHECK(error_path(R"({"model": "two_level", "trajectories": 1})") == "trajectories");
    CHECK(error_path(R"({"model": "two_level", "method": "magic"})") == "method");
    CHECK(error_path(R"({"model": "two_level", "initial": [[1,0],[1,0]]})") == "initial");
    CHECK(error_path(R"({"model": "two_level", "dim": 3})") == "dim");
    CHECK(error_path(R"({"model": "custom", "dim": 2, "channels": [{"rate": 1,
        "operator": [[[0,0],[1,0]]]}]})") == "channels[0].operator[0]");
    CHECK(error_path(R"({"model": "two_level", "correlation": {"a": [], "b": []}})") ==
          "correlation.a");
    CHECK(error_path(R"({"model": "two_level", "bench": {"ladder": [100, 50]}})") ==
          "bench.ladder[1]");
    CHECK(error_path(R"({"model": "two_level", "jump_tol": 1})") == "jump_tol");
    CHECK(error_path("{not json") == "document");
    CHECK(error_path(R"({"omega": 1})") == "model");
}

TEST_CASE("grid specifications") {
    const GridSpec g = parse_grid("0:5:51");
    const auto v = g.values();
    REQUIRE(v.size() == 51);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 5.0);
    CHECK(v[10] == doctest::Approx(1.0));
    CHECK(parse_grid(format_grid(GridSpec{0.1, 1.0 / 3.0, 7})) == GridSpec{0.1, 1.0 / 3.0, 7});
    CHECK(parse_grid("2:2:1").values() == std::vector<double>{2.0});
    CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_grid("a:1:3"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:3:4"), ConfigError);
}

TEST_CASE("serialization round trips") {
    const char* docs[] = {
        R"({"model": "two_level"})",
        R"({"model": "two_level", "omega": 3.3, "gamma": 0.7, "delta": -0.2, "observable": "sz",
            "phi0": "g", "psi0": [[0,0],[0,1]], "grid": "0.5:2.25:8", "omega_grid": "-20:20:81",
            "trajectories": 12345, "seed": 18446744073709551615, "method": "kick", "epsilon": 1e-3,
            "dt_max": 0.005, "jump_tol": 1e-7, "safety": 0.2, "burn_in": 7.5, "threads": 3,
            "output": "out.csv", "format": "json", "target": "corr",
            "correlation": {"a": [{"op": "sp", "time": 1}, {"op": "pe"}], "b": [{"op": "sm", "time": 1}]},
            "bench": {"ladder": [10, 20], "methods": ["four"]}})",
        R"({"model": "custom", "dim": 3,
            "operators": {"lower": [[0,[1,0],0],[0,0,[0.5,0.5]],[0,0,0]]},
            "states": {"mid": [0, 1, 0]},
            "hamiltonian": [{"matrix": [[1,0,0],[0,2,0],[0,0,3]], "coefficient": {"type": "piecewise", "table": [[0, 1], [2, -1], [9, 0]]}},
                            {"matrix": [[0,[0,1],0],[[0,-1],0,0],[0,0,0]], "coefficient": {"type": "sinusoid", "amplitude": 0.3, "frequency": 1.1, "phase": 0.25}}],
            "channels": [{"rate": 0.25, "operator": "lower"}, {"rate": 0, "operator": "id"}],
            "initial": "mid", "observable": "lower",
            "correlation": {"a": [{"op": "lower"}], "b": [{"op": "id"}], "stationary": true}})"};
    for (const char* d : docs) {
        const RunConfig c = parse_config(d);
        const RunConfig again = parse_config(serialize(c));
        CHECK(again == c);
        CHECK(serialize(again) == serialize(c));
    }
}

TEST_CASE("property: random numeric fields survive the round trip") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        RunConfig c = parse_config(R"({"model": "two_level", "observable": "sx"})");
        c.model.omega = ud(gen) * 30.0;
        c.model.gamma = std::abs(ud(gen)) * 3.0;
        c.model.delta = ud(gen);
        c.grid = GridSpec{ud(gen), 2.0 + ud(gen), 17};
        c.epsilon = std::abs(ud(gen)) * 1e-3 + 1e-12;
        c.burn_in = std::abs(ud(gen)) * 40.0;
        c.seed = gen();
        c.observable = Operator(Operator::Random(2, 2));
        const RunConfig back = parse_config(serialize(c));
        CHECK(back == c);
    }
}

TEST_CASE("model hashes identify the model") {
    const RunConfig a = parse_config(R"({"model": "two_level", "omega": 10})");
    const RunConfig b = parse_config(R"({"model": "two_level", "omega": 10, "seed": 7})");
    const RunConfig c = parse_config(R"({"model": "two_level", "omega": 11})");
    CHECK(model_hash(a.model) == model_hash(b.model));
    CHECK(model_hash(a.model) != model_hash(c.model));
    CHECK(model_hash(a.model).size() == 16);
}
