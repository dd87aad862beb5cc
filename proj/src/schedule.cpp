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

#include "qjump/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

void check_list(const std::vector<TimedOperator>& list, const char* name, double t0,
                Eigen::Index dim) {
    for (std::size_t k = 0; k < list.size(); ++k) {
        const auto& e = list[k];
        if (e.op.rows() != dim || e.op.cols() != dim) {
            throw DimensionError(std::string("correlation spec: ") + name + "[" +
                                 std::to_string(k) + "] has wrong shape");
        }
        if (!std::isfinite(e.time) || e.time < t0) {
            throw PreconditionError(std::string("correlation spec: ") + name + "[" +
                                    std::to_string(k) + "] precedes t0");
        }
        if (k > 0 && e.time < list[k - 1].time) {
            throw PreconditionError(std::string("correlation spec: ") + name +
                                    " times are not ordered");
        }
    }
}

}  // namespace

void CorrelationSpec::validate() const {
    if (initial.size() == 0) {
        throw DimensionError("correlation spec: empty initial state");
    }
    if (!std::isfinite(t0)) {
        throw PreconditionError("correlation spec: non-finite t0");
    }
    check_list(a, "a", t0, dim());
    check_list(b, "b", t0, dim());
}

FGSchedule build_fg_schedule(const CorrelationSpec& spec) {
    spec.validate();
    std::vector<double> times;
    for (const auto& e : spec.a) times.push_back(e.time);
    for (const auto& e : spec.b) times.push_back(e.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const Eigen::Index n = spec.dim();
    FGSchedule schedule;
    schedule.entries.reserve(times.size());
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (double r : times) {
        ScheduleEntry entry{r, Operator::Identity(n, n), Operator::Identity(n, n)};
        // rho -> rho A_i A_{i+1}: the upper component picks up A_{i+1}^dag A_i^dag.
        while (ia < spec.a.size() && spec.a[ia].time == r) {
            entry.upper = spec.a[ia].op.adjoint() * entry.upper;
            ++ia;
        }
        // rho -> B_{j+1} B_j rho
        while (ib < spec.b.size() && spec.b[ib].time == r) {
            entry.lower = spec.b[ib].op * entry.lower;
            ++ib;
        }
        schedule.entries.push_back(std::move(entry));
    }
    return schedule;
}

}  // namespace qjump
