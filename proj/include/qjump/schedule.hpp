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

#include <vector>

#include "qjump/hilbert.hpp"

namespace qjump {

struct TimedOperator {
    Operator op;
    double time = 0.0;
};

// <phi0, t0| A_1(t_1) ... A_n(t_n) B_m(s_m) ... B_1(s_1) |phi0, t0>
// with t0 <= t_1 <= ... <= t_n and t0 <= s_1 <= ... <= s_m.
struct CorrelationSpec {
    std::vector<TimedOperator> a;
    std::vector<TimedOperator> b;
    StateVector initial;
    double t0 = 0.0;

    // Throws PreconditionError on unordered times or times before t0,
    // DimensionError on inconsistent operator shapes.
    void validate() const;
    Eigen::Index dim() const { return initial.size(); }
};

// At time r_l the doubled-space pair (phi, psi) is replaced by
// (upper * phi, lower * psi), renormalized.
struct ScheduleEntry {
    double time = 0.0;
    Operator upper;  // F_l, built from adjoints of the A-side operators
    Operator lower;  // G_l, the B-side operators
};

struct FGSchedule {
    std::vector<ScheduleEntry> entries;  // strictly increasing times
};

// One entry per distinct time. A-side operators enter as adjoints on the upper
// component and B-side operators act on the lower component; identity fills
// the side with no operator at that time. Several operators on one side at a
// single time are multiplied in the order the correlation function prescribes.
FGSchedule build_fg_schedule(const CorrelationSpec& spec);

}  // namespace qjump
