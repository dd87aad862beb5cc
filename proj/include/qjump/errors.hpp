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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qjump {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Both components of an insertion vanished; the trajectory contributes 0.
class ZeroWeightInsertion : public Error {
public:
    ZeroWeightInsertion() : Error("zero-weight insertion") {}
};

// Piecewise coefficient table queried outside its time range.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class NumericalBlowUp : public Error {
public:
    explicit NumericalBlowUp(double time)
        : Error("non-finite state during integration at t=" + std::to_string(time)), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

// All channel weights are zero at a sampled jump time.
class DarkStateError : public Error {
public:
    explicit DarkStateError(double time)
        : Error("dark state at jump time t=" + std::to_string(time)), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

// A failure inside one realization, tagged with its stream coordinates.
class TrajectoryError : public Error {
public:
    TrajectoryError(std::uint64_t stream_index, const std::string& what)
        : Error("trajectory " + std::to_string(stream_index) + ": " + what),
          stream_index_(stream_index) {}
    std::uint64_t stream_index() const { return stream_index_; }

private:
    std::uint64_t stream_index_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace qjump
