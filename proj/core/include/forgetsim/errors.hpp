// Copyright 2026 The forgetsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forgetsim {

/// Operands disagree on qubit count, or a count is zero where one is required.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A qubit index is outside `[0, n)`.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Arguments are individually well formed but violate a precondition.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The dense oracle was asked to follow a branch of zero probability.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-positive data handed to a logarithmic fit.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NoTurningPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure while running a trajectory. Carries the trajectory and layer at
/// which it happened so sweeps can report the failing realization.
class RunError : public std::runtime_error {
   public:
    RunError(std::size_t trajectory, std::size_t layer, const std::string &what)
        : std::runtime_error("trajectory " + std::to_string(trajectory) + ", layer " + std::to_string(layer) +
                             ": " + what),
          trajectory_(trajectory),
          layer_(layer) {
    }

    std::size_t trajectory() const noexcept {
        return trajectory_;
    }
    std::size_t layer() const noexcept {
        return layer_;
    }

   private:
    std::size_t trajectory_;
    std::size_t layer_;
};

}  // namespace forgetsim
