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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace forgetsim {

struct OracleCheckOptions {
    std::vector<std::size_t> sizes{2, 3, 4, 5};
    /// (p_m, p_f) combinations.
    std::vector<std::pair<double, double>> rates{{0.0, 0.0}, {0.0, 0.3}, {0.0, 1.0}, {0.3, 0.0}, {0.3, 0.3},
                                                 {0.3, 1.0}, {1.0, 0.0}, {1.0, 0.3}, {1.0, 1.0}};
    std::size_t trajectories_per_cell = 14;
    std::size_t min_depth = 1;
    std::size_t max_depth = 10;
    std::uint64_t seed = 20260101;
    double tolerance = 1e-9;
    /// Also replay engine trajectories (even sizes only) through the observer hook.
    bool include_engine = true;
};

struct OracleCheckReport {
    std::size_t trajectories = 0;
    std::size_t engine_trajectories = 0;
    std::size_t actions = 0;
    std::size_t comparisons = 0;
    double max_entropy_deviation = 0.0;
    double max_density_deviation = 0.0;
    double max_probability_deviation = 0.0;
    double max_invariant_violation = 0.0;
    std::vector<std::string> failures;

    bool passed() const noexcept {
        return failures.empty();
    }
};

/// Runs random measure-and-forget trajectories through both the stabilizer
/// simulator and the dense density-matrix simulator, comparing total,
/// single-site and half-system entropies, the half/half mutual information,
/// the full density matrix and the measurement outcome probabilities after
/// every action.
OracleCheckReport run_oracle_equivalence(const OracleCheckOptions &options = {});

}  // namespace forgetsim
