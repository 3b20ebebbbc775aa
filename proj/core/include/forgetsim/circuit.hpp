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
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "forgetsim/actions.hpp"
#include "forgetsim/random.hpp"
#include "forgetsim/stabilizer_state.hpp"

namespace forgetsim {

enum class InitialState { PureZero, MaximallyMixed };

std::string_view to_string(InitialState initial);
std::optional<InitialState> parse_initial_state(std::string_view text);

struct Bipartition {
    SiteSet a;
    SiteSet b;
};

/// Contiguous halves {0..n/2-1} and {n/2..n-1}.
Bipartition half_bipartition(std::size_t n);

/// Observables recorded after every layer. The total entropy is always kept.
struct ObservableSet {
    std::vector<SiteSet> subsystems;
    std::optional<Bipartition> mutual_information;
};

struct CircuitConfig {
    std::size_t n = 2;
    std::size_t depth = 0;
    double p_m = 0.0;
    double p_f = 0.0;
    InitialState initial = InitialState::PureZero;
    std::size_t realizations = 200;
    std::uint64_t master_seed = 0;
    ObservableSet observables;

    /// Throws ArgumentError for odd or tiny n, rates outside [0,1], zero
    /// realizations, or invalid/overlapping observable site sets.
    void validate() const;
};

/// Actions of one layer in execution order: gates, then the measurement
/// stratum, then the forget stratum.
struct LayerPlan {
    std::size_t layer = 0;
    std::vector<GateAction> gates;
    SiteSet measured;
    SiteSet forgotten;
};

/// Brickwork pairs of layer t on a ring: (2k + t%2, 2k + 1 + t%2) mod n.
std::vector<std::pair<std::size_t, std::size_t>> brickwork_pairs(std::size_t n, std::size_t layer);

/// Draws the gates (one fresh uniform Clifford per pair) and the independent
/// Bernoulli site selections of layer `layer` from `rng`.
LayerPlan build_layer_plan(const CircuitConfig &config, std::size_t layer, RandomStream &rng);

struct TrajectoryRecord {
    std::uint64_t trajectory_index = 0;
    std::uint64_t seed = 0;
    /// Entropy in bits; index 0 is the initial state, index t the state after
    /// layer t.
    std::vector<std::int32_t> entropy;
    /// One series per configured subsystem.
    std::vector<std::vector<std::int32_t>> subsystem_entropy;
    std::vector<std::int32_t> mutual_information;
    std::size_t final_rank = 0;

    bool operator==(const TrajectoryRecord &) const = default;
};

/// Receives every executed action (measurements with their outcomes) and a
/// snapshot after the initial state (layer 0) and after each layer.
class TrajectoryObserver {
   public:
    virtual ~TrajectoryObserver() = default;
    virtual void on_action(const Action &) {
    }
    virtual void on_layer(std::size_t /*layer*/, const StabilizerState & /*state*/) {
    }
};

StabilizerState initial_state(const CircuitConfig &config);

/// Runs trajectory `trajectory_index`. Gates and site selections come from
/// substream derive_seed(master, index, 0); measurement outcomes from
/// substream 1. Failures surface as RunError carrying the layer index.
TrajectoryRecord run_trajectory(const CircuitConfig &config, std::uint64_t trajectory_index,
                                TrajectoryObserver *observer = nullptr);

struct Stat {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error (sample deviation over sqrt(count)), summed in
/// index order.
Stat summarize(const std::vector<double> &values);

struct EnsembleResult {
    CircuitConfig config;
    std::size_t realizations = 0;
    std::vector<Stat> entropy;
    std::vector<std::vector<Stat>> subsystem_entropy;
    std::vector<Stat> mutual_information;
};

/// Runs trajectories 0..R-1 on `workers` threads and reduces in index
/// order, so the result does not depend on the worker count. Pass
/// `records` to keep the individual trajectories.
EnsembleResult run_ensemble(const CircuitConfig &config, std::size_t workers = 1,
                            std::vector<TrajectoryRecord> *records = nullptr);

}  // namespace forgetsim
