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
#include <string>
#include <vector>

#include "config_file.hpp"
#include "forgetsim/circuit.hpp"

namespace forgetsim::cli {

/// Fully resolved settings for one invocation. Unset optionals take
/// per-command defaults.
struct RunOptions {
    std::vector<std::size_t> n;
    std::vector<std::size_t> depth;
    std::vector<double> p_m;
    std::vector<double> p_f;
    std::optional<InitialState> initial;
    std::size_t realizations = 200;
    std::uint64_t seed = 1;
    std::optional<std::size_t> workers;
    std::string out;
    double epsilon = 1e-2;
    double resolution = 1e-3;
    std::optional<double> s_max;
    double window_lo = 0.05;
    double window_hi = 0.15;
    double noise_floor = 0.01;
    std::vector<std::size_t> subsystem_a;
    std::vector<std::size_t> subsystem_b;
    bool per_layer = false;
    bool dump_trajectories = false;
    bool quiet = false;

    /// Keys that were set explicitly, for validation messages.
    std::vector<std::string> explicit_keys;

    bool is_set(const std::string &key) const;
};

/// Recognized configuration keys, in documentation order.
const std::vector<std::string> &config_keys();

/// Applies one key/value pair. `where` names the source ("file:line" or
/// "--flag") in the ConfigError message.
void apply_setting(RunOptions &options, const std::string &key, const std::string &value, const std::string &where);

/// Applies every entry of a config file.
void apply_config(RunOptions &options, const ConfigFile &file);

/// Number lists: "a,b,c" or "start:stop:step" (inclusive), or a mix joined by
/// commas. Throws ConfigError.
std::vector<double> parse_number_list(const std::string &text, const std::string &where);
std::vector<std::size_t> parse_count_list(const std::string &text, const std::string &where);

/// Worker count from FORGETSIM_WORKERS, if set. Throws ConfigError when the
/// value is not a positive integer.
std::optional<std::size_t> workers_from_environment();

}  // namespace forgetsim::cli
