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
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "forgetsim/circuit.hpp"
#include "forgetsim/experiments.hpp"
#include "forgetsim/fit.hpp"

namespace forgetsim {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest round-trip decimal form; identical input gives identical text.
std::string format_number(double value);

/// One CSV data row: the circuit coordinates of a grid point and one
/// ensemble statistic.
struct ResultRow {
    std::size_t n = 0;
    std::size_t depth = 0;
    double p_m = 0.0;
    double p_f = 0.0;
    std::optional<std::size_t> layer;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t realizations = 0;
};

/// Writes "# schema=1", the header
/// "n,depth,p_m,p_f[,layer],<value_column>,stderr,realizations" and the rows.
void write_results_csv(std::ostream &out, const std::vector<ResultRow> &rows, const std::string &value_column,
                       bool with_layer);

std::vector<ResultRow> rows_from_curve(const CircuitConfig &base, SweepParameter axis, const Curve &curve);
std::vector<ResultRow> rows_from_diagram(const CircuitConfig &base, const PhaseDiagram &diagram);
/// One row per layer of each series.
std::vector<ResultRow> rows_from_series(const CircuitConfig &base, SweepParameter axis,
                                        const std::vector<SeriesCurve> &series);
/// Final-layer rows, or one row per layer when `per_layer`.
std::vector<ResultRow> rows_from_mutual_info(const SweepSpec &spec, const std::vector<MutualInfoPoint> &points,
                                             bool per_layer);

/// "# schema=1" then "n,depth,p_f_star,s_max,epsilon".
void write_turning_points_csv(std::ostream &out, std::size_t n, const std::vector<TurningPoint> &points,
                              double epsilon);

nlohmann::json to_json(const CircuitConfig &config);
nlohmann::json to_json(const SweepSpec &spec);
nlohmann::json to_json(const FitResult &fit);

/// Simulation conventions in force, recorded in every output sidecar.
nlohmann::json conventions_json();

/// One JSON object per line per trajectory (see docs/trajectory_jsonl.md).
void write_trajectory_jsonl(std::ostream &out, const CircuitConfig &config, const std::vector<TrajectoryRecord> &records);

}  // namespace forgetsim
