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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forgetsim/circuit.hpp"
#include "forgetsim/fit.hpp"

namespace forgetsim {

enum class SweepParameter { ForgetRate, MeasurementRate, SystemSize, Depth };

/// "p_f", "p_m", "n", "depth".
std::string_view to_string(SweepParameter parameter);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view text);

struct SweepAxis {
    SweepParameter parameter = SweepParameter::ForgetRate;
    std::vector<double> values;
};

enum class SweepObservable { EntropyDensity, MutualInformation };

struct SweepSpec {
    CircuitConfig base;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    SweepObservable observable = SweepObservable::EntropyDensity;

    /// Value lists must be non-empty and ascending; n and depth values must be
    /// non-negative integers; every grid point must be a valid CircuitConfig.
    void validate() const;
};

/// Copy of `config` with one parameter replaced.
CircuitConfig with_parameter(CircuitConfig config, SweepParameter parameter, double value);

struct SweepOptions {
    std::size_t workers = 1;
    /// Called with a short description before each ensemble.
    std::function<void(const std::string &)> progress;
    /// When set, receives the individual trajectories of each ensemble.
    std::function<void(const CircuitConfig &, const std::vector<TrajectoryRecord> &)> records;
};

struct CurvePoint {
    double x = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t realizations = 0;
};
using Curve = std::vector<CurvePoint>;

/// Final-layer S/N for each p_f on axis1. Requires axis1 = p_f and p_m = 0.
Curve sweep_forget_rate(const SweepSpec &spec, const SweepOptions &options = {});

struct GridCell {
    double p_m = 0.0;
    double p_f = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t realizations = 0;
};

struct PhaseDiagram {
    std::vector<double> p_f_values;
    std::vector<double> p_m_values;
    /// Row-major with p_m as the row index.
    std::vector<GridCell> cells;

    const GridCell &at(std::size_t pm_index, std::size_t pf_index) const {
        return cells.at(pm_index * p_f_values.size() + pf_index);
    }
};

/// Final-layer S/N on the (p_m, p_f) grid. Requires axis1 = p_f and
/// axis2 = p_m.
PhaseDiagram sweep_phase_diagram(const SweepSpec &spec, const SweepOptions &options = {});

struct SeriesCurve {
    double value = 0.0;
    std::size_t n = 0;
    /// S/N after each layer, index 0 = initial state.
    std::vector<Stat> per_layer;
    std::size_t realizations = 0;
};

/// Per-layer S/N for each value of axis1, which must be n or p_f.
std::vector<SeriesCurve> time_series(const SweepSpec &spec, const SweepOptions &options = {});

/// Smallest sampled x whose mean reaches (1 - epsilon) * s_max. Throws
/// NoTurningPointError if none does. The curve must be sorted by x.
double find_turning_point(const Curve &curve, double s_max, double epsilon = 1e-2);

/// As above, then bisects between the bracketing samples using `evaluate`
/// (mean S/N at a given x) until the bracket is narrower than `resolution`.
/// Returns the upper end of the final bracket.
double find_turning_point(const Curve &curve, double s_max, double epsilon,
                          const std::function<double(double)> &evaluate, double resolution);

struct TurningPointOptions {
    double epsilon = 1e-2;
    double resolution = 1e-3;
    /// Upper bound of S/N. When unset, the curve's largest mean is used.
    std::optional<double> s_max;
};

struct TurningPoint {
    std::size_t depth = 0;
    double p_f_star = 0.0;
    double s_max = 0.0;
    Curve curve;
};

/// For each depth: sweep p_f over `spec.axis1`, locate and refine the turning
/// point. spec.axis1 must be p_f; `depths` replaces spec.base.depth.
std::vector<TurningPoint> turning_points(const SweepSpec &spec, const std::vector<std::size_t> &depths,
                                         const TurningPointOptions &tp_options, const SweepOptions &options = {});

/// Final-layer S/N against p_m from the maximally mixed state. Requires
/// initial = maximally_mixed and axis1 = p_m.
Curve purification_curve(const SweepSpec &spec, const SweepOptions &options = {});

struct MutualInfoPoint {
    double x1 = 0.0;
    std::optional<double> x2;
    Stat final_value;
    std::vector<Stat> per_layer;
    std::size_t realizations = 0;
};

/// Ensemble-mean I(A,B) in bits over axis1 (and axis2 when present). Empty
/// subsystems default to the contiguous halves.
std::vector<MutualInfoPoint> mutual_information_sweep(const SweepSpec &spec, const Bipartition &subsystems,
                                                      const SweepOptions &options = {});

/// Points (x, mean) of a curve, for the fitting routines.
std::vector<Point> curve_points(const Curve &curve);

}  // namespace forgetsim
