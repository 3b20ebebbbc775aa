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
#include "forgetsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "forgetsim/errors.hpp"

namespace forgetsim {

std::string_view to_string(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::ForgetRate:
            return "p_f";
        case SweepParameter::MeasurementRate:
            return "p_m";
        case SweepParameter::SystemSize:
            return "n";
        case SweepParameter::Depth:
            return "depth";
    }
    return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view text) {
    if (text == "p_f" || text == "pf") {
        return SweepParameter::ForgetRate;
    }
    if (text == "p_m" || text == "pm") {
        return SweepParameter::MeasurementRate;
    }
    if (text == "n") {
        return SweepParameter::SystemSize;
    }
    if (text == "depth") {
        return SweepParameter::Depth;
    }
    return std::nullopt;
}

namespace {

void validate_axis(const SweepAxis &axis) {
    const std::string name(to_string(axis.parameter));
    if (axis.values.empty()) {
        throw ArgumentError("sweep axis " + name + " has no values");
    }
    if (!std::is_sorted(axis.values.begin(), axis.values.end())) {
        throw ArgumentError("sweep axis " + name + " values must be sorted ascending");
    }
    if (axis.parameter == SweepParameter::SystemSize || axis.parameter == SweepParameter::Depth) {
        for (double v : axis.values) {
            if (v < 0.0 || v != std::floor(v)) {
                throw ArgumentError("sweep axis " + name + " needs non-negative integers");
            }
        }
    }
}

void require_axis(const SweepAxis &axis, SweepParameter expected, const char *operation) {
    if (axis.parameter != expected) {
        throw ArgumentError(std::string(operation) + " sweeps " + std::string(to_string(expected)) + ", not " +
                            std::string(to_string(axis.parameter)));
    }
}

void report(const SweepOptions &options, const CircuitConfig &cfg) {
    if (!options.progress) {
        return;
    }
    std::ostringstream msg;
    msg << "n=" << cfg.n << " depth=" << cfg.depth << " p_m=" << cfg.p_m << " p_f=" << cfg.p_f
        << " realizations=" << cfg.realizations;
    options.progress(msg.str());
}

CurvePoint final_density(const EnsembleResult &ens, double x) {
    const double n = static_cast<double>(ens.config.n);
    const Stat &last = ens.entropy.back();
    return CurvePoint{x, last.mean / n, last.std_error / n, ens.realizations};
}

EnsembleResult run_point(const CircuitConfig &cfg, const SweepOptions &options) {
    report(options, cfg);
    if (!options.records) {
        return run_ensemble(cfg, options.workers);
    }
    std::vector<TrajectoryRecord> records;
    EnsembleResult result = run_ensemble(cfg, options.workers, &records);
    options.records(cfg, records);
    return result;
}

}  // namespace

void SweepSpec::validate() const {
    validate_axis(axis1);
    if (axis2) {
        validate_axis(*axis2);
        if (axis2->parameter == axis1.parameter) {
            throw ArgumentError("sweep axes must differ");
        }
    }
    for (double v1 : axis1.values) {
        CircuitConfig cfg = with_parameter(base, axis1.parameter, v1);
        if (!axis2) {
            cfg.validate();
            continue;
        }
        for (double v2 : axis2->values) {
            with_parameter(cfg, axis2->parameter, v2).validate();
        }
    }
}

CircuitConfig with_parameter(CircuitConfig config, SweepParameter parameter, double value) {
    switch (parameter) {
        case SweepParameter::ForgetRate:
            config.p_f = value;
            break;
        case SweepParameter::MeasurementRate:
            config.p_m = value;
            break;
        case SweepParameter::SystemSize:
            config.n = static_cast<std::size_t>(std::llround(value));
            break;
        case SweepParameter::Depth:
            config.depth = static_cast<std::size_t>(std::llround(value));
            break;
    }
    return config;
}

Curve sweep_forget_rate(const SweepSpec &spec, const SweepOptions &options) {
    spec.validate();
    require_axis(spec.axis1, SweepParameter::ForgetRate, "sweep_forget_rate");
    if (spec.base.p_m != 0.0) {
        throw ArgumentError("sweep_forget_rate is the forget-only model and needs p_m = 0");
    }
    Curve curve;
    for (double pf : spec.axis1.values) {
        CircuitConfig cfg = with_parameter(spec.base, SweepParameter::ForgetRate, pf);
        curve.push_back(final_density(run_point(cfg, options), pf));
    }
    return curve;
}

PhaseDiagram sweep_phase_diagram(const SweepSpec &spec, const SweepOptions &options) {
    spec.validate();
    require_axis(spec.axis1, SweepParameter::ForgetRate, "sweep_phase_diagram");
    if (!spec.axis2) {
        throw ArgumentError("sweep_phase_diagram needs a p_m axis");
    }
    require_axis(*spec.axis2, SweepParameter::MeasurementRate, "sweep_phase_diagram axis2");
    PhaseDiagram diagram;
    diagram.p_f_values = spec.axis1.values;
    diagram.p_m_values = spec.axis2->values;
    for (double pm : diagram.p_m_values) {
        for (double pf : diagram.p_f_values) {
            CircuitConfig cfg = with_parameter(spec.base, SweepParameter::MeasurementRate, pm);
            cfg = with_parameter(cfg, SweepParameter::ForgetRate, pf);
            CurvePoint p = final_density(run_point(cfg, options), pf);
            diagram.cells.push_back(GridCell{pm, pf, p.mean, p.std_error, p.realizations});
        }
    }
    return diagram;
}

std::vector<SeriesCurve> time_series(const SweepSpec &spec, const SweepOptions &options) {
    spec.validate();
    if (spec.axis1.parameter != SweepParameter::SystemSize && spec.axis1.parameter != SweepParameter::ForgetRate) {
        throw ArgumentError("time_series sweeps n or p_f");
    }
    std::vector<SeriesCurve> out;
    for (double value : spec.axis1.values) {
        CircuitConfig cfg = with_parameter(spec.base, spec.axis1.parameter, value);
        EnsembleResult ens = run_point(cfg, options);
        SeriesCurve series;
        series.value = value;
        series.n = cfg.n;
        series.realizations = ens.realizations;
        const double n = static_cast<double>(cfg.n);
        for (const Stat &s : ens.entropy) {
            series.per_layer.push_back(Stat{s.mean / n, s.std_error / n});
        }
        out.push_back(std::move(series));
    }
    return out;
}

double find_turning_point(const Curve &curve, double s_max, double epsilon) {
    if (!(s_max > 0.0)) {
        throw ArgumentError("turning point needs s_max > 0");
    }
    const double threshold = (1.0 - epsilon) * s_max;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        if (k > 0 && curve[k].x < curve[k - 1].x) {
            throw ArgumentError("turning point needs a curve sorted by x");
        }
        if (curve[k].mean >= threshold) {
            return curve[k].x;
        }
    }
    std::ostringstream msg;
    msg << "curve never reaches " << threshold << " (= (1 - " << epsilon << ") * " << s_max << ")";
    throw NoTurningPointError(msg.str());
}

double find_turning_point(const Curve &curve, double s_max, double epsilon,
                          const std::function<double(double)> &evaluate, double resolution) {
    const double first = find_turning_point(curve, s_max, epsilon);
    const double threshold = (1.0 - epsilon) * s_max;
    std::size_t k = 0;
    while (curve[k].x != first) {
        ++k;
    }
    if (k == 0 || !evaluate) {
        return first;
    }
    double lo = curve[k - 1].x;
    double hi = curve[k].x;
    while (hi - lo >= resolution) {
        const double mid = 0.5 * (lo + hi);
        if (evaluate(mid) >= threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<TurningPoint> turning_points(const SweepSpec &spec, const std::vector<std::size_t> &depths,
                                         const TurningPointOptions &tp_options, const SweepOptions &options) {
    std::vector<TurningPoint> out;
    for (std::size_t depth : depths) {
        SweepSpec at_depth = spec;
        at_depth.base.depth = depth;
        TurningPoint tp;
        tp.depth = depth;
        tp.curve = sweep_forget_rate(at_depth, options);
        if (tp_options.s_max) {
            tp.s_max = *tp_options.s_max;
        } else {
            for (const auto &p : tp.curve) {
                tp.s_max = std::max(tp.s_max, p.mean);
            }
        }
        auto evaluate = [&](double pf) {
            CircuitConfig cfg = with_parameter(at_depth.base, SweepParameter::ForgetRate, pf);
            return final_density(run_point(cfg, options), pf).mean;
        };
        tp.p_f_star = find_turning_point(tp.curve, tp.s_max, tp_options.epsilon, evaluate, tp_options.resolution);
        out.push_back(std::move(tp));
    }
    return out;
}

Curve purification_curve(const SweepSpec &spec, const SweepOptions &options) {
    spec.validate();
    require_axis(spec.axis1, SweepParameter::MeasurementRate, "purification_curve");
    if (spec.base.initial != InitialState::MaximallyMixed) {
        throw ArgumentError("purification_curve starts from the maximally mixed state");
    }
    Curve curve;
    for (double pm : spec.axis1.values) {
        CircuitConfig cfg = with_parameter(spec.base, SweepParameter::MeasurementRate, pm);
        curve.push_back(final_density(run_point(cfg, options), pm));
    }
    return curve;
}

std::vector<MutualInfoPoint> mutual_information_sweep(const SweepSpec &spec, const Bipartition &subsystems,
                                                      const SweepOptions &options) {
    spec.validate();
    std::vector<double> second = spec.axis2 ? spec.axis2->values : std::vector<double>{0.0};
    std::vector<MutualInfoPoint> out;
    for (double x2 : second) {
        for (double x1 : spec.axis1.values) {
            CircuitConfig cfg = with_parameter(spec.base, spec.axis1.parameter, x1);
            if (spec.axis2) {
                cfg = with_parameter(cfg, spec.axis2->parameter, x2);
            }
            const bool use_default = subsystems.a.empty() && subsystems.b.empty();
            cfg.observables.mutual_information = use_default ? half_bipartition(cfg.n) : subsystems;
            EnsembleResult ens = run_point(cfg, options);
            MutualInfoPoint point;
            point.x1 = x1;
            if (spec.axis2) {
                point.x2 = x2;
            }
            point.per_layer = ens.mutual_information;
            point.final_value = ens.mutual_information.back();
            point.realizations = ens.realizations;
            out.push_back(std::move(point));
        }
    }
    return out;
}

std::vector<Point> curve_points(const Curve &curve) {
    std::vector<Point> out;
    out.reserve(curve.size());
    for (const auto &p : curve) {
        out.emplace_back(p.x, p.mean);
    }
    return out;
}

}  // namespace forgetsim
