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
#include "forgetsim/results_io.hpp"

#include <array>
#include <charconv>

namespace forgetsim {

std::string format_number(double value) {
    std::array<char, 64> buf;
    auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

void write_results_csv(std::ostream &out, const std::vector<ResultRow> &rows, const std::string &value_column,
                       bool with_layer) {
    out << "# schema=" << kCsvSchemaVersion << '\n';
    out << "n,depth,p_m,p_f," << (with_layer ? "layer," : "") << value_column << ",stderr,realizations\n";
    for (const auto &r : rows) {
        out << r.n << ',' << r.depth << ',' << format_number(r.p_m) << ',' << format_number(r.p_f) << ',';
        if (with_layer) {
            out << r.layer.value_or(r.depth) << ',';
        }
        out << format_number(r.mean) << ',' << format_number(r.std_error) << ',' << r.realizations << '\n';
    }
}

std::vector<ResultRow> rows_from_curve(const CircuitConfig &base, SweepParameter axis, const Curve &curve) {
    std::vector<ResultRow> rows;
    for (const auto &p : curve) {
        CircuitConfig cfg = with_parameter(base, axis, p.x);
        rows.push_back(ResultRow{cfg.n, cfg.depth, cfg.p_m, cfg.p_f, std::nullopt, p.mean, p.std_error, p.realizations});
    }
    return rows;
}

std::vector<ResultRow> rows_from_diagram(const CircuitConfig &base, const PhaseDiagram &diagram) {
    std::vector<ResultRow> rows;
    for (const auto &c : diagram.cells) {
        rows.push_back(ResultRow{base.n, base.depth, c.p_m, c.p_f, std::nullopt, c.mean, c.std_error, c.realizations});
    }
    return rows;
}

std::vector<ResultRow> rows_from_series(const CircuitConfig &base, SweepParameter axis,
                                        const std::vector<SeriesCurve> &series) {
    std::vector<ResultRow> rows;
    for (const auto &s : series) {
        CircuitConfig cfg = with_parameter(base, axis, s.value);
        for (std::size_t t = 0; t < s.per_layer.size(); ++t) {
            rows.push_back(
                ResultRow{cfg.n, cfg.depth, cfg.p_m, cfg.p_f, t, s.per_layer[t].mean, s.per_layer[t].std_error, s.realizations});
        }
    }
    return rows;
}

std::vector<ResultRow> rows_from_mutual_info(const SweepSpec &spec, const std::vector<MutualInfoPoint> &points,
                                             bool per_layer) {
    std::vector<ResultRow> rows;
    for (const auto &p : points) {
        CircuitConfig cfg = with_parameter(spec.base, spec.axis1.parameter, p.x1);
        if (spec.axis2 && p.x2) {
            cfg = with_parameter(cfg, spec.axis2->parameter, *p.x2);
        }
        if (per_layer) {
            for (std::size_t t = 0; t < p.per_layer.size(); ++t) {
                rows.push_back(ResultRow{cfg.n, cfg.depth, cfg.p_m, cfg.p_f, t, p.per_layer[t].mean,
                                         p.per_layer[t].std_error, p.realizations});
            }
        } else {
            rows.push_back(ResultRow{cfg.n, cfg.depth, cfg.p_m, cfg.p_f, cfg.depth, p.final_value.mean,
                                     p.final_value.std_error, p.realizations});
        }
    }
    return rows;
}

void write_turning_points_csv(std::ostream &out, std::size_t n, const std::vector<TurningPoint> &points,
                              double epsilon) {
    out << "# schema=" << kCsvSchemaVersion << '\n';
    out << "n,depth,p_f_star,s_max,epsilon\n";
    for (const auto &tp : points) {
        out << n << ',' << tp.depth << ',' << format_number(tp.p_f_star) << ',' << format_number(tp.s_max) << ','
            << format_number(epsilon) << '\n';
    }
}

nlohmann::json to_json(const CircuitConfig &config) {
    nlohmann::json j;
    j["n"] = config.n;
    j["depth"] = config.depth;
    j["p_m"] = config.p_m;
    j["p_f"] = config.p_f;
    j["initial"] = std::string(to_string(config.initial));
    j["boundary"] = "periodic";
    j["realizations"] = config.realizations;
    j["master_seed"] = config.master_seed;
    nlohmann::json obs;
    obs["total_entropy_series"] = true;
    obs["subsystem_entropies"] = config.observables.subsystems;
    if (config.observables.mutual_information) {
        obs["mutual_information"] = {{"a", config.observables.mutual_information->a},
                                     {"b", config.observables.mutual_information->b}};
    }
    j["observables"] = obs;
    return j;
}

nlohmann::json to_json(const SweepSpec &spec) {
    nlohmann::json j;
    j["base"] = to_json(spec.base);
    j["axis1"] = {{"parameter", std::string(to_string(spec.axis1.parameter))}, {"values", spec.axis1.values}};
    if (spec.axis2) {
        j["axis2"] = {{"parameter", std::string(to_string(spec.axis2->parameter))}, {"values", spec.axis2->values}};
    }
    j["observable"] = spec.observable == SweepObservable::EntropyDensity ? "entropy_density" : "mutual_information";
    return j;
}

nlohmann::json to_json(const FitResult &fit) {
    nlohmann::json j;
    j["model"] = std::string(to_string(fit.model));
    for (std::size_t k = 0; k < fit.names.size(); ++k) {
        j["estimates"][fit.names[k]] = fit.estimates[k];
        j["std_errors"][fit.names[k]] = fit.std_errors[k];
    }
    j["residual_norm"] = fit.residual_norm;
    j["points_used"] = fit.points_used;
    j["iterations"] = fit.iterations;
    return j;
}

nlohmann::json conventions_json() {
    return {
        {"stratum_order", {"gates", "measurements", "forgets"}},
        {"layer", "one brickwork row of two-qubit Cliffords followed by its measurement and forget strata"},
        {"observable_snapshot", "after the forget stratum of each layer; index 0 is the initial state"},
        {"entropy_base", "log2 (bits)"},
        {"site_selection", "independent Bernoulli per site and stratum"},
        {"boundary", "periodic"},
        {"seeding", "trajectory k uses substreams derive_seed(master_seed, k, 0|1); all grid points share master_seed"},
        {"stderr", "sample standard deviation / sqrt(realizations)"},
    };
}

void write_trajectory_jsonl(std::ostream &out, const CircuitConfig &config, const std::vector<TrajectoryRecord> &records) {
    for (const auto &r : records) {
        nlohmann::json j;
        j["trajectory"] = r.trajectory_index;
        j["seed"] = r.seed;
        j["n"] = config.n;
        j["depth"] = config.depth;
        j["p_m"] = config.p_m;
        j["p_f"] = config.p_f;
        j["entropy"] = r.entropy;
        if (!r.subsystem_entropy.empty()) {
            j["subsystem_entropy"] = r.subsystem_entropy;
        }
        if (!r.mutual_information.empty()) {
            j["mutual_information"] = r.mutual_information;
        }
        j["final_rank"] = r.final_rank;
        out << j.dump() << '\n';
    }
}

}  // namespace forgetsim
