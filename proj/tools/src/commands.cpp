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
#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "config_file.hpp"
#include "forgetsim/errors.hpp"
#include "forgetsim/experiments.hpp"
#include "forgetsim/fit.hpp"
#include "forgetsim/oracle_check.hpp"
#include "forgetsim/results_io.hpp"
#include "forgetsim/version.hpp"
#include "options.hpp"

namespace forgetsim::cli {
namespace {

using nlohmann::json;

std::string utc_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> range(double start, double stop, double step) {
    std::vector<double> v;
    auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
    for (std::size_t k = 0; k < count; ++k) {
        v.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return v;
}

std::size_t single(const std::vector<std::size_t> &values, const char *key, const std::string &command) {
    if (values.size() != 1) {
        throw ConfigError(std::string(key) + ": " + command + " takes exactly one value");
    }
    return values.front();
}

double single(const std::vector<double> &values, const char *key, const std::string &command) {
    if (values.size() != 1) {
        throw ConfigError(std::string(key) + ": " + command + " takes exactly one value");
    }
    return values.front();
}

/// Collects outputs, writes files, and assembles the manifest.
class Session {
   public:
    Session(std::string command, const RunOptions &options, std::ostream &out, std::ostream &err)
        : command_(std::move(command)), options_(options), out_(out), err_(err) {
        manifest_["command"] = command_;
        manifest_["started_at"] = utc_now();
        manifest_["code_version"] = kCodeVersion;
        manifest_["project_version"] = kProjectVersion;
        manifest_["master_seed"] = options.seed;
        manifest_["workers"] = workers();
        manifest_["outputs"] = json::array();
        manifest_["conventions"] = conventions_json();
        manifest_["fits"] = json::array();
        if (options.out.empty()) {
            stem_ = "forgetsim_" + command_;
            for (auto &c : stem_) {
                if (c == '-') {
                    c = '_';
                }
            }
        } else {
            stem_ = options.out;
        }
    }

    bool streaming() const {
        return stem_ == "-";
    }

    std::size_t workers() const {
        return options_.workers.value_or(1);
    }

    SweepOptions sweep_options() {
        SweepOptions so;
        so.workers = workers();
        if (!options_.quiet) {
            so.progress = [this](const std::string &msg) { err_ << "[" << command_ << "] " << msg << '\n'; };
        }
        if (options_.dump_trajectories && !streaming()) {
            so.records = [this](const CircuitConfig &cfg, const std::vector<TrajectoryRecord> &records) {
                write_trajectory_jsonl(trajectories_, cfg, records);
            };
        }
        return so;
    }

    json &manifest() {
        return manifest_;
    }

    /// Writes a CSV produced by `writer`. The primary table (suffix "")
    /// streams to stdout under `--out -`; secondary tables are skipped then.
    void emit_csv(const std::string &suffix, const std::function<void(std::ostream &)> &writer) {
        if (streaming()) {
            if (suffix.empty()) {
                writer(out_);
            }
            return;
        }
        std::string path = stem_ + suffix + ".csv";
        std::ofstream file(path);
        if (!file) {
            throw std::runtime_error("cannot write " + path);
        }
        writer(file);
        if (!file) {
            throw std::runtime_error("failed writing " + path);
        }
        manifest_["outputs"].push_back(path);
    }

    void finish() {
        if (streaming()) {
            return;
        }
        if (options_.dump_trajectories) {
            std::string path = stem_ + ".jsonl";
            std::ofstream file(path);
            file << trajectories_.str();
            if (!file) {
                throw std::runtime_error("failed writing " + path);
            }
            manifest_["outputs"].push_back(path);
        }
        std::string path = stem_ + ".json";
        manifest_["outputs"].push_back(path);
        manifest_["finished_at"] = utc_now();
        std::ofstream file(path);
        file << manifest_.dump(2) << '\n';
        if (!file) {
            throw std::runtime_error("failed writing " + path);
        }
        if (!options_.quiet) {
            err_ << "[" << command_ << "] wrote " << manifest_["outputs"].size() << " file(s) with stem " << stem_
                 << '\n';
        }
    }

   private:
    std::string command_;
    const RunOptions &options_;
    std::ostream &out_;
    std::ostream &err_;
    std::string stem_;
    json manifest_;
    std::ostringstream trajectories_;
};

CircuitConfig base_config(const RunOptions &o, std::size_t n, std::size_t depth, double p_m, double p_f) {
    CircuitConfig cfg;
    cfg.n = n;
    cfg.depth = depth;
    cfg.p_m = p_m;
    cfg.p_f = p_f;
    cfg.initial = o.initial.value_or(InitialState::PureZero);
    cfg.realizations = o.realizations;
    cfg.master_seed = o.seed;
    return cfg;
}

/// Runs validate() and rethrows argument problems as ConfigError.
template <typename T>
void check(const T &spec) {
    try {
        spec.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    } catch (const std::out_of_range &e) {
        throw ConfigError(e.what());
    }
}

void defaults(RunOptions &o, std::vector<std::size_t> n, std::vector<std::size_t> depth, std::vector<double> p_m,
              std::vector<double> p_f) {
    if (o.n.empty()) {
        o.n = std::move(n);
    }
    if (o.depth.empty()) {
        o.depth = std::move(depth);
    }
    if (o.p_m.empty()) {
        o.p_m = std::move(p_m);
    }
    if (o.p_f.empty()) {
        o.p_f = std::move(p_f);
    }
}

json epsilon_conventions(const RunOptions &o) {
    json j;
    j["epsilon"] = o.epsilon;
    j["resolution"] = o.resolution;
    j["s_max"] = o.s_max ? json(*o.s_max) : json("largest curve mean");
    return j;
}

void cmd_forget_sweep(RunOptions &o, Session &s) {
    defaults(o, {32}, {8}, {0.0}, range(0.0, 1.0, 0.025));
    std::size_t depth = single(o.depth, "depth", "forget-sweep");
    double p_m = single(o.p_m, "p_m", "forget-sweep");
    if (p_m != 0.0) {
        throw ConfigError("p_m: forget-sweep requires p_m = 0 (use phase-diagram for p_m > 0)");
    }
    std::vector<SweepSpec> specs;
    for (std::size_t n : o.n) {
        SweepSpec spec;
        spec.base = base_config(o, n, depth, 0.0, 0.0);
        spec.axis1 = {SweepParameter::ForgetRate, o.p_f};
        check(spec);
        specs.push_back(spec);
    }
    std::vector<ResultRow> rows;
    s.manifest()["sweeps"] = json::array();
    for (const auto &spec : specs) {
        Curve curve = sweep_forget_rate(spec, s.sweep_options());
        auto part = rows_from_curve(spec.base, spec.axis1.parameter, curve);
        rows.insert(rows.end(), part.begin(), part.end());
        s.manifest()["sweeps"].push_back(to_json(spec));
    }
    s.emit_csv("", [&](std::ostream &os) { write_results_csv(os, rows, "s_per_n", false); });
}

void cmd_time_series(RunOptions &o, Session &s) {
    defaults(o, {32, 64, 128}, {32}, {0.0}, {0.1});
    std::size_t depth = single(o.depth, "depth", "time-series");
    double p_m = single(o.p_m, "p_m", "time-series");
    std::vector<ResultRow> rows;
    SweepSpec spec;
    if (o.n.size() > 1) {
        spec.base = base_config(o, o.n.front(), depth, p_m, single(o.p_f, "p_f", "time-series over n"));
        std::vector<double> ns(o.n.begin(), o.n.end());
        spec.axis1 = {SweepParameter::SystemSize, ns};
    } else {
        spec.base = base_config(o, o.n.front(), depth, p_m, o.p_f.front());
        spec.axis1 = {SweepParameter::ForgetRate, o.p_f};
    }
    check(spec);
    auto series = time_series(spec, s.sweep_options());
    rows = rows_from_series(spec.base, spec.axis1.parameter, series);
    s.manifest()["sweeps"] = json::array({to_json(spec)});
    s.emit_csv("", [&](std::ostream &os) { write_results_csv(os, rows, "s_per_n", true); });
}

void cmd_turning_points(RunOptions &o, Session &s) {
    defaults(o, {64}, {4, 8, 16, 32, 64}, {0.0}, range(0.0, 1.0, 0.02));
    std::size_t n = single(o.n, "n", "turning-points");
    if (single(o.p_m, "p_m", "turning-points") != 0.0) {
        throw ConfigError("p_m: turning-points requires p_m = 0");
    }
    SweepSpec spec;
    spec.base = base_config(o, n, o.depth.front(), 0.0, 0.0);
    spec.axis1 = {SweepParameter::ForgetRate, o.p_f};
    check(spec);
    TurningPointOptions tp;
    tp.epsilon = o.epsilon;
    tp.resolution = o.resolution;
    tp.s_max = o.s_max;
    auto points = turning_points(spec, o.depth, tp, s.sweep_options());

    std::vector<ResultRow> curve_rows;
    std::vector<Point> fit_points;
    for (const auto &t : points) {
        CircuitConfig cfg = spec.base;
        cfg.depth = t.depth;
        auto part = rows_from_curve(cfg, SweepParameter::ForgetRate, t.curve);
        curve_rows.insert(curve_rows.end(), part.begin(), part.end());
        fit_points.emplace_back(static_cast<double>(t.depth), t.p_f_star);
    }
    s.manifest()["sweeps"] = json::array({to_json(spec)});
    s.manifest()["depths"] = o.depth;
    s.manifest()["conventions"]["turning_point"] = epsilon_conventions(o);
    try {
        s.manifest()["fits"].push_back(to_json(fit_power_law(fit_points)));
    } catch (const DomainError &e) {
        s.manifest()["fits"].push_back({{"model", "power_law"}, {"error", e.what()}});
    }
    s.emit_csv("", [&](std::ostream &os) { write_turning_points_csv(os, n, points, o.epsilon); });
    s.emit_csv("_curves", [&](std::ostream &os) { write_results_csv(os, curve_rows, "s_per_n", false); });
}

void cmd_phase_diagram(RunOptions &o, Session &s) {
    defaults(o, {64}, {64}, range(0.0, 0.375, 0.025), range(0.0, 0.375, 0.025));
    SweepSpec spec;
    spec.base = base_config(o, single(o.n, "n", "phase-diagram"), single(o.depth, "depth", "phase-diagram"), 0.0, 0.0);
    spec.axis1 = {SweepParameter::ForgetRate, o.p_f};
    spec.axis2 = SweepAxis{SweepParameter::MeasurementRate, o.p_m};
    check(spec);
    auto diagram = sweep_phase_diagram(spec, s.sweep_options());
    auto rows = rows_from_diagram(spec.base, diagram);
    s.manifest()["sweeps"] = json::array({to_json(spec)});
    s.emit_csv("", [&](std::ostream &os) { write_results_csv(os, rows, "s_per_n", false); });
}

void cmd_mutual_info(RunOptions &o, Session &s) {
    defaults(o, {64}, {256}, {0.0}, {0.0, 0.001, 0.0025, 0.005, 0.01, 0.02});
    SweepSpec spec;
    std::size_t n = single(o.n, "n", "mutual-info");
    spec.base = base_config(o, n, single(o.depth, "depth", "mutual-info"), o.p_m.front(), o.p_f.front());
    spec.axis1 = {SweepParameter::ForgetRate, o.p_f};
    if (o.p_m.size() > 1) {
        spec.axis2 = SweepAxis{SweepParameter::MeasurementRate, o.p_m};
    }
    spec.observable = SweepObservable::MutualInformation;
    Bipartition parts{o.subsystem_a, o.subsystem_b};
    if (parts.a.empty() != parts.b.empty()) {
        throw ConfigError("subsystem_a/subsystem_b: set both or neither");
    }
    if (parts.a.empty()) {
        parts = half_bipartition(n);
    }
    CircuitConfig probe = spec.base;
    probe.observables.mutual_information = parts;
    check(probe);
    check(spec);
    auto points = mutual_information_sweep(spec, parts, s.sweep_options());
    auto rows = rows_from_mutual_info(spec, points, o.per_layer);
    s.manifest()["sweeps"] = json::array({to_json(spec)});
    s.manifest()["conventions"]["bipartition"] = {{"a", parts.a}, {"b", parts.b}};
    s.manifest()["conventions"]["mutual_information_reported"] = o.per_layer ? "every layer" : "final layer";
    s.emit_csv("", [&](std::ostream &os) { write_results_csv(os, rows, "mutual_info_bits", o.per_layer); });
}

void cmd_purification(RunOptions &o, Session &s) {
    if (o.initial && *o.initial != InitialState::MaximallyMixed) {
        throw ConfigError("initial: purification starts from maximally_mixed");
    }
    o.initial = InitialState::MaximallyMixed;
    defaults(o, {128}, {}, range(0.0, 0.3, 0.01), {0.0, 0.05});
    std::size_t n = single(o.n, "n", "purification");
    std::size_t depth = o.depth.empty() ? n : single(o.depth, "depth", "purification");
    std::vector<SweepSpec> specs;
    for (double p_f : o.p_f) {
        SweepSpec spec;
        spec.base = base_config(o, n, depth, 0.0, p_f);
        spec.axis1 = {SweepParameter::MeasurementRate, o.p_m};
        check(spec);
        specs.push_back(spec);
    }
    CriticalFitOptions fit_options;
    fit_options.window_lo = o.window_lo;
    fit_options.window_hi = o.window_hi;
    fit_options.noise_floor = o.noise_floor;
    std::vector<ResultRow> rows;
    s.manifest()["sweeps"] = json::array();
    s.manifest()["conventions"]["purification_depth"] = o.is_set("depth") ? "explicit" : "depth = n";
    s.manifest()["conventions"]["critical_fit"] = {
        {"window", {o.window_lo, o.window_hi}}, {"noise_floor", o.noise_floor},
        {"initialization", "p_c = largest p_m with S/N above the noise floor; v = 1; A from the first window point"}};
    for (const auto &spec : specs) {
        Curve curve = purification_curve(spec, s.sweep_options());
        auto part = rows_from_curve(spec.base, spec.axis1.parameter, curve);
        rows.insert(rows.end(), part.begin(), part.end());
        s.manifest()["sweeps"].push_back(to_json(spec));
        json fit;
        try {
            auto points = curve_points(curve);
            fit = to_json(fit_critical(points, fit_options));
        } catch (const std::exception &e) {
            fit = {{"model", "critical"}, {"error", e.what()}};
        }
        fit["p_f"] = spec.base.p_f;
        s.manifest()["fits"].push_back(fit);
    }
    s.emit_csv("", [&](std::ostream &os) { write_results_csv(os, rows, "s_per_n", false); });
}

int cmd_selftest(const RunOptions &o, std::ostream &err) {
    OracleCheckOptions options;
    if (o.is_set("seed")) {
        options.seed = o.seed;
    }
    auto report = run_oracle_equivalence(options);
    err << "oracle equivalence: " << report.trajectories << " synthetic + " << report.engine_trajectories
        << " engine trajectories, " << report.actions << " actions, " << report.comparisons << " comparisons\n"
        << "max deviation: entropy " << report.max_entropy_deviation << " bits, density "
        << report.max_density_deviation << ", probability " << report.max_probability_deviation << '\n';
    for (const auto &f : report.failures) {
        err << "FAIL " << f << '\n';
    }
    err << (report.passed() ? "selftest passed\n" : "selftest FAILED\n");
    return report.passed() ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"measure-and-forget random Clifford circuit experiments", "forgetsim"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::optional<std::string> config_path;
    std::map<std::string, std::optional<std::string>> flag_values;
    bool quiet = false;
    const std::vector<std::pair<std::string, std::string>> flags{
        {"n", "--n"},
        {"depth", "--depth"},
        {"p_m", "--pm"},
        {"p_f", "--pf"},
        {"initial", "--initial"},
        {"realizations", "--realizations"},
        {"seed", "--seed"},
        {"workers", "--workers"},
        {"out", "--out"},
        {"epsilon", "--epsilon"},
        {"s_max", "--s-max"},
        {"window_lo", "--window-lo"},
        {"window_hi", "--window-hi"},
    };
    const std::vector<std::pair<std::string, std::string>> commands{
        {"forget-sweep", "Final-layer S/N against the forget rate (p_m = 0)"},
        {"time-series", "S/N after every layer, over n or p_f"},
        {"turning-points", "Turning point p_f* for each depth and its power-law fit"},
        {"phase-diagram", "Final-layer S/N on a (p_m, p_f) grid"},
        {"mutual-info", "Mutual information between two subsystems against p_f"},
        {"purification", "Residual S/N from the maximally mixed state against p_m, with critical fit"},
        {"selftest", "Compare the stabilizer simulator with the dense oracle"},
    };
    bool per_layer = false;
    bool dump = false;
    for (const auto &[name, description] : commands) {
        auto *sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "key = value configuration file");
        for (const auto &[key, flag] : flags) {
            sub->add_option(flag, flag_values[key], "overrides config key '" + key + "'");
        }
        sub->add_flag("--per-layer", per_layer, "mutual-info: one row per layer");
        sub->add_flag("--dump-trajectories", dump, "also write STEM.jsonl with every trajectory");
        sub->add_flag("-q,--quiet", quiet, "no progress output");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        err << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        const CLI::App *context = &app;
        if (!app.get_subcommands().empty()) {
            context = app.get_subcommands().front();
        }
        err << "error: " << e.what() << "\n\n" << context->help();
        return kExitConfig;
    }
    CLI::App *sub = app.get_subcommands().front();
    std::string command = sub->get_name();

    RunOptions options;
    try {
        options.workers = workers_from_environment();
        if (config_path) {
            apply_config(options, ConfigFile::load(*config_path));
        }
        for (const auto &[key, flag] : flags) {
            if (flag_values[key]) {
                apply_setting(options, key, *flag_values[key], flag);
            }
        }
        if (per_layer) {
            apply_setting(options, "per_layer", "true", "--per-layer");
        }
        if (dump) {
            apply_setting(options, "dump_trajectories", "true", "--dump-trajectories");
        }
        options.quiet = quiet;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return kExitConfig;
    }

    if (command == "selftest") {
        return cmd_selftest(options, err);
    }

    try {
        Session session(command, options, out, err);
        if (command == "forget-sweep") {
            cmd_forget_sweep(options, session);
        } else if (command == "time-series") {
            cmd_time_series(options, session);
        } else if (command == "turning-points") {
            cmd_turning_points(options, session);
        } else if (command == "phase-diagram") {
            cmd_phase_diagram(options, session);
        } else if (command == "mutual-info") {
            cmd_mutual_info(options, session);
        } else if (command == "purification") {
            cmd_purification(options, session);
        }
        session.manifest()["config_file"] = config_path ? json(*config_path) : json(nullptr);
        session.manifest()["realizations"] = options.realizations;
        session.finish();
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return kExitConfig;
    } catch (const RunError &e) {
        err << "error: run failed at trajectory " << e.trajectory() << " (layer " << e.layer() << "): " << e.what()
            << '\n';
        return kExitRuntime;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace forgetsim::cli
