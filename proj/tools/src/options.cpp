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
#include "options.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace forgetsim::cli {
namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_double(const std::string &text, const std::string &where) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(where + ": '" + text + "' is not a number");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string &text, const std::string &where) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(where + ": '" + text + "' is not a non-negative integer");
    }
    return value;
}

bool parse_bool(const std::string &text, const std::string &where) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(where + ": '" + text + "' is not a boolean (true/false)");
}

std::vector<std::size_t> parse_site_list(const std::string &text, const std::string &where) {
    std::vector<std::size_t> sites;
    for (const auto &part : split(text, ',')) {
        if (auto dash = part.find('-'); dash != std::string::npos && dash > 0) {
            auto lo = parse_unsigned(trim(part.substr(0, dash)), where);
            auto hi = parse_unsigned(trim(part.substr(dash + 1)), where);
            if (hi < lo) {
                throw ConfigError(where + ": empty site range '" + part + "'");
            }
            for (auto s = lo; s <= hi; ++s) {
                sites.push_back(s);
            }
        } else {
            sites.push_back(parse_unsigned(part, where));
        }
    }
    return sites;
}

}  // namespace

bool RunOptions::is_set(const std::string &key) const {
    return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
}

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys{
        "n",       "depth",      "p_m",   "p_f",       "initial",   "realizations", "seed",
        "workers", "out",        "epsilon", "resolution", "s_max",   "window_lo",    "window_hi",
        "noise_floor", "subsystem_a", "subsystem_b", "per_layer", "dump_trajectories"};
    return keys;
}

std::vector<double> parse_number_list(const std::string &text, const std::string &where) {
    std::vector<double> values;
    for (const auto &part : split(text, ',')) {
        if (part.empty()) {
            throw ConfigError(where + ": empty entry in list '" + text + "'");
        }
        auto fields = split(part, ':');
        if (fields.size() == 1) {
            values.push_back(parse_double(part, where));
        } else if (fields.size() == 3) {
            double start = parse_double(fields[0], where);
            double stop = parse_double(fields[1], where);
            double step = parse_double(fields[2], where);
            if (!(step > 0.0) || stop < start) {
                throw ConfigError(where + ": range '" + part + "' needs start <= stop and step > 0");
            }
            auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::size_t k = 0; k < count; ++k) {
                double v = start + static_cast<double>(k) * step;
                values.push_back(std::round(v * 1e12) / 1e12);
            }
        } else {
            throw ConfigError(where + ": range '" + part + "' must be start:stop:step");
        }
    }
    return values;
}

std::vector<std::size_t> parse_count_list(const std::string &text, const std::string &where) {
    std::vector<std::size_t> counts;
    for (double v : parse_number_list(text, where)) {
        if (v < 0.0 || v != std::floor(v)) {
            throw ConfigError(where + ": '" + text + "' must list non-negative integers");
        }
        counts.push_back(static_cast<std::size_t>(v));
    }
    return counts;
}

void apply_setting(RunOptions &o, const std::string &key, const std::string &value, const std::string &where) {
    if (key == "n") {
        o.n = parse_count_list(value, where);
    } else if (key == "depth") {
        o.depth = parse_count_list(value, where);
    } else if (key == "p_m") {
        o.p_m = parse_number_list(value, where);
    } else if (key == "p_f") {
        o.p_f = parse_number_list(value, where);
    } else if (key == "initial") {
        o.initial = parse_initial_state(value);
        if (!o.initial) {
            throw ConfigError(where + ": initial must be pure_zero or maximally_mixed, got '" + value + "'");
        }
    } else if (key == "realizations") {
        o.realizations = parse_unsigned(value, where);
        if (o.realizations == 0) {
            throw ConfigError(where + ": realizations must be at least 1");
        }
    } else if (key == "seed") {
        o.seed = parse_unsigned(value, where);
    } else if (key == "workers") {
        o.workers = parse_unsigned(value, where);
        if (*o.workers == 0) {
            throw ConfigError(where + ": workers must be at least 1");
        }
    } else if (key == "out") {
        o.out = value;
    } else if (key == "epsilon") {
        o.epsilon = parse_double(value, where);
        if (!(o.epsilon >= 0.0 && o.epsilon < 1.0)) {
            throw ConfigError(where + ": epsilon must lie in [0, 1)");
        }
    } else if (key == "resolution") {
        o.resolution = parse_double(value, where);
        if (!(o.resolution > 0.0)) {
            throw ConfigError(where + ": resolution must be positive");
        }
    } else if (key == "s_max") {
        o.s_max = parse_double(value, where);
        if (!(*o.s_max > 0.0)) {
            throw ConfigError(where + ": s_max must be positive");
        }
    } else if (key == "window_lo") {
        o.window_lo = parse_double(value, where);
    } else if (key == "window_hi") {
        o.window_hi = parse_double(value, where);
    } else if (key == "noise_floor") {
        o.noise_floor = parse_double(value, where);
    } else if (key == "subsystem_a") {
        o.subsystem_a = parse_site_list(value, where);
    } else if (key == "subsystem_b") {
        o.subsystem_b = parse_site_list(value, where);
    } else if (key == "per_layer") {
        o.per_layer = parse_bool(value, where);
    } else if (key == "dump_trajectories") {
        o.dump_trajectories = parse_bool(value, where);
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (!o.is_set(key)) {
        o.explicit_keys.push_back(key);
    }
}

void apply_config(RunOptions &options, const ConfigFile &file) {
    for (const auto &[key, entry] : file.entries()) {
        apply_setting(options, key, entry.value, file.origin() + ":" + std::to_string(entry.line));
    }
}

std::optional<std::size_t> workers_from_environment() {
    const char *raw = std::getenv("FORGETSIM_WORKERS");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    std::string text(raw);
    auto value = parse_unsigned(text, "FORGETSIM_WORKERS");
    if (value == 0) {
        throw ConfigError("FORGETSIM_WORKERS: must be at least 1");
    }
    return value;
}

}  // namespace forgetsim::cli
