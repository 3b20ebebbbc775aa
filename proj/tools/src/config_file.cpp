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
#include "config_file.hpp"

#include <fstream>

namespace forgetsim::cli {
namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream &in, const std::string &origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": missing key before '='");
        }
        if (value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": missing value for '" + key + "'");
        }
        if (cfg.entries_.count(key) != 0) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(cfg.entries_[key].line) + ")");
        }
        cfg.entries_[key] = ConfigEntry{value, line_no};
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    return parse(in, path);
}

}  // namespace forgetsim::cli
