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
#include <istream>
#include <map>
#include <stdexcept>
#include <string>

namespace forgetsim::cli {

/// Invalid configuration: bad file syntax, unknown key, or a value that does
/// not parse or validate. Maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    std::string value;
    std::size_t line = 0;
};

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored;
/// keys may appear once.
class ConfigFile {
   public:
    static ConfigFile parse(std::istream &in, const std::string &origin);
    static ConfigFile load(const std::string &path);

    const std::map<std::string, ConfigEntry> &entries() const noexcept {
        return entries_;
    }
    const std::string &origin() const noexcept {
        return origin_;
    }

   private:
    std::string origin_;
    std::map<std::string, ConfigEntry> entries_;
};

}  // namespace forgetsim::cli
