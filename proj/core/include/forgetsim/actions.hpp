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
#include <variant>

#include "forgetsim/clifford.hpp"

namespace forgetsim {

struct GateAction {
    CliffordGate2 gate;
    std::size_t first = 0;
    std::size_t second = 0;
};

/// Recorded Z measurement. `outcome` is +1 or -1 once known, 0 when planned.
struct MeasureAction {
    std::size_t site = 0;
    int outcome = 0;
};

/// Z measurement with the outcome discarded (complete dephasing).
struct ForgetAction {
    std::size_t site = 0;
};

using Action = std::variant<GateAction, MeasureAction, ForgetAction>;

}  // namespace forgetsim
