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
#include "forgetsim/random.hpp"

#include <limits>

#include "forgetsim/errors.hpp"

namespace forgetsim {

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) {
        throw ArgumentError("RandomStream::below requires a nonzero bound");
    }
    // Rejection on the largest multiple of bound keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % bound;
}

int ScriptedOutcomes::next_outcome() {
    if (next_ >= outcomes_.size()) {
        throw ArgumentError("scripted outcome list exhausted after " + std::to_string(next_) + " draws");
    }
    int value = outcomes_[next_++];
    if (value != 1 && value != -1) {
        throw ArgumentError("scripted outcome must be +1 or -1, got " + std::to_string(value));
    }
    return value;
}

}  // namespace forgetsim
