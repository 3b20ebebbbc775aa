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
#include <cstdint>
#include <random>
#include <vector>

namespace forgetsim {

/// SplitMix64 finalizer. Used to derive statistically independent seeds from
/// (master seed, counter) tuples.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed of substream `stream` belonging to trajectory `trajectory`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trajectory, std::uint64_t stream = 0) {
    return mix64(mix64(mix64(master_seed) ^ trajectory) ^ (stream * 0xD1B54A32D192ED03ull));
}

/// Random bit source with platform-independent derived draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded integers and doubles are derived here rather than through
/// the <random> distributions, whose algorithms differ between standard
/// libraries.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {
    }

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// True with probability p; p <= 0 never fires and p >= 1 always does.
    bool bernoulli(double p) {
        return uniform01() < p;
    }

    bool coin() {
        return (engine_() >> 63) != 0;
    }

   private:
    std::mt19937_64 engine_;
};

/// Supplies the signs of non-deterministic measurement outcomes.
class OutcomeSource {
   public:
    virtual ~OutcomeSource() = default;
    /// Returns +1 or -1.
    virtual int next_outcome() = 0;
};

/// Fair coin flips from a RandomStream (held by reference).
class RandomOutcomes final : public OutcomeSource {
   public:
    explicit RandomOutcomes(RandomStream &stream) : stream_(stream) {
    }
    int next_outcome() override {
        return stream_.coin() ? -1 : +1;
    }

   private:
    RandomStream &stream_;
};

/// Replays a fixed list of outcomes; throws ArgumentError once exhausted.
class ScriptedOutcomes final : public OutcomeSource {
   public:
    explicit ScriptedOutcomes(std::vector<int> outcomes) : outcomes_(std::move(outcomes)) {
    }
    int next_outcome() override;

    std::size_t consumed() const noexcept {
        return next_;
    }

   private:
    std::vector<int> outcomes_;
    std::size_t next_ = 0;
};

/// Always returns the same sign. Handy for tests of deterministic branches.
class FixedOutcome final : public OutcomeSource {
   public:
    explicit FixedOutcome(int outcome) : outcome_(outcome < 0 ? -1 : +1) {
    }
    int next_outcome() override {
        return outcome_;
    }

   private:
    int outcome_;
};

}  // namespace forgetsim
