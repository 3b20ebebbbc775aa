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
#include <benchmark/benchmark.h>

#include "forgetsim/circuit.hpp"
#include "forgetsim/clifford.hpp"
#include "forgetsim/pauli.hpp"
#include "forgetsim/stabilizer_state.hpp"

using namespace forgetsim;

namespace {

StabilizerState scrambled(std::size_t n, double p_f, RandomStream &rng) {
    auto s = StabilizerState::pure_zero(n);
    for (std::size_t t = 0; t < 2 * n; ++t) {
        for (auto [i, j] : brickwork_pairs(n, t)) {
            s.apply_clifford2(sample_uniform(rng), i, j);
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (rng.bernoulli(p_f)) {
                s.forget_z(q);
            }
        }
    }
    return s;
}

void BM_SampleUniform(benchmark::State &state) {
    RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_uniform(rng));
    }
}
BENCHMARK(BM_SampleUniform);

void BM_PauliMultiply(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    PauliString a(n), b(n);
    RandomStream rng(2);
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t k = 0; k < n; ++k) {
        a.set_letter(k, letters[rng.below(4)]);
        b.set_letter(k, letters[rng.below(4)]);
    }
    for (auto _ : state) {
        a *= b;
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_PauliMultiply)->Arg(64)->Arg(256)->Arg(1024);

void BM_ApplyGate(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(3);
    auto s = scrambled(n, 0.0, rng);
    auto gate = sample_uniform(rng);
    std::size_t i = 0;
    for (auto _ : state) {
        s.apply_clifford2(gate, i, (i + 1) % n);
        i = (i + 2) % n;
    }
}
BENCHMARK(BM_ApplyGate)->Arg(64)->Arg(256)->Arg(1024);

void BM_MeasureZ(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(4);
    auto base = scrambled(n, 0.05, rng);
    RandomOutcomes outcomes(rng);
    std::size_t q = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto s = base;
        state.ResumeTiming();
        benchmark::DoNotOptimize(s.measure_z(q, outcomes));
        q = (q + 7) % n;
    }
}
BENCHMARK(BM_MeasureZ)->Arg(64)->Arg(256);

void BM_ForgetZ(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(5);
    auto base = scrambled(n, 0.0, rng);
    std::size_t q = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto s = base;
        state.ResumeTiming();
        s.forget_z(q);
        q = (q + 7) % n;
    }
}
BENCHMARK(BM_ForgetZ)->Arg(64)->Arg(256);

void BM_HalfSystemEntropy(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(6);
    auto s = scrambled(n, 0.02, rng);
    std::vector<std::size_t> half(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        half[k] = k;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.subsystem_entropy(half));
    }
}
BENCHMARK(BM_HalfSystemEntropy)->Arg(64)->Arg(256);

void BM_Trajectory(benchmark::State &state) {
    CircuitConfig c;
    c.n = static_cast<std::size_t>(state.range(0));
    c.depth = c.n;
    c.p_m = 0.1;
    c.p_f = 0.1;
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trajectory(c, k++));
    }
}
BENCHMARK(BM_Trajectory)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
