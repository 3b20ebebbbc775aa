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
#include "forgetsim/circuit.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <new>
#include <thread>

#include "forgetsim/errors.hpp"

namespace forgetsim {

std::string_view to_string(InitialState initial) {
    return initial == InitialState::PureZero ? "pure_zero" : "maximally_mixed";
}

std::optional<InitialState> parse_initial_state(std::string_view text) {
    if (text == "pure_zero" || text == "pure") {
        return InitialState::PureZero;
    }
    if (text == "maximally_mixed" || text == "mixed") {
        return InitialState::MaximallyMixed;
    }
    return std::nullopt;
}

Bipartition half_bipartition(std::size_t n) {
    Bipartition bp;
    for (std::size_t s = 0; s < n; ++s) {
        (s < n / 2 ? bp.a : bp.b).push_back(s);
    }
    return bp;
}

namespace {

void check_sites(const SiteSet &sites, std::size_t n, const char *what) {
    std::vector<bool> seen(n, false);
    for (std::size_t s : sites) {
        if (s >= n) {
            throw ArgumentError(std::string(what) + " contains site " + std::to_string(s) + " >= n = " +
                                std::to_string(n));
        }
        if (seen[s]) {
            throw ArgumentError(std::string(what) + " lists site " + std::to_string(s) + " twice");
        }
        seen[s] = true;
    }
}

}  // namespace

void CircuitConfig::validate() const {
    if (n < 2 || n % 2 != 0) {
        throw DimensionError("n must be even and >= 2 for the brickwork ring, got " + std::to_string(n));
    }
    if (!(p_m >= 0.0 && p_m <= 1.0)) {
        throw ArgumentError("p_m must lie in [0, 1]");
    }
    if (!(p_f >= 0.0 && p_f <= 1.0)) {
        throw ArgumentError("p_f must lie in [0, 1]");
    }
    if (realizations < 1) {
        throw ArgumentError("realizations must be >= 1");
    }
    for (const auto &sub : observables.subsystems) {
        check_sites(sub, n, "subsystem");
    }
    if (observables.mutual_information) {
        const auto &bp = *observables.mutual_information;
        check_sites(bp.a, n, "subsystem A");
        check_sites(bp.b, n, "subsystem B");
        std::vector<bool> in_a(n, false);
        for (std::size_t s : bp.a) {
            in_a[s] = true;
        }
        for (std::size_t s : bp.b) {
            if (in_a[s]) {
                throw ArgumentError("subsystems A and B overlap at site " + std::to_string(s));
            }
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> brickwork_pairs(std::size_t n, std::size_t layer) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n / 2);
    const std::size_t offset = layer % 2;
    for (std::size_t k = 0; k < n / 2; ++k) {
        pairs.emplace_back((2 * k + offset) % n, (2 * k + 1 + offset) % n);
    }
    return pairs;
}

LayerPlan build_layer_plan(const CircuitConfig &config, std::size_t layer, RandomStream &rng) {
    LayerPlan plan;
    plan.layer = layer;
    for (auto [i, j] : brickwork_pairs(config.n, layer)) {
        plan.gates.push_back(GateAction{sample_uniform(rng), i, j});
    }
    for (std::size_t s = 0; s < config.n; ++s) {
        if (rng.bernoulli(config.p_m)) {
            plan.measured.push_back(s);
        }
    }
    for (std::size_t s = 0; s < config.n; ++s) {
        if (rng.bernoulli(config.p_f)) {
            plan.forgotten.push_back(s);
        }
    }
    return plan;
}

StabilizerState initial_state(const CircuitConfig &config) {
    return config.initial == InitialState::PureZero ? StabilizerState::pure_zero(config.n)
                                                    : StabilizerState::maximally_mixed(config.n);
}

namespace {

void record_observables(const CircuitConfig &config, const StabilizerState &state, TrajectoryRecord &rec) {
    rec.entropy.push_back(static_cast<std::int32_t>(state.entropy()));
    for (std::size_t k = 0; k < config.observables.subsystems.size(); ++k) {
        rec.subsystem_entropy[k].push_back(static_cast<std::int32_t>(state.subsystem_entropy(config.observables.subsystems[k])));
    }
    if (config.observables.mutual_information) {
        const auto &bp = *config.observables.mutual_information;
        rec.mutual_information.push_back(static_cast<std::int32_t>(state.mutual_information(bp.a, bp.b)));
    }
}

}  // namespace

TrajectoryRecord run_trajectory(const CircuitConfig &config, std::uint64_t trajectory_index, TrajectoryObserver *observer) {
    config.validate();
    TrajectoryRecord rec;
    rec.trajectory_index = trajectory_index;
    rec.seed = derive_seed(config.master_seed, trajectory_index, 0);
    rec.subsystem_entropy.resize(config.observables.subsystems.size());

    std::size_t layer = 0;
    try {
        RandomStream circuit_rng(rec.seed);
        RandomStream outcome_rng(derive_seed(config.master_seed, trajectory_index, 1));
        RandomOutcomes outcomes(outcome_rng);

        StabilizerState state = initial_state(config);
        rec.entropy.reserve(config.depth + 1);
        record_observables(config, state, rec);
        if (observer) {
            observer->on_layer(0, state);
        }
        for (layer = 0; layer < config.depth; ++layer) {
            LayerPlan plan = build_layer_plan(config, layer, circuit_rng);
            for (const auto &g : plan.gates) {
                state.apply_clifford2(g.gate, g.first, g.second);
                if (observer) {
                    observer->on_action(g);
                }
            }
            for (std::size_t s : plan.measured) {
                int outcome = state.measure_z(s, outcomes);
                if (observer) {
                    observer->on_action(MeasureAction{s, outcome});
                }
            }
            for (std::size_t s : plan.forgotten) {
                state.forget_z(s);
                if (observer) {
                    observer->on_action(ForgetAction{s});
                }
            }
            record_observables(config, state, rec);
            if (observer) {
                observer->on_layer(layer + 1, state);
            }
        }
        rec.final_rank = state.rank();
    } catch (const RunError &) {
        throw;
    } catch (const std::bad_alloc &) {
        throw RunError(trajectory_index, layer, "out of memory");
    } catch (const std::exception &e) {
        throw RunError(trajectory_index, layer, e.what());
    }
    return rec;
}

Stat summarize(const std::vector<double> &values) {
    Stat s;
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        const double var = ss / static_cast<double>(values.size() - 1);
        s.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return s;
}

namespace {

std::vector<Stat> summarize_series(const std::vector<TrajectoryRecord> &records,
                                   const std::vector<std::int32_t> &(*pick)(const TrajectoryRecord &, std::size_t),
                                   std::size_t which, std::size_t length) {
    std::vector<Stat> out(length);
    std::vector<double> column(records.size());
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t k = 0; k < records.size(); ++k) {
            column[k] = static_cast<double>(pick(records[k], which)[t]);
        }
        out[t] = summarize(column);
    }
    return out;
}

}  // namespace

EnsembleResult run_ensemble(const CircuitConfig &config, std::size_t workers, std::vector<TrajectoryRecord> *records_out) {
    config.validate();
    const std::size_t count = config.realizations;
    std::vector<TrajectoryRecord> records(count);
    std::vector<std::exception_ptr> errors(count);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
            try {
                records[k] = run_trajectory(config, k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    EnsembleResult result;
    result.config = config;
    result.realizations = count;
    const std::size_t length = config.depth + 1;
    result.entropy = summarize_series(
        records, [](const TrajectoryRecord &r, std::size_t) -> const std::vector<std::int32_t> & { return r.entropy; }, 0,
        length);
    for (std::size_t s = 0; s < config.observables.subsystems.size(); ++s) {
        result.subsystem_entropy.push_back(summarize_series(
            records,
            [](const TrajectoryRecord &r, std::size_t w) -> const std::vector<std::int32_t> & {
                return r.subsystem_entropy[w];
            },
            s, length));
    }
    if (config.observables.mutual_information) {
        result.mutual_information = summarize_series(
            records,
            [](const TrajectoryRecord &r, std::size_t) -> const std::vector<std::int32_t> & {
                return r.mutual_information;
            },
            0, length);
    }
    if (records_out) {
        *records_out = std::move(records);
    }
    return result;
}

}  // namespace forgetsim
