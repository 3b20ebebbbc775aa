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
#include "forgetsim/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <variant>

#include "forgetsim/circuit.hpp"
#include "forgetsim/clifford.hpp"
#include "forgetsim/dense_oracle.hpp"
#include "forgetsim/random.hpp"
#include "forgetsim/stabilizer_state.hpp"

namespace forgetsim {
namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

class Comparator {
   public:
    Comparator(OracleCheckReport &report, double tolerance) : report_(report), tolerance_(tolerance) {
    }

    void set_context(std::string context) {
        context_ = std::move(context);
    }

    void check(const char *what, double expected, double actual, double &worst) {
        ++report_.comparisons;
        double dev = std::abs(expected - actual);
        worst = std::max(worst, dev);
        if (!(dev <= tolerance_)) {
            fail(what, expected, actual);
        }
    }

    void fail(const char *what, double expected, double actual) {
        if (report_.failures.size() < kMaxRecordedFailures) {
            std::ostringstream os;
            os << context_ << ": " << what << " stabilizer=" << expected << " dense=" << actual;
            report_.failures.push_back(os.str());
        } else if (report_.failures.size() == kMaxRecordedFailures) {
            report_.failures.push_back("further failures omitted");
        }
    }

    void compare_states(const StabilizerState &s, const DenseState &d) {
        std::size_t n = s.num_qubits();
        check("entropy", static_cast<double>(s.entropy()), d.exact_entropy(), report_.max_entropy_deviation);
        for (std::size_t q = 0; q < n; ++q) {
            std::size_t site[1] = {q};
            check("site entropy", static_cast<double>(s.subsystem_entropy(site)), d.exact_entropy(site),
                  report_.max_entropy_deviation);
        }
        std::vector<std::size_t> a(n / 2), b(n - n / 2);
        std::iota(a.begin(), a.end(), std::size_t{0});
        std::iota(b.begin(), b.end(), n / 2);
        if (!a.empty()) {
            check("half entropy", static_cast<double>(s.subsystem_entropy(a)), d.exact_entropy(a),
                  report_.max_entropy_deviation);
            check("mutual information", static_cast<double>(s.mutual_information(a, b)), d.mutual_information(a, b),
                  report_.max_entropy_deviation);
        }
        DenseState rebuilt = DenseState::from_stabilizer(s);
        check("density matrix", 0.0, (rebuilt.rho() - d.rho()).cwiseAbs().maxCoeff(), report_.max_density_deviation);
        double violation = d.invariant_violation();
        report_.max_invariant_violation = std::max(report_.max_invariant_violation, violation);
        if (violation > tolerance_) {
            fail("invariant violation", 0.0, violation);
        }
    }

    void compare_measurement(ZMeasurementKind kind, const DenseState &before, std::size_t site, int outcome) {
        double expected = kind == ZMeasurementKind::Deterministic ? 1.0 : 0.5;
        check("outcome probability", expected, before.outcome_probability(site, outcome),
              report_.max_probability_deviation);
    }

   private:
    OracleCheckReport &report_;
    double tolerance_;
    std::string context_;
};

std::vector<std::pair<std::size_t, std::size_t>> random_pairing(std::size_t n, RandomStream &rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = n; k > 1; --k) {
        std::swap(order[k - 1], order[rng.below(k)]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        pairs.emplace_back(order[k], order[k + 1]);
    }
    return pairs;
}

void run_synthetic(std::size_t n, double p_m, double p_f, std::size_t depth, RandomStream &rng, Comparator &cmp,
                   OracleCheckReport &report) {
    bool mixed = rng.coin();
    StabilizerState s = mixed ? StabilizerState::maximally_mixed(n) : StabilizerState::pure_zero(n);
    DenseState d = mixed ? DenseState::maximally_mixed(n) : DenseState::pure_zero(n);
    cmp.compare_states(s, d);
    for (std::size_t t = 0; t < depth; ++t) {
        for (auto [i, j] : random_pairing(n, rng)) {
            CliffordGate2 g = sample_uniform(rng);
            s.apply_clifford2(g, i, j);
            d.apply_gate(g, i, j);
            ++report.actions;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (!rng.bernoulli(p_m)) {
                continue;
            }
            ZMeasurementKind kind = s.classify_z(q);
            FixedOutcome drawn(rng.coin() ? -1 : +1);
            int outcome = s.measure_z(q, drawn);
            cmp.compare_measurement(kind, d, q, outcome);
            d.measure_z(q, outcome);
            ++report.actions;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (!rng.bernoulli(p_f)) {
                continue;
            }
            s.forget_z(q);
            d.forget_z(q);
            ++report.actions;
        }
        cmp.compare_states(s, d);
    }
}

class ReplayObserver final : public TrajectoryObserver {
   public:
    ReplayObserver(DenseState dense, Comparator &cmp, OracleCheckReport &report)
        : dense_(std::move(dense)), cmp_(cmp), report_(report) {
    }

    void on_action(const Action &action) override {
        if (const auto *m = std::get_if<MeasureAction>(&action)) {
            double prob = dense_.outcome_probability(m->site, m->outcome);
            if (!(prob > 0.5 - 1e-9)) {
                cmp_.fail("engine outcome probability", 0.5, prob);
            }
        }
        apply_channel(dense_, action);
        ++report_.actions;
    }

    void on_layer(std::size_t, const StabilizerState &state) override {
        cmp_.compare_states(state, dense_);
    }

   private:
    DenseState dense_;
    Comparator &cmp_;
    OracleCheckReport &report_;
};

}  // namespace

OracleCheckReport run_oracle_equivalence(const OracleCheckOptions &options) {
    OracleCheckReport report;
    Comparator cmp(report, options.tolerance);
    std::uint64_t counter = 0;
    for (std::size_t n : options.sizes) {
        for (auto [p_m, p_f] : options.rates) {
            for (std::size_t k = 0; k < options.trajectories_per_cell; ++k, ++counter) {
                RandomStream rng(derive_seed(options.seed, counter, 7));
                std::size_t span = options.max_depth - options.min_depth + 1;
                std::size_t depth = options.min_depth + rng.below(span);
                std::ostringstream ctx;
                ctx << "synthetic n=" << n << " p_m=" << p_m << " p_f=" << p_f << " trajectory=" << k;
                cmp.set_context(ctx.str());
                run_synthetic(n, p_m, p_f, depth, rng, cmp, report);
                ++report.trajectories;

                if (options.include_engine && n % 2 == 0) {
                    CircuitConfig config;
                    config.n = n;
                    config.depth = depth;
                    config.p_m = p_m;
                    config.p_f = p_f;
                    config.initial = k % 2 == 0 ? InitialState::PureZero : InitialState::MaximallyMixed;
                    config.master_seed = options.seed ^ counter;
                    config.realizations = 1;
                    DenseState dense = config.initial == InitialState::PureZero ? DenseState::pure_zero(n)
                                                                                : DenseState::maximally_mixed(n);
                    std::ostringstream ectx;
                    ectx << "engine n=" << n << " p_m=" << p_m << " p_f=" << p_f << " trajectory=" << k;
                    cmp.set_context(ectx.str());
                    ReplayObserver observer(std::move(dense), cmp, report);
                    run_trajectory(config, 0, &observer);
                    ++report.engine_trajectories;
                }
            }
        }
    }
    return report;
}

}  // namespace forgetsim
