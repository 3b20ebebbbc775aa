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
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "forgetsim/dense_oracle.hpp"
#include "forgetsim/errors.hpp"
#include "forgetsim/stabilizer_state.hpp"
#include "test_states.hpp"

using namespace forgetsim;
using forgetsim::testing::random_state;

namespace {

StabilizerState make(std::size_t n, std::initializer_list<const char *> gens) {
    std::vector<PauliString> ps;
    for (const char *g : gens) {
        ps.push_back(PauliString::from_text(g));
    }
    return StabilizerState::from_generators(n, ps);
}

StabilizerState bell() {
    return make(2, {"+XX", "+ZZ"});
}

std::vector<std::size_t> sites(std::initializer_list<std::size_t> s) {
    return std::vector<std::size_t>(s);
}

}  // namespace

TEST(StabilizerState, PureZero) {
    auto one = StabilizerState::pure_zero(1);
    EXPECT_EQ(one.entropy(), 0u);
    auto four = StabilizerState::pure_zero(4);
    EXPECT_EQ(four.rank(), 4u);
    EXPECT_EQ(four.entropy(), 0u);
    auto two = StabilizerState::pure_zero(2);
    EXPECT_EQ(two.classify_z(0), ZMeasurementKind::Deterministic);
    FixedOutcome minus(-1);
    EXPECT_EQ(two.measure_z(0, minus), +1);
    EXPECT_EQ(StabilizerState::pure_zero(8).entropy(), 0u);
    EXPECT_THROW(StabilizerState::pure_zero(0), DimensionError);
}

TEST(StabilizerState, MaximallyMixed) {
    EXPECT_EQ(StabilizerState::maximally_mixed(1).entropy(), 1u);
    EXPECT_EQ(StabilizerState::maximally_mixed(8).entropy(), 8u);
    EXPECT_EQ(StabilizerState::maximally_mixed(256).entropy(), 256u);
    EXPECT_EQ(StabilizerState::maximally_mixed(2).subsystem_entropy(sites({0})), 1u);
    EXPECT_THROW(StabilizerState::maximally_mixed(0), DimensionError);
}

TEST(StabilizerState, FromGeneratorsRejectsInvalidSets) {
    EXPECT_THROW(make(2, {"+XI", "+ZI"}), ArgumentError);
    EXPECT_THROW(make(2, {"+ZI", "+ZI"}), ArgumentError);
    EXPECT_THROW(make(2, {"+ZZ", "+ZI", "+IZ"}), ArgumentError);
    EXPECT_THROW(make(2, {"+iZI"}), ArgumentError);
    EXPECT_THROW(make(2, {"+ZII"}), DimensionError);
}

TEST(StabilizerState, IdentityGateLeavesStateBitIdentical) {
    RandomStream rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_state(5, rng);
        auto copy = s;
        s.apply_clifford2(CliffordGate2::identity(), 1, 3);
        EXPECT_EQ(s, copy);
    }
}

TEST(StabilizerState, CnotOnZeroZero) {
    auto s = StabilizerState::pure_zero(2);
    s.apply_clifford2(CliffordGate2::cnot(), 0, 1);
    EXPECT_EQ(s.canonical_text(), make(2, {"+ZI", "+ZZ"}).canonical_text());
    EXPECT_EQ(s.entropy(), 0u);
    auto plus = make(2, {"+XI", "+IZ"});
    plus.apply_clifford2(CliffordGate2::cnot(), 0, 1);
    EXPECT_EQ(plus.canonical_text(), bell().canonical_text());
}

TEST(StabilizerState, GateSiteErrors) {
    auto s = StabilizerState::pure_zero(3);
    EXPECT_THROW(s.apply_clifford2(CliffordGate2::cnot(), 0, 3), IndexError);
    EXPECT_THROW(s.apply_clifford2(CliffordGate2::cnot(), 1, 1), ArgumentError);
    FixedOutcome plus(+1);
    EXPECT_THROW(s.measure_z(3, plus), IndexError);
    EXPECT_THROW(s.forget_z(5), IndexError);
    EXPECT_THROW(s.subsystem_entropy(sites({0, 4})), IndexError);
}

TEST(StabilizerState, MeasureCases) {
    auto zero = StabilizerState::pure_zero(1);
    FixedOutcome minus(-1), plus(+1);
    EXPECT_EQ(zero.measure_z(0, minus), +1);
    EXPECT_EQ(zero, StabilizerState::pure_zero(1));

    for (int outcome : {+1, -1}) {
        auto p = make(1, {"+X"});
        EXPECT_EQ(p.classify_z(0), ZMeasurementKind::RandomPure);
        FixedOutcome src(outcome);
        EXPECT_EQ(p.measure_z(0, src), outcome);
        EXPECT_EQ(p.entropy(), 0u);
        EXPECT_EQ(p.generator(0).str(), outcome > 0 ? "+Z" : "-Z");
    }

    for (int outcome : {+1, -1}) {
        auto m = StabilizerState::maximally_mixed(1);
        EXPECT_EQ(m.classify_z(0), ZMeasurementKind::RandomMixed);
        FixedOutcome src(outcome);
        EXPECT_EQ(m.measure_z(0, src), outcome);
        EXPECT_EQ(m.entropy(), 0u);
        auto dense = DenseState::maximally_mixed(1);
        EXPECT_NEAR(dense.outcome_probability(0, outcome), 0.5, 1e-12);
        dense.measure_z(0, outcome);
        EXPECT_NEAR(dense.exact_entropy(), 0.0, 1e-12);
    }
}

TEST(StabilizerState, DeterministicOutcomeFromProductOfGenerators) {
    auto s = make(2, {"-ZZ", "+XX"});
    FixedOutcome plus(+1);
    int first = s.measure_z(0, plus);
    EXPECT_EQ(s.classify_z(1), ZMeasurementKind::Deterministic);
    EXPECT_EQ(s.measure_z(1, plus), -first);
}

TEST(StabilizerState, ForgetExamples) {
    auto zero = StabilizerState::pure_zero(1);
    zero.forget_z(0);
    EXPECT_EQ(zero, StabilizerState::pure_zero(1));
    EXPECT_EQ(zero.entropy(), 0u);

    auto plus = make(1, {"+X"});
    plus.forget_z(0);
    EXPECT_EQ(plus.entropy(), 1u);
    EXPECT_EQ(plus.rank(), 0u);

    auto b = bell();
    b.forget_z(0);
    EXPECT_EQ(b.entropy(), 1u);
    EXPECT_EQ(b.canonical_text(), make(2, {"+ZZ"}).canonical_text());
    auto dense = DenseState::from_stabilizer(bell());
    dense.forget_z(0);
    EXPECT_NEAR(dense.exact_entropy(), 1.0, 1e-12);
}

TEST(StabilizerState, SubsystemAndMutualInformationExamples) {
    EXPECT_EQ(bell().subsystem_entropy(sites({0})), 1u);
    EXPECT_EQ(StabilizerState::pure_zero(2).subsystem_entropy(sites({0})), 0u);
    EXPECT_EQ(bell().mutual_information(sites({0}), sites({1})), 2u);
    EXPECT_EQ(StabilizerState::pure_zero(2).mutual_information(sites({0}), sites({1})), 0u);
    EXPECT_EQ(StabilizerState::maximally_mixed(2).mutual_information(sites({0}), sites({1})), 0u);
    EXPECT_THROW(bell().mutual_information(sites({0, 1}), sites({1})), ArgumentError);
    EXPECT_EQ(bell().subsystem_entropy(sites({})), 0u);
}

TEST(StabilizerState, SubsystemEntropyMatchesDenseOracle) {
    RandomStream rng(42);
    int cases = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto s = random_state(4, rng, 3);
        auto dense = DenseState::from_stabilizer(s);
        for (unsigned mask = 1; mask < 16; ++mask) {
            std::vector<std::size_t> a;
            for (std::size_t q = 0; q < 4; ++q) {
                if (mask & (1u << q)) {
                    a.push_back(q);
                }
            }
            EXPECT_NEAR(static_cast<double>(s.subsystem_entropy(a)), dense.exact_entropy(a), 1e-9);
            ++cases;
        }
    }
    EXPECT_GE(cases, 100);
}

TEST(StabilizerState, ChannelInvariantsOnRandomStates) {
    RandomStream rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng.below(9);
        auto s = random_state(n, rng);
        s.validate();
        std::size_t q = rng.below(n);

        auto f = s;
        f.forget_z(q);
        f.validate();
        EXPECT_TRUE(f.entropy() == s.entropy() || f.entropy() == s.entropy() + 1);
        auto ff = f;
        ff.forget_z(q);
        EXPECT_EQ(ff, f);

        auto m = s;
        RandomOutcomes outcomes(rng);
        int first = m.measure_z(q, outcomes);
        m.validate();
        EXPECT_LE(m.entropy(), s.entropy());
        auto mm = m;
        FixedOutcome opposite(-first);
        EXPECT_EQ(mm.measure_z(q, opposite), first);
        EXPECT_EQ(mm, m);

        if (n >= 2) {
            auto g = s;
            g.apply_clifford2(sample_uniform(rng), q, (q + 1) % n);
            g.validate();
            EXPECT_EQ(g.entropy(), s.entropy());
        }
    }
}

TEST(StabilizerState, PermutationCovarianceAndPureComplement) {
    RandomStream rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 6;
        auto s = random_state(n, rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t k = n; k > 1; --k) {
            std::swap(perm[k - 1], perm[rng.below(k)]);
        }
        std::vector<PauliString> relabeled;
        for (const auto &g : s.generators()) {
            PauliString p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p.set_letter(perm[k], g.letter(k));
            }
            p.set_phase_exp(g.phase_exp());
            relabeled.push_back(p);
        }
        auto t = StabilizerState::from_generators(n, relabeled);
        std::vector<std::size_t> a{0, 2, 3};
        std::vector<std::size_t> pa;
        for (auto q : a) {
            pa.push_back(perm[q]);
        }
        EXPECT_EQ(s.subsystem_entropy(a), t.subsystem_entropy(pa));
        if (s.entropy() == 0) {
            EXPECT_EQ(s.subsystem_entropy(a), s.subsystem_entropy(std::vector<std::size_t>{1, 4, 5}));
        }
    }
}

TEST(StabilizerState, CanonicalTextIndependentOfGeneratorOrder) {
    auto a = make(3, {"+XXX", "+ZZI", "+IZZ"});
    auto b = make(3, {"+IZZ", "+ZIZ", "-YYX"});
    EXPECT_EQ(a.canonical_text(), b.canonical_text());
    EXPECT_NE(a.canonical_text(), make(3, {"+XXX", "-ZZI", "+IZZ"}).canonical_text());
}

TEST(StabilizerState, LargeStatesStayConsistent) {
    RandomStream rng(13);
    auto s = StabilizerState::pure_zero(130);
    RandomOutcomes outcomes(rng);
    for (int layer = 0; layer < 40; ++layer) {
        for (std::size_t i = layer % 2; i + 1 < 130; i += 2) {
            s.apply_clifford2(sample_uniform(rng), i, i + 1);
        }
        for (std::size_t q = 0; q < 130; ++q) {
            auto u = rng.below(10);
            if (u == 0) {
                s.measure_z(q, outcomes);
            } else if (u == 1) {
                s.forget_z(q);
            }
        }
    }
    s.validate();
    EXPECT_EQ(s.rank() + s.entropy(), 130u);
}
