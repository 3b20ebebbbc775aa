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

#include <cmath>
#include <complex>

#include "forgetsim/dense_oracle.hpp"
#include "forgetsim/errors.hpp"
#include "test_states.hpp"

using namespace forgetsim;
using cd = std::complex<double>;

namespace {

std::vector<std::size_t> sites(std::initializer_list<std::size_t> s) {
    return std::vector<std::size_t>(s);
}

}  // namespace

TEST(DenseState, ForgetZeroesOffDiagonals) {
    cd alpha(0.6, 0.0), beta(0.0, 0.8);
    Eigen::MatrixXcd rho(2, 2);
    rho << alpha * std::conj(alpha), alpha * std::conj(beta), beta * std::conj(alpha), beta * std::conj(beta);
    auto d = DenseState::from_density(rho);
    d.forget_z(0);
    EXPECT_NEAR(std::abs(d.rho()(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d.rho()(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(d.rho()(0, 0).real(), 0.36, 1e-15);
    EXPECT_NEAR(d.rho()(1, 1).real(), 0.64, 1e-15);
}

TEST(DenseState, MeasurementInjection) {
    auto d = DenseState::pure_zero(1);
    d.measure_z(0, +1);
    EXPECT_LT((d.rho() - DenseState::pure_zero(1).rho()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(d.measure_z(0, -1), InconsistencyError);
    EXPECT_THROW(d.measure_z(1, +1), IndexError);
}

TEST(DenseState, EntropyExamples) {
    EXPECT_NEAR(DenseState::maximally_mixed(2).exact_entropy(), 2.0, 1e-12);
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Constant(2, 2, 0.5);
    auto d = DenseState::from_density(plus);
    EXPECT_NEAR(d.exact_entropy(), 0.0, 1e-12);
    d.forget_z(0);
    EXPECT_NEAR(d.exact_entropy(), 1.0, 1e-12);
    EXPECT_NEAR(DenseState::pure_zero(3).exact_entropy(sites({0, 2})), 0.0, 1e-12);
}

TEST(DenseState, SizeLimits) {
    EXPECT_THROW(DenseState::pure_zero(7), DimensionError);
    EXPECT_THROW(DenseState::pure_zero(0), DimensionError);
    EXPECT_NO_THROW(DenseState::maximally_mixed(6));
}

TEST(DenseState, CliffordUnitaryReproducesEveryGate) {
    const auto all = enumerate_two_qubit_cliffords();
    for (std::size_t k = 0; k < all.size(); k += 7) {
        const auto &g = all[k];
        Eigen::Matrix4cd u = clifford_unitary(g);
        EXPECT_LT((u * u.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        const char *generators[4] = {"+XI", "+ZI", "+IX", "+IZ"};
        for (std::size_t i = 0; i < 4; ++i) {
            Eigen::MatrixXcd lhs = u * pauli_matrix(PauliString::from_text(generators[i])) * u.adjoint();
            Eigen::MatrixXcd rhs = pauli_matrix(g.image(i));
            ASSERT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << "gate " << k << " image " << i;
        }
    }
}

TEST(DenseState, StabilizerSpectrumAfterRandomCircuit) {
    RandomStream rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = forgetsim::testing::random_state(3, rng);
        auto d = DenseState::from_stabilizer(s);
        auto ev = hermitian_eigenvalues(d.rho());
        double level = std::ldexp(1.0, -static_cast<int>(s.entropy()));
        std::size_t nonzero = 0;
        for (int k = 0; k < ev.size(); ++k) {
            if (std::abs(ev[k]) > 1e-9) {
                EXPECT_NEAR(ev[k], level, 1e-9);
                ++nonzero;
            }
        }
        EXPECT_EQ(nonzero, std::size_t{1} << s.entropy());
    }
}

TEST(DenseState, ChannelsPreserveInvariantsAndOrderEntropy) {
    RandomStream rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(4);
        auto d = DenseState::from_stabilizer(forgetsim::testing::random_state(n, rng));
        // Non-stabilizer mixture to exercise generic spectra.
        auto other = DenseState::from_stabilizer(forgetsim::testing::random_state(n, rng));
        double w = rng.uniform01();
        d = DenseState::from_density(w * d.rho() + (1.0 - w) * other.rho());
        std::size_t q = rng.below(n);
        double before = d.exact_entropy();

        auto f = d;
        f.forget_z(q);
        EXPECT_LT(f.invariant_violation(), 1e-12);
        EXPECT_GE(f.exact_entropy(), before - 1e-9);

        for (int outcome : {+1, -1}) {
            if (d.outcome_probability(q, outcome) > 1e-6) {
                auto m = d;
                m.measure_z(q, outcome);
                EXPECT_LT(m.invariant_violation(), 1e-12);
            }
        }
        double p_plus = d.outcome_probability(q, +1);
        EXPECT_NEAR(p_plus + d.outcome_probability(q, -1), 1.0, 1e-12);
    }
}

TEST(DenseState, MeasureBranchNeverIncreasesEntropyOfStabilizerStates) {
    RandomStream rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(4);
        auto d = DenseState::from_stabilizer(forgetsim::testing::random_state(n, rng));
        std::size_t q = rng.below(n);
        double before = d.exact_entropy();
        for (int outcome : {+1, -1}) {
            if (d.outcome_probability(q, outcome) > 1e-6) {
                auto m = d;
                m.measure_z(q, outcome);
                EXPECT_LE(m.exact_entropy(), before + 1e-9);
            }
        }
    }
}

TEST(DenseState, ApplyChannelDispatch) {
    auto d = DenseState::pure_zero(2);
    apply_channel(d, GateAction{CliffordGate2::hadamard(0), 0, 1});
    apply_channel(d, GateAction{CliffordGate2::cnot(), 0, 1});
    EXPECT_NEAR(d.exact_entropy(sites({0})), 1.0, 1e-12);
    EXPECT_NEAR(d.mutual_information(sites({0}), sites({1})), 2.0, 1e-12);
    apply_channel(d, ForgetAction{1});
    EXPECT_NEAR(d.exact_entropy(), 1.0, 1e-12);
    apply_channel(d, MeasureAction{0, -1});
    EXPECT_NEAR(d.exact_entropy(), 0.0, 1e-12);
    EXPECT_NEAR(d.outcome_probability(1, -1), 1.0, 1e-12);
}
