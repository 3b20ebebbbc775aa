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

#include <Eigen/Dense>
#include <complex>

#include "forgetsim/errors.hpp"
#include "forgetsim/pauli.hpp"
#include "forgetsim/random.hpp"

using namespace forgetsim;
using cd = std::complex<double>;

namespace {

// Written out from the letter definitions, independently of the library.
Eigen::Matrix2cd letter_matrix(char c) {
    Eigen::Matrix2cd m;
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

// Qubit k is bit k of the basis index, so qubit 0 is the rightmost factor.
Eigen::MatrixXcd dense(const PauliString &p) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
        Eigen::Matrix2cd l = letter_matrix(p.letter(k));
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = l(r, c) * m;
            }
        }
        m = next;
    }
    const cd phases[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
    return phases[p.phase_exp()] * m;
}

PauliString random_pauli(std::size_t n, RandomStream &rng) {
    PauliString p(n);
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t k = 0; k < n; ++k) {
        p.set_letter(k, letters[rng.below(4)]);
    }
    p.set_phase_exp(static_cast<unsigned>(rng.below(4)));
    return p;
}

}  // namespace

TEST(PauliString, SymplecticExamples) {
    EXPECT_EQ(symplectic_inner(PauliString::from_text("X"), PauliString::from_text("Z")), 1u);
    EXPECT_EQ(symplectic_inner(PauliString::from_text("XI"), PauliString::from_text("IZ")), 0u);
    EXPECT_EQ(symplectic_inner(PauliString::from_text("Y"), PauliString::from_text("Z")), 1u);
    EXPECT_EQ(symplectic_inner(PauliString::from_text("XX"), PauliString::from_text("ZZ")), 0u);
}

TEST(PauliString, ProductExamples) {
    PauliString xx = PauliString::from_text("X") * PauliString::from_text("X");
    EXPECT_TRUE(xx.is_identity_up_to_phase());
    EXPECT_EQ(xx.phase_exp(), 0u);

    PauliString xz = PauliString::from_text("X") * PauliString::from_text("Z");
    EXPECT_EQ(xz.letter(0), 'Y');
    EXPECT_EQ(xz.phase_exp(), 3u);
    EXPECT_EQ(xz.str(), "-iY");

    PauliString two = PauliString::from_text("XZ") * PauliString::from_text("ZZ");
    EXPECT_EQ(two.str(), "-iYI");
    EXPECT_EQ(two, PauliString::from_text("-iYI"));
}

TEST(PauliString, SizeMismatchIsDimensionError) {
    EXPECT_THROW(symplectic_inner(PauliString(2), PauliString(3)), DimensionError);
    EXPECT_THROW(multiply(PauliString(2), PauliString(3)), DimensionError);
}

TEST(PauliString, TextRoundTrip) {
    for (const char *text : {"+XIZY", "-IZZI", "+iXZ", "-iY", "+I"}) {
        EXPECT_EQ(PauliString::from_text(text).str(), text);
    }
    EXPECT_EQ(PauliString::from_text("XZ").str(), "+XZ");
    EXPECT_THROW(PauliString::from_text("+XQ"), ArgumentError);
    EXPECT_EQ(PauliString::single(3, 1, 'Y').str(), "+IYI");
}

TEST(PauliString, MatchesDenseMatricesUpToFourQubits) {
    RandomStream rng(11);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            PauliString p = random_pauli(n, rng);
            PauliString q = random_pauli(n, rng);
            Eigen::MatrixXcd expected = dense(p) * dense(q);
            EXPECT_LT((dense(p * q) - expected).cwiseAbs().maxCoeff(), 1e-12) << p.str() << " * " << q.str();
            Eigen::MatrixXcd commutator = dense(p) * dense(q) - dense(q) * dense(p);
            bool anticommute = commutator.cwiseAbs().maxCoeff() > 1e-9;
            EXPECT_EQ(symplectic_inner(p, q), anticommute ? 1u : 0u);
        }
    }
}

TEST(PauliString, AlgebraicPropertiesAcrossWords) {
    RandomStream rng(5);
    for (std::size_t n : {1u, 7u, 64u, 65u, 130u}) {
        for (int trial = 0; trial < 50; ++trial) {
            PauliString a = random_pauli(n, rng);
            PauliString b = random_pauli(n, rng);
            PauliString c = random_pauli(n, rng);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(symplectic_inner(a, b), symplectic_inner(b, a));
            EXPECT_TRUE((a * a).is_identity_up_to_phase());
            std::size_t anti_sites = 0;
            for (std::size_t k = 0; k < n; ++k) {
                char la = a.letter(k), lb = b.letter(k);
                anti_sites += (la != 'I' && lb != 'I' && la != lb) ? 1 : 0;
            }
            EXPECT_EQ(symplectic_inner(a, b), anti_sites % 2);
            PauliString ab = a;
            ab *= b;
            EXPECT_EQ(ab, a * b);
        }
    }
}

TEST(PauliString, HermitianSquaresToIdentity) {
    RandomStream rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        PauliString p = random_pauli(9, rng);
        p.set_phase_exp(2 * (p.phase_exp() / 2));
        EXPECT_TRUE(p.is_hermitian());
        EXPECT_EQ((p * p).phase_exp(), 0u);
    }
}

TEST(PauliString, WeightCountsNonIdentityLetters) {
    EXPECT_EQ(PauliString::from_text("XIZYI").weight(), 3u);
    EXPECT_EQ(PauliString(70).weight(), 0u);
}
