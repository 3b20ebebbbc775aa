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

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "forgetsim/actions.hpp"
#include "forgetsim/clifford.hpp"
#include "forgetsim/pauli.hpp"
#include "forgetsim/stabilizer_state.hpp"

namespace forgetsim {

/// Exact density-matrix simulator for up to six qubits. Test oracle only.
///
/// Basis index bit k holds qubit k.
class DenseState {
   public:
    static constexpr std::size_t kMaxQubits = 6;

    static DenseState pure_zero(std::size_t n);
    static DenseState maximally_mixed(std::size_t n);
    static DenseState from_density(Eigen::MatrixXcd rho);
    /// rho = 2^-n * prod_g (I + g) over the generators.
    static DenseState from_stabilizer(const StabilizerState &state);

    std::size_t num_qubits() const noexcept {
        return n_;
    }
    const Eigen::MatrixXcd &rho() const noexcept {
        return rho_;
    }

    void apply_unitary(const Eigen::Matrix4cd &u, std::size_t first, std::size_t second);
    void apply_gate(const CliffordGate2 &gate, std::size_t first, std::size_t second);
    /// Probability of `outcome` (+1 or -1) for a Z measurement on `site`.
    double outcome_probability(std::size_t site, int outcome) const;
    /// Projects onto the injected branch and renormalizes. Throws
    /// InconsistencyError if the branch has probability <= 1e-12.
    void measure_z(std::size_t site, int outcome);
    /// rho -> (rho + Z rho Z) / 2.
    void forget_z(std::size_t site);

    /// Reduced density matrix on `sites` (in the given order).
    Eigen::MatrixXcd reduced(std::span<const std::size_t> sites) const;
    /// -Tr(rho log2 rho), with 0 log 0 = 0.
    double exact_entropy() const;
    double exact_entropy(std::span<const std::size_t> sites) const;
    double mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) const;

    /// Largest violation of Hermiticity, unit trace, or positivity.
    double invariant_violation() const;

   private:
    explicit DenseState(std::size_t n);

    void check_site(std::size_t site) const;

    std::size_t n_ = 0;
    Eigen::MatrixXcd rho_;
};

/// Dense 2^n x 2^n matrix of a Pauli string (n <= 6).
Eigen::MatrixXcd pauli_matrix(const PauliString &p);

/// A 4x4 unitary (fixed up to global phase) realizing the gate, built from
/// its images: U|00> spans the +1 eigenspace of the Z images, and the X
/// images carry it to the other basis columns.
Eigen::Matrix4cd clifford_unitary(const CliffordGate2 &gate);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd &m);

/// Applies one channel to the dense state.
void apply_channel(DenseState &state, const Action &action);

}  // namespace forgetsim
