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
#include <span>
#include <string>
#include <vector>

#include "forgetsim/clifford.hpp"
#include "forgetsim/pauli.hpp"
#include "forgetsim/random.hpp"

namespace forgetsim {

using SiteSet = std::vector<std::size_t>;

/// How a Z measurement on a given site would resolve.
enum class ZMeasurementKind {
    /// +-Z_i is in the stabilizer group: the outcome is fixed.
    Deterministic,
    /// Z_i anticommutes with a generator: fair coin, rank unchanged.
    RandomPure,
    /// Z_i commutes with the group but is not in it: fair coin, rank + 1.
    RandomMixed,
};

/// Mixed stabilizer state on n qubits: the uniform mixture over the joint +1
/// eigenspace of r <= n independent commuting Hermitian Paulis. Its von
/// Neumann entropy is n - r bits.
///
/// Internally the generators are completed to a full symplectic basis of 2n
/// rows. Row a < n and row a + n form a conjugate pair. For a < rank() row a is
/// stabilizer generator a and row a + n its destabilizer; the remaining pairs
/// span the logical (unconstrained) directions. The completion turns every
/// Z-measurement case split and the deterministic-outcome sign into
/// O(n^2 / 64) word operations without any elimination. Only the stabilizer
/// rows carry meaningful signs.
class StabilizerState {
   public:
    /// |0...0>: generators +Z_0 .. +Z_{n-1}.
    static StabilizerState pure_zero(std::size_t n);
    /// I / 2^n: no generators.
    static StabilizerState maximally_mixed(std::size_t n);
    /// State stabilized by the given Hermitian, commuting, independent
    /// generators (in order). Throws ArgumentError otherwise.
    static StabilizerState from_generators(std::size_t n, std::span<const PauliString> generators);

    std::size_t num_qubits() const noexcept {
        return n_;
    }
    std::size_t rank() const noexcept {
        return rank_;
    }
    /// von Neumann entropy in bits.
    std::size_t entropy() const noexcept {
        return n_ - rank_;
    }

    PauliString generator(std::size_t k) const;
    std::vector<PauliString> generators() const;

    /// Conjugates the state by `gate`, with the gate's qubit 1 on site i and
    /// qubit 2 on site j.
    void apply_clifford2(const CliffordGate2 &gate, std::size_t i, std::size_t j);

    ZMeasurementKind classify_z(std::size_t site) const;

    /// Projective Z measurement with the outcome recorded. Random outcomes are
    /// drawn from `outcomes`; deterministic ones consume nothing. Returns +1
    /// or -1.
    int measure_z(std::size_t site, OutcomeSource &outcomes);

    /// Measure-and-forget: rho -> (rho + Z rho Z) / 2. Consumes no randomness.
    void forget_z(std::size_t site);

    /// Entropy of the reduced state on `sites`, in bits.
    std::size_t subsystem_entropy(std::span<const std::size_t> sites) const;

    /// S_A + S_B - S_{A u B}. A and B must be disjoint.
    std::size_t mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) const;

    /// Generators in reduced row echelon form (column order x_0, z_0, x_1, ...)
    /// rendered one per line and sorted. Two states are equal iff their
    /// canonical texts are equal.
    std::string canonical_text() const;

    /// Checks every structural invariant; throws std::logic_error naming the
    /// first violation.
    void validate() const;

    /// Bit-level equality of the full internal tableau.
    bool operator==(const StabilizerState &other) const = default;

   private:
    StabilizerState(std::size_t n, std::size_t rank);

    Word *row_x(std::size_t a) noexcept {
        return rows_.data() + a * stride_;
    }
    Word *row_z(std::size_t a) noexcept {
        return rows_.data() + a * stride_ + words_;
    }
    const Word *row_x(std::size_t a) const noexcept {
        return rows_.data() + a * stride_;
    }
    const Word *row_z(std::size_t a) const noexcept {
        return rows_.data() + a * stride_ + words_;
    }
    bool row_has_x(std::size_t a, std::size_t site) const noexcept {
        return (row_x(a)[site / kWordBits] >> (site % kWordBits)) & 1u;
    }

    /// row[dst] <- row[dst] * row[src], with phase.
    void multiply_rows(std::size_t dst, std::size_t src) noexcept;
    void copy_row(std::size_t dst, std::size_t src) noexcept;
    void set_row(std::size_t dst, const PauliString &p) noexcept;
    PauliString row_pauli(std::size_t a) const;
    void swap_pairs(std::size_t p, std::size_t q) noexcept;
    /// Moves pair p to position last, shifting pairs p+1..last down by one.
    void rotate_pair_to(std::size_t p, std::size_t last) noexcept;

    /// Adds `p` as generator number rank(). `p` must commute with all
    /// generators and anticommute with logical row `logical`.
    void insert_generator(const PauliString &p, std::size_t logical);

    void check_site(std::size_t site) const;
    std::vector<Word> complement_mask(std::span<const std::size_t> sites) const;
    std::size_t restricted_rank(const std::vector<Word> &mask) const;

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t stride_ = 0;
    std::size_t rank_ = 0;
    std::vector<Word> rows_;
    std::vector<std::uint8_t> phases_;
};

}  // namespace forgetsim
