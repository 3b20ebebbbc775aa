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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "forgetsim/pauli.hpp"
#include "forgetsim/random.hpp"

namespace forgetsim {

/// Two-qubit Pauli packed into a nibble: bit0 = x(q0), bit1 = z(q0),
/// bit2 = x(q1), bit3 = z(q1). Phase is a power of i (letter convention).
struct Pauli2 {
    std::uint8_t bits = 0;
    std::uint8_t phase = 0;

    bool operator==(const Pauli2 &) const = default;
};

/// Product a*b of packed two-qubit Paulis.
Pauli2 multiply(Pauli2 a, Pauli2 b);
/// 1 iff the packed Paulis anticommute.
unsigned symplectic_inner(Pauli2 a, Pauli2 b);

PauliString to_pauli_string(Pauli2 p);
Pauli2 to_pauli2(const PauliString &p);

/// Two-qubit Clifford element given by the signed images U P U^dagger of
/// X1, Z1, X2, Z2 (index order 0..3). Qubit 1 is the first site the gate is
/// applied to, qubit 2 the second. Global phase is not represented.
class CliffordGate2 {
   public:
    struct TableEntry {
        std::uint8_t bits;
        std::uint8_t phase;
    };

    /// Identity gate.
    CliffordGate2();

    static CliffordGate2 from_images(const std::array<Pauli2, 4> &images);
    static CliffordGate2 from_images(const std::array<PauliString, 4> &images);

    static CliffordGate2 identity() {
        return CliffordGate2();
    }
    /// CNOT with qubit 1 as control.
    static CliffordGate2 cnot();
    static CliffordGate2 cz();
    static CliffordGate2 swap();
    /// Hadamard on qubit `which` (0 or 1), identity on the other.
    static CliffordGate2 hadamard(int which);
    /// S = diag(1, i) on qubit `which`.
    static CliffordGate2 phase_s(int which);
    /// Pauli X on qubit `which` (flips the sign of the Z image).
    static CliffordGate2 pauli_x(int which);

    const std::array<Pauli2, 4> &images() const noexcept {
        return images_;
    }
    PauliString image(std::size_t k) const;

    /// Image of the packed Pauli with letters given by `bits`, phase 0.
    const TableEntry &conjugation(std::uint8_t bits) const noexcept {
        return table_[bits & 0xF];
    }
    Pauli2 conjugate(Pauli2 p) const;
    PauliString conjugate(const PauliString &two_qubit) const;

    /// 20-bit canonical key: 5 bits per image (nibble + sign bit).
    std::uint32_t key() const noexcept;

    bool operator==(const CliffordGate2 &other) const noexcept {
        return images_ == other.images_;
    }

   private:
    void build_table();

    std::array<Pauli2, 4> images_;
    std::array<TableEntry, 16> table_{};
};

/// Gate equal to applying `first` and then `second`.
CliffordGate2 compose(const CliffordGate2 &first, const CliffordGate2 &second);

/// True iff the images are Hermitian, non-identity, obey the canonical
/// commutation relations, and form an invertible symplectic matrix.
bool validate(const CliffordGate2 &gate);

/// Uniform draw from the 11520-element two-qubit Clifford group (mod phase).
///
/// Row completion: the X1 image is uniform over the 15 non-identity Paulis,
/// the Z1 image uniform over the 8 that anticommute with it, then the X2/Z2
/// pair is drawn inside the symplectic complement (3 x 2 choices), and four
/// independent sign bits are attached.
CliffordGate2 sample_uniform(RandomStream &rng);

/// Every two-qubit Clifford mod phase, found by brute force over all 4x4
/// binary matrices and sorted by key().
std::vector<CliffordGate2> enumerate_two_qubit_cliffords();

inline constexpr std::size_t kTwoQubitCliffordCount = 11520;

/// Enumerated gate table with index lookup and an optional on-disk cache.
///
/// Cache layout (little endian): "FSGT", uint32 version (=1), uint32 count,
/// then `count` records of 4 bytes, one per image in X1, Z1, X2, Z2 order:
/// bits 0..3 = Pauli nibble, bit 4 = sign.
class GateTable {
   public:
    static GateTable build();
    /// Returns nullopt on a missing, truncated, or inconsistent file.
    static std::optional<GateTable> load(const std::filesystem::path &path);
    /// Loads the cache when valid, otherwise builds and tries to write it.
    static GateTable load_or_build(const std::filesystem::path &path);

    void save(const std::filesystem::path &path) const;

    std::size_t size() const noexcept {
        return gates_.size();
    }
    const CliffordGate2 &at(std::size_t index) const {
        return gates_.at(index);
    }
    /// Position of the gate in the table, or nullopt for an invalid gate.
    std::optional<std::size_t> index_of(const CliffordGate2 &gate) const;

    const std::vector<CliffordGate2> &gates() const noexcept {
        return gates_;
    }

   private:
    explicit GateTable(std::vector<CliffordGate2> gates);

    std::vector<CliffordGate2> gates_;  // sorted by key()
};

}  // namespace forgetsim
