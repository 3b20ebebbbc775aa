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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forgetsim {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) {
    return (n + kWordBits - 1) / kWordBits;
}

/// Word-level kernels shared by PauliString and the packed tableau rows.
///
/// A Pauli operator is i^phase times a tensor product of the Hermitian letters
/// I, X, Y, Z; letter k is encoded by the bit pair (x_k, z_k) with
/// (1,1) meaning Y. Hermitian operators therefore have even phase.
namespace pauli_kernels {

inline bool anticommutes(const Word *x1, const Word *z1, const Word *x2, const Word *z2, std::size_t num_words) {
    Word acc = 0;
    for (std::size_t w = 0; w < num_words; ++w) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return std::popcount(acc) & 1;
}

/// Power of i picked up by the letter products in (x1,z1)*(x2,z2), mod 4.
inline unsigned product_log_i(const Word *x1, const Word *z1, const Word *x2, const Word *z2, std::size_t num_words) {
    int plus = 0;
    int minus = 0;
    for (std::size_t w = 0; w < num_words; ++w) {
        Word a = x1[w], b = z1[w], c = x2[w], d = z2[w];
        // XY = iZ, YZ = iX, ZX = iY; the reversed products carry -i.
        Word pos = (a & ~b & c & d) | (a & b & ~c & d) | (~a & b & c & ~d);
        Word neg = (a & b & c & ~d) | (~a & b & c & d) | (a & ~b & ~c & d);
        plus += std::popcount(pos);
        minus += std::popcount(neg);
    }
    return static_cast<unsigned>(plus - minus) & 3u;
}

/// (x1,z1) <- (x1,z1)*(x2,z2). Returns the phase contribution (log base i, mod 4).
inline unsigned multiply_into(Word *x1, Word *z1, const Word *x2, const Word *z2, std::size_t num_words) {
    unsigned log_i = product_log_i(x1, z1, x2, z2, num_words);
    for (std::size_t w = 0; w < num_words; ++w) {
        x1[w] ^= x2[w];
        z1[w] ^= z2[w];
    }
    return log_i;
}

}  // namespace pauli_kernels

/// Signed n-qubit Pauli operator in binary-symplectic form.
class PauliString {
   public:
    PauliString() = default;
    /// Identity on n qubits.
    explicit PauliString(std::size_t n);

    /// Parses "+XIZY", "-IZZI", "+iXZ", "-iY". A missing sign means "+".
    /// Letter k describes qubit k.
    static PauliString from_text(std::string_view text);
    /// Single-letter operator `letter` on `site`, identity elsewhere.
    static PauliString single(std::size_t n, std::size_t site, char letter);

    std::size_t size() const noexcept {
        return n_;
    }
    std::size_t num_words() const noexcept {
        return xs_.size();
    }

    bool x(std::size_t k) const;
    bool z(std::size_t k) const;
    char letter(std::size_t k) const;
    void set_letter(std::size_t k, char letter);

    unsigned phase_exp() const noexcept {
        return phase_;
    }
    void set_phase_exp(unsigned phase) noexcept {
        phase_ = phase & 3u;
    }
    bool is_hermitian() const noexcept {
        return (phase_ & 1u) == 0;
    }
    /// True when every letter is I (the phase is not inspected).
    bool is_identity_up_to_phase() const noexcept;
    std::size_t weight() const noexcept;

    std::span<const Word> x_words() const noexcept {
        return xs_;
    }
    std::span<const Word> z_words() const noexcept {
        return zs_;
    }
    std::span<Word> x_words() noexcept {
        return xs_;
    }
    std::span<Word> z_words() noexcept {
        return zs_;
    }

    /// In-place right multiplication: *this = *this * rhs.
    PauliString &operator*=(const PauliString &rhs);

    /// "+XIZY" style rendering; odd phases render as "+i"/"-i".
    std::string str() const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::size_t n_ = 0;
    std::vector<Word> xs_;
    std::vector<Word> zs_;
    unsigned phase_ = 0;
};

/// 0 if p and q commute, 1 if they anticommute.
unsigned symplectic_inner(const PauliString &p, const PauliString &q);

/// Operator product p*q.
PauliString multiply(const PauliString &p, const PauliString &q);

inline PauliString operator*(const PauliString &p, const PauliString &q) {
    return multiply(p, q);
}

}  // namespace forgetsim
