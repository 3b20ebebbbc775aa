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
#include "forgetsim/stabilizer_state.hpp"

#include <algorithm>
#include <stdexcept>

#include "forgetsim/errors.hpp"

namespace forgetsim {

StabilizerState::StabilizerState(std::size_t n, std::size_t rank)
    : n_(n), words_(words_for(n)), stride_(2 * words_for(n)), rank_(rank), rows_(2 * n * stride_, 0), phases_(2 * n, 0) {
    // Pair a: Z_a on top, X_a underneath.
    for (std::size_t a = 0; a < n; ++a) {
        row_z(a)[a / kWordBits] |= Word{1} << (a % kWordBits);
        row_x(a + n)[a / kWordBits] |= Word{1} << (a % kWordBits);
    }
}

StabilizerState StabilizerState::pure_zero(std::size_t n) {
    if (n == 0) {
        throw DimensionError("a stabilizer state needs at least one qubit");
    }
    return StabilizerState(n, n);
}

StabilizerState StabilizerState::maximally_mixed(std::size_t n) {
    if (n == 0) {
        throw DimensionError("a stabilizer state needs at least one qubit");
    }
    return StabilizerState(n, 0);
}

StabilizerState StabilizerState::from_generators(std::size_t n, std::span<const PauliString> generators) {
    StabilizerState state = maximally_mixed(n);
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const PauliString &p = generators[g];
        if (p.size() != n) {
            throw DimensionError("generator " + std::to_string(g) + " has " + std::to_string(p.size()) +
                                 " qubits, expected " + std::to_string(n));
        }
        if (!p.is_hermitian()) {
            throw ArgumentError("generator " + std::to_string(g) + " is not Hermitian: " + p.str());
        }
        auto anticommutes_with_row = [&](std::size_t a) {
            return pauli_kernels::anticommutes(state.row_x(a), state.row_z(a), p.x_words().data(), p.z_words().data(),
                                               state.words_);
        };
        for (std::size_t a = 0; a < state.rank_; ++a) {
            if (anticommutes_with_row(a)) {
                throw ArgumentError("generator " + std::to_string(g) + " anticommutes with an earlier generator");
            }
        }
        std::size_t logical = 2 * n;
        for (std::size_t a = state.rank_; a < n && logical == 2 * n; ++a) {
            if (anticommutes_with_row(a)) {
                logical = a;
            } else if (anticommutes_with_row(a + n)) {
                logical = a + n;
            }
        }
        if (logical == 2 * n) {
            throw ArgumentError("generator " + std::to_string(g) + " is dependent on earlier generators");
        }
        for (std::size_t a = 0; a < 2 * n; ++a) {
            if (a != logical && anticommutes_with_row(a)) {
                state.multiply_rows(a, logical);
            }
        }
        state.insert_generator(p, logical);
    }
    return state;
}

void StabilizerState::check_site(std::size_t site) const {
    if (site >= n_) {
        throw IndexError("site " + std::to_string(site) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

void StabilizerState::multiply_rows(std::size_t dst, std::size_t src) noexcept {
    unsigned log_i = pauli_kernels::multiply_into(row_x(dst), row_z(dst), row_x(src), row_z(src), words_);
    phases_[dst] = static_cast<std::uint8_t>((phases_[dst] + phases_[src] + log_i) & 3u);
}

void StabilizerState::copy_row(std::size_t dst, std::size_t src) noexcept {
    std::copy_n(rows_.data() + src * stride_, stride_, rows_.data() + dst * stride_);
    phases_[dst] = phases_[src];
}

void StabilizerState::set_row(std::size_t dst, const PauliString &p) noexcept {
    std::copy(p.x_words().begin(), p.x_words().end(), row_x(dst));
    std::copy(p.z_words().begin(), p.z_words().end(), row_z(dst));
    phases_[dst] = static_cast<std::uint8_t>(p.phase_exp());
}

PauliString StabilizerState::row_pauli(std::size_t a) const {
    PauliString p(n_);
    std::copy_n(row_x(a), words_, p.x_words().begin());
    std::copy_n(row_z(a), words_, p.z_words().begin());
    p.set_phase_exp(phases_[a]);
    return p;
}

void StabilizerState::swap_pairs(std::size_t p, std::size_t q) noexcept {
    if (p == q) {
        return;
    }
    for (std::size_t half : {std::size_t{0}, n_}) {
        std::swap_ranges(rows_.data() + (p + half) * stride_, rows_.data() + (p + half + 1) * stride_,
                         rows_.data() + (q + half) * stride_);
        std::swap(phases_[p + half], phases_[q + half]);
    }
}

void StabilizerState::rotate_pair_to(std::size_t p, std::size_t last) noexcept {
    for (std::size_t half : {std::size_t{0}, n_}) {
        std::rotate(rows_.data() + (p + half) * stride_, rows_.data() + (p + half + 1) * stride_,
                    rows_.data() + (last + half + 1) * stride_);
        std::rotate(phases_.begin() + static_cast<std::ptrdiff_t>(p + half),
                    phases_.begin() + static_cast<std::ptrdiff_t>(p + half + 1),
                    phases_.begin() + static_cast<std::ptrdiff_t>(last + half + 1));
    }
}

void StabilizerState::insert_generator(const PauliString &p, std::size_t logical) {
    // Every other row already commutes with p; the logical row becomes the
    // new destabilizer and its partner is dropped.
    const std::size_t pair = logical % n_;
    PauliString destabilizer = row_pauli(logical);
    swap_pairs(pair, rank_);
    set_row(rank_, p);
    set_row(rank_ + n_, destabilizer);
    ++rank_;
}

PauliString StabilizerState::generator(std::size_t k) const {
    if (k >= rank_) {
        throw IndexError("generator " + std::to_string(k) + " out of range for rank " + std::to_string(rank_));
    }
    return row_pauli(k);
}

std::vector<PauliString> StabilizerState::generators() const {
    std::vector<PauliString> out;
    out.reserve(rank_);
    for (std::size_t k = 0; k < rank_; ++k) {
        out.push_back(row_pauli(k));
    }
    return out;
}

void StabilizerState::apply_clifford2(const CliffordGate2 &gate, std::size_t i, std::size_t j) {
    check_site(i);
    check_site(j);
    if (i == j) {
        throw ArgumentError("two-qubit gate needs distinct sites, got " + std::to_string(i) + " twice");
    }
    const std::size_t wi = i / kWordBits, bi = i % kWordBits;
    const std::size_t wj = j / kWordBits, bj = j % kWordBits;
    const Word mi = Word{1} << bi, mj = Word{1} << bj;
    Word *base = rows_.data();
    for (std::size_t a = 0; a < 2 * n_; ++a, base += stride_) {
        Word *x = base;
        Word *z = base + words_;
        const unsigned pattern = static_cast<unsigned>(((x[wi] >> bi) & 1u) | (((z[wi] >> bi) & 1u) << 1) |
                                                       (((x[wj] >> bj) & 1u) << 2) | (((z[wj] >> bj) & 1u) << 3));
        if (pattern == 0) {
            continue;
        }
        const auto &e = gate.conjugation(static_cast<std::uint8_t>(pattern));
        x[wi] = (x[wi] & ~mi) | (static_cast<Word>(e.bits & 1u) << bi);
        z[wi] = (z[wi] & ~mi) | (static_cast<Word>((e.bits >> 1) & 1u) << bi);
        x[wj] = (x[wj] & ~mj) | (static_cast<Word>((e.bits >> 2) & 1u) << bj);
        z[wj] = (z[wj] & ~mj) | (static_cast<Word>((e.bits >> 3) & 1u) << bj);
        phases_[a] = static_cast<std::uint8_t>((phases_[a] + e.phase) & 3u);
    }
}

ZMeasurementKind StabilizerState::classify_z(std::size_t site) const {
    check_site(site);
    for (std::size_t a = 0; a < rank_; ++a) {
        if (row_has_x(a, site)) {
            return ZMeasurementKind::RandomPure;
        }
    }
    for (std::size_t a = rank_; a < n_; ++a) {
        if (row_has_x(a, site) || row_has_x(a + n_, site)) {
            return ZMeasurementKind::RandomMixed;
        }
    }
    return ZMeasurementKind::Deterministic;
}

int StabilizerState::measure_z(std::size_t site, OutcomeSource &outcomes) {
    check_site(site);

    // (b) Some generator anticommutes with Z: lowest-index pivot.
    for (std::size_t p = 0; p < rank_; ++p) {
        if (!row_has_x(p, site)) {
            continue;
        }
        for (std::size_t a = 0; a < 2 * n_; ++a) {
            if (a != p && row_has_x(a, site)) {
                multiply_rows(a, p);
            }
        }
        copy_row(p + n_, p);
        const int outcome = outcomes.next_outcome();
        PauliString z = PauliString::single(n_, site, 'Z');
        z.set_phase_exp(outcome < 0 ? 2u : 0u);
        set_row(p, z);
        return outcome;
    }

    // (c) Z commutes with the group but a logical operator detects it.
    std::size_t logical = 2 * n_;
    for (std::size_t a = rank_; a < n_ && logical == 2 * n_; ++a) {
        if (row_has_x(a, site)) {
            logical = a;
        } else if (row_has_x(a + n_, site)) {
            logical = a + n_;
        }
    }
    if (logical != 2 * n_) {
        for (std::size_t a = rank_; a < 2 * n_; ++a) {
            if (a != logical && row_has_x(a, site)) {
                multiply_rows(a, logical);
            }
        }
        const int outcome = outcomes.next_outcome();
        PauliString z = PauliString::single(n_, site, 'Z');
        z.set_phase_exp(outcome < 0 ? 2u : 0u);
        insert_generator(z, logical);
        return outcome;
    }

    // (a) +-Z is a product of generators; the destabilizers say which.
    PauliString product(n_);
    for (std::size_t a = 0; a < rank_; ++a) {
        if (row_has_x(a + n_, site)) {
            unsigned log_i = pauli_kernels::multiply_into(product.x_words().data(), product.z_words().data(),
                                                          row_x(a), row_z(a), words_);
            product.set_phase_exp(product.phase_exp() + phases_[a] + log_i);
        }
    }
    if (product.weight() != 1 || !product.z(site) || product.x(site) || !product.is_hermitian()) {
        throw std::logic_error("deterministic Z measurement did not reduce to +-Z: " + product.str());
    }
    return product.phase_exp() == 0 ? +1 : -1;
}

void StabilizerState::forget_z(std::size_t site) {
    check_site(site);
    std::size_t pivot = rank_;
    for (std::size_t a = 0; a < rank_; ++a) {
        if (row_has_x(a, site)) {
            pivot = a;
            break;
        }
    }
    if (pivot == rank_) {
        return;
    }
    for (std::size_t a = pivot + 1; a < rank_; ++a) {
        if (row_has_x(a, site)) {
            multiply_rows(a, pivot);
            // Keeps the pivot's destabilizer conjugate to the pivot only.
            multiply_rows(pivot + n_, a + n_);
        }
    }
    rotate_pair_to(pivot, rank_ - 1);
    --rank_;
}

std::vector<Word> StabilizerState::complement_mask(std::span<const std::size_t> sites) const {
    std::vector<Word> mask(words_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
        mask[a / kWordBits] |= Word{1} << (a % kWordBits);
    }
    for (std::size_t s : sites) {
        check_site(s);
        mask[s / kWordBits] &= ~(Word{1} << (s % kWordBits));
    }
    return mask;
}

std::size_t StabilizerState::restricted_rank(const std::vector<Word> &mask) const {
    // Forward elimination over the generator rows with columns outside the
    // mask cleared.
    std::vector<Word> m(rank_ * stride_);
    for (std::size_t a = 0; a < rank_; ++a) {
        for (std::size_t w = 0; w < words_; ++w) {
            m[a * stride_ + w] = row_x(a)[w] & mask[w];
            m[a * stride_ + words_ + w] = row_z(a)[w] & mask[w];
        }
    }
    std::size_t rank = 0;
    for (std::size_t w = 0; w < stride_ && rank < rank_; ++w) {
        const Word column_mask = mask[w % words_];
        for (std::size_t b = 0; b < kWordBits && rank < rank_; ++b) {
            const Word bit = Word{1} << b;
            if (!(column_mask & bit)) {
                continue;
            }
            std::size_t pivot = rank_;
            for (std::size_t r = rank; r < rank_; ++r) {
                if (m[r * stride_ + w] & bit) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == rank_) {
                continue;
            }
            if (pivot != rank) {
                std::swap_ranges(m.begin() + pivot * stride_, m.begin() + (pivot + 1) * stride_, m.begin() + rank * stride_);
            }
            for (std::size_t r = rank + 1; r < rank_; ++r) {
                if (m[r * stride_ + w] & bit) {
                    for (std::size_t k = w; k < stride_; ++k) {
                        m[r * stride_ + k] ^= m[rank * stride_ + k];
                    }
                }
            }
            ++rank;
        }
    }
    return rank;
}

std::size_t StabilizerState::subsystem_entropy(std::span<const std::size_t> sites) const {
    std::vector<Word> mask = complement_mask(sites);
    std::size_t size = 0;
    for (std::size_t a = 0; a < n_; ++a) {
        if (!((mask[a / kWordBits] >> (a % kWordBits)) & 1u)) {
            ++size;
        }
    }
    // Generators supported inside A: rank - rank(restriction to B).
    return size - (rank_ - restricted_rank(mask));
}

std::size_t StabilizerState::mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
    std::vector<bool> in_a(n_, false);
    for (std::size_t s : a) {
        check_site(s);
        in_a[s] = true;
    }
    std::vector<std::size_t> joint(a.begin(), a.end());
    for (std::size_t s : b) {
        check_site(s);
        if (in_a[s]) {
            throw ArgumentError("mutual information needs disjoint subsystems; site " + std::to_string(s) +
                                " is in both");
        }
        joint.push_back(s);
    }
    return subsystem_entropy(a) + subsystem_entropy(b) - subsystem_entropy(joint);
}

std::string StabilizerState::canonical_text() const {
    std::vector<PauliString> rows = generators();
    std::size_t pivot_row = 0;
    for (std::size_t q = 0; q < n_ && pivot_row < rows.size(); ++q) {
        for (int kind = 0; kind < 2 && pivot_row < rows.size(); ++kind) {
            auto has = [&](const PauliString &p) { return kind == 0 ? p.x(q) : p.z(q); };
            std::size_t pivot = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r) {
                if (has(rows[r])) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[pivot], rows[pivot_row]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r != pivot_row && has(rows[r])) {
                    rows[r] *= rows[pivot_row];
                }
            }
            ++pivot_row;
        }
    }
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto &p : rows) {
        lines.push_back(p.str());
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto &line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

void StabilizerState::validate() const {
    if (rank_ > n_) {
        throw std::logic_error("rank exceeds qubit count");
    }
    for (std::size_t a = 0; a < rank_; ++a) {
        if (phases_[a] & 1u) {
            throw std::logic_error("generator " + std::to_string(a) + " is not Hermitian");
        }
    }
    // Symplectic basis: row a anticommutes with its partner and nothing else.
    // This implies the generators commute and are independent.
    for (std::size_t a = 0; a < 2 * n_; ++a) {
        for (std::size_t b = a + 1; b < 2 * n_; ++b) {
            bool anti = pauli_kernels::anticommutes(row_x(a), row_z(a), row_x(b), row_z(b), words_);
            bool expected = (b == a + n_);
            if (anti != expected) {
                throw std::logic_error("tableau rows " + std::to_string(a) + " and " + std::to_string(b) +
                                       (anti ? " anticommute" : " commute") + " unexpectedly");
            }
        }
    }
    std::vector<Word> all(words_, ~Word{0});
    if (restricted_rank(all) != rank_) {
        throw std::logic_error("generators are not independent");
    }
}

}  // namespace forgetsim
