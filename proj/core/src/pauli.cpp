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
#include "forgetsim/pauli.hpp"

#include "forgetsim/errors.hpp"

namespace forgetsim {

namespace {

void require_same_size(const PauliString &p, const PauliString &q) {
    if (p.size() != q.size()) {
        throw DimensionError("Pauli size mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    }
}

}  // namespace

PauliString::PauliString(std::size_t n) : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {
}

PauliString PauliString::from_text(std::string_view text) {
    unsigned phase = 0;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        if (text.front() == '-') {
            phase = 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        result.set_letter(k, text[k]);
    }
    result.phase_ = phase & 3u;
    return result;
}

PauliString PauliString::single(std::size_t n, std::size_t site, char letter) {
    PauliString result(n);
    result.set_letter(site, letter);
    return result;
}

bool PauliString::x(std::size_t k) const {
    if (k >= n_) {
        throw IndexError("qubit " + std::to_string(k) + " out of range for " + std::to_string(n_) + " qubits");
    }
    return (xs_[k / kWordBits] >> (k % kWordBits)) & 1u;
}

bool PauliString::z(std::size_t k) const {
    if (k >= n_) {
        throw IndexError("qubit " + std::to_string(k) + " out of range for " + std::to_string(n_) + " qubits");
    }
    return (zs_[k / kWordBits] >> (k % kWordBits)) & 1u;
}

char PauliString::letter(std::size_t k) const {
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[static_cast<int>(x(k)) | (static_cast<int>(z(k)) << 1)];
}

void PauliString::set_letter(std::size_t k, char letter) {
    if (k >= n_) {
        throw IndexError("qubit " + std::to_string(k) + " out of range for " + std::to_string(n_) + " qubits");
    }
    bool xb = false;
    bool zb = false;
    switch (letter) {
        case 'I':
        case '_':
            break;
        case 'X':
            xb = true;
            break;
        case 'Y':
            xb = zb = true;
            break;
        case 'Z':
            zb = true;
            break;
        default:
            throw ArgumentError(std::string("not a Pauli letter: '") + letter + "'");
    }
    Word mask = Word{1} << (k % kWordBits);
    Word &xw = xs_[k / kWordBits];
    Word &zw = zs_[k / kWordBits];
    xw = xb ? (xw | mask) : (xw & ~mask);
    zw = zb ? (zw | mask) : (zw & ~mask);
}

bool PauliString::is_identity_up_to_phase() const noexcept {
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

std::size_t PauliString::weight() const noexcept {
    std::size_t total = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        total += static_cast<std::size_t>(std::popcount(xs_[w] | zs_[w]));
    }
    return total;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    require_same_size(*this, rhs);
    unsigned log_i = pauli_kernels::multiply_into(xs_.data(), zs_.data(), rhs.xs_.data(), rhs.zs_.data(), xs_.size());
    phase_ = (phase_ + rhs.phase_ + log_i) & 3u;
    return *this;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(n_ + 2);
    out += (phase_ & 2u) ? '-' : '+';
    if (phase_ & 1u) {
        out += 'i';
    }
    for (std::size_t k = 0; k < n_; ++k) {
        out += letter(k);
    }
    return out;
}

unsigned symplectic_inner(const PauliString &p, const PauliString &q) {
    require_same_size(p, q);
    return pauli_kernels::anticommutes(p.x_words().data(), p.z_words().data(), q.x_words().data(),
                                       q.z_words().data(), p.num_words())
               ? 1u
               : 0u;
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    PauliString result = p;
    result *= q;
    return result;
}

}  // namespace forgetsim
