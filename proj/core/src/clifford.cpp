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
#include "forgetsim/clifford.hpp"

#include <algorithm>
#include <fstream>

#include "forgetsim/errors.hpp"

namespace forgetsim {

namespace {

constexpr std::uint8_t kX1 = 0b0001;
constexpr std::uint8_t kZ1 = 0b0010;
constexpr std::uint8_t kX2 = 0b0100;
constexpr std::uint8_t kZ2 = 0b1000;

constexpr std::array<std::uint8_t, 4> kGeneratorBits = {kX1, kZ1, kX2, kZ2};

// Split a nibble into per-qubit x and z words for the shared kernels.
inline void unpack(std::uint8_t bits, Word &x, Word &z) {
    x = (bits & 1u) | ((bits >> 1) & 2u);
    z = ((bits >> 1) & 1u) | ((bits >> 2) & 2u);
}

constexpr unsigned omega(std::uint8_t a, std::uint8_t b) {
    // <a,b> = x_a.z_b + z_a.x_b summed over both qubits.
    unsigned xa = (a & 1u) | ((a >> 1) & 2u);
    unsigned za = ((a >> 1) & 1u) | ((a >> 2) & 2u);
    unsigned xb = (b & 1u) | ((b >> 1) & 2u);
    unsigned zb = ((b >> 1) & 1u) | ((b >> 2) & 2u);
    return static_cast<unsigned>(std::popcount((xa & zb) ^ (za & xb))) & 1u;
}

bool symplectic_images(const std::array<std::uint8_t, 4> &v) {
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            unsigned expected = (a / 2 == b / 2) ? 1u : 0u;
            if (omega(v[a], v[b]) != expected) {
                return false;
            }
        }
    }
    return true;
}

bool rank_four(const std::array<std::uint8_t, 4> &v) {
    std::array<std::uint8_t, 4> rows = v;
    int rank = 0;
    for (int bit = 0; bit < 4; ++bit) {
        std::uint8_t mask = static_cast<std::uint8_t>(1u << bit);
        int pivot = -1;
        for (int r = rank; r < 4; ++r) {
            if (rows[r] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < 4; ++r) {
            if (r != rank && (rows[r] & mask)) {
                rows[r] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank == 4;
}

std::uint8_t encode_record(Pauli2 p) {
    return static_cast<std::uint8_t>((p.bits & 0xF) | ((p.phase & 2u) << 3));
}

Pauli2 decode_record(std::uint8_t byte) {
    return Pauli2{static_cast<std::uint8_t>(byte & 0xF), static_cast<std::uint8_t>((byte >> 3) & 2u)};
}

}  // namespace

Pauli2 multiply(Pauli2 a, Pauli2 b) {
    Word xa, za, xb, zb;
    unpack(a.bits, xa, za);
    unpack(b.bits, xb, zb);
    unsigned log_i = pauli_kernels::product_log_i(&xa, &za, &xb, &zb, 1);
    return Pauli2{static_cast<std::uint8_t>(a.bits ^ b.bits), static_cast<std::uint8_t>((a.phase + b.phase + log_i) & 3u)};
}

unsigned symplectic_inner(Pauli2 a, Pauli2 b) {
    return omega(a.bits, b.bits);
}

PauliString to_pauli_string(Pauli2 p) {
    PauliString out(2);
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    out.set_letter(0, kLetters[p.bits & 3u]);
    out.set_letter(1, kLetters[(p.bits >> 2) & 3u]);
    out.set_phase_exp(p.phase);
    return out;
}

Pauli2 to_pauli2(const PauliString &p) {
    if (p.size() != 2) {
        throw DimensionError("expected a two-qubit Pauli, got " + std::to_string(p.size()) + " qubits");
    }
    std::uint8_t bits = static_cast<std::uint8_t>(p.x(0) | (p.z(0) << 1) | (p.x(1) << 2) | (p.z(1) << 3));
    return Pauli2{bits, static_cast<std::uint8_t>(p.phase_exp())};
}

CliffordGate2::CliffordGate2() : images_{Pauli2{kX1, 0}, Pauli2{kZ1, 0}, Pauli2{kX2, 0}, Pauli2{kZ2, 0}} {
    build_table();
}

CliffordGate2 CliffordGate2::from_images(const std::array<Pauli2, 4> &images) {
    CliffordGate2 gate;
    for (std::size_t k = 0; k < 4; ++k) {
        gate.images_[k] = Pauli2{static_cast<std::uint8_t>(images[k].bits & 0xF), static_cast<std::uint8_t>(images[k].phase & 3u)};
    }
    gate.build_table();
    return gate;
}

CliffordGate2 CliffordGate2::from_images(const std::array<PauliString, 4> &images) {
    return from_images(std::array<Pauli2, 4>{to_pauli2(images[0]), to_pauli2(images[1]), to_pauli2(images[2]),
                                             to_pauli2(images[3])});
}

CliffordGate2 CliffordGate2::cnot() {
    // X1 -> X1 X2, Z1 -> Z1, X2 -> X2, Z2 -> Z1 Z2.
    return from_images({Pauli2{kX1 | kX2, 0}, Pauli2{kZ1, 0}, Pauli2{kX2, 0}, Pauli2{kZ1 | kZ2, 0}});
}

CliffordGate2 CliffordGate2::cz() {
    return from_images({Pauli2{kX1 | kZ2, 0}, Pauli2{kZ1, 0}, Pauli2{kZ1 | kX2, 0}, Pauli2{kZ2, 0}});
}

CliffordGate2 CliffordGate2::swap() {
    return from_images({Pauli2{kX2, 0}, Pauli2{kZ2, 0}, Pauli2{kX1, 0}, Pauli2{kZ1, 0}});
}

CliffordGate2 CliffordGate2::hadamard(int which) {
    CliffordGate2 g;
    std::array<Pauli2, 4> im = g.images_;
    std::swap(im[2 * which], im[2 * which + 1]);
    return from_images(im);
}

CliffordGate2 CliffordGate2::phase_s(int which) {
    // S X S^dagger = Y, S Z S^dagger = Z.
    CliffordGate2 g;
    std::array<Pauli2, 4> im = g.images_;
    im[2 * which].bits = which == 0 ? (kX1 | kZ1) : (kX2 | kZ2);
    return from_images(im);
}

CliffordGate2 CliffordGate2::pauli_x(int which) {
    CliffordGate2 g;
    std::array<Pauli2, 4> im = g.images_;
    im[2 * which + 1].phase = 2;
    return from_images(im);
}

PauliString CliffordGate2::image(std::size_t k) const {
    if (k >= 4) {
        throw IndexError("Clifford image index must be < 4");
    }
    return to_pauli_string(images_[k]);
}

void CliffordGate2::build_table() {
    for (std::uint8_t bits = 0; bits < 16; ++bits) {
        Pauli2 acc{0, 0};
        for (int q = 0; q < 2; ++q) {
            bool x = (bits >> (2 * q)) & 1u;
            bool z = (bits >> (2 * q + 1)) & 1u;
            if (x && z) {
                // Y = i X Z
                acc = multiply(acc, Pauli2{0, 1});
                acc = multiply(acc, images_[2 * q]);
                acc = multiply(acc, images_[2 * q + 1]);
            } else if (x) {
                acc = multiply(acc, images_[2 * q]);
            } else if (z) {
                acc = multiply(acc, images_[2 * q + 1]);
            }
        }
        table_[bits] = TableEntry{acc.bits, acc.phase};
    }
}

Pauli2 CliffordGate2::conjugate(Pauli2 p) const {
    const TableEntry &e = table_[p.bits & 0xF];
    return Pauli2{e.bits, static_cast<std::uint8_t>((p.phase + e.phase) & 3u)};
}

PauliString CliffordGate2::conjugate(const PauliString &two_qubit) const {
    return to_pauli_string(conjugate(to_pauli2(two_qubit)));
}

std::uint32_t CliffordGate2::key() const noexcept {
    std::uint32_t key = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        key |= static_cast<std::uint32_t>(encode_record(images_[k])) << (5 * k);
    }
    return key;
}

CliffordGate2 compose(const CliffordGate2 &first, const CliffordGate2 &second) {
    std::array<Pauli2, 4> images;
    for (std::size_t k = 0; k < 4; ++k) {
        images[k] = second.conjugate(first.images()[k]);
    }
    return CliffordGate2::from_images(images);
}

bool validate(const CliffordGate2 &gate) {
    std::array<std::uint8_t, 4> vectors;
    for (std::size_t k = 0; k < 4; ++k) {
        const Pauli2 &p = gate.images()[k];
        if (p.phase & 1u) {
            return false;
        }
        if (p.bits == 0) {
            return false;
        }
        vectors[k] = p.bits;
    }
    return symplectic_images(vectors) && rank_four(vectors);
}

CliffordGate2 sample_uniform(RandomStream &rng) {
    std::array<std::uint8_t, 8> buffer;

    const std::uint8_t a = static_cast<std::uint8_t>(1 + rng.below(15));

    std::size_t count = 0;
    for (std::uint8_t v = 1; v < 16; ++v) {
        if (omega(a, v)) {
            buffer[count++] = v;
        }
    }
    const std::uint8_t b = buffer[rng.below(count)];

    count = 0;
    for (std::uint8_t v = 1; v < 16; ++v) {
        if (!omega(a, v) && !omega(b, v)) {
            buffer[count++] = v;
        }
    }
    const std::uint8_t c = buffer[rng.below(count)];

    count = 0;
    for (std::uint8_t v = 1; v < 16; ++v) {
        if (!omega(a, v) && !omega(b, v) && omega(c, v)) {
            buffer[count++] = v;
        }
    }
    const std::uint8_t d = buffer[rng.below(count)];

    const auto signs = static_cast<unsigned>(rng.below(16));
    auto sign = [&](int k) {
        return static_cast<std::uint8_t>(((signs >> k) & 1u) << 1);
    };
    return CliffordGate2::from_images({Pauli2{a, sign(0)}, Pauli2{b, sign(1)}, Pauli2{c, sign(2)}, Pauli2{d, sign(3)}});
}

std::vector<CliffordGate2> enumerate_two_qubit_cliffords() {
    std::vector<CliffordGate2> gates;
    gates.reserve(kTwoQubitCliffordCount);
    for (unsigned m = 0; m < (1u << 16); ++m) {
        std::array<std::uint8_t, 4> v = {static_cast<std::uint8_t>(m & 0xF), static_cast<std::uint8_t>((m >> 4) & 0xF),
                                         static_cast<std::uint8_t>((m >> 8) & 0xF),
                                         static_cast<std::uint8_t>((m >> 12) & 0xF)};
        if (!symplectic_images(v) || !rank_four(v)) {
            continue;
        }
        for (unsigned signs = 0; signs < 16; ++signs) {
            std::array<Pauli2, 4> images;
            for (int k = 0; k < 4; ++k) {
                images[k] = Pauli2{v[k], static_cast<std::uint8_t>(((signs >> k) & 1u) << 1)};
            }
            gates.push_back(CliffordGate2::from_images(images));
        }
    }
    std::sort(gates.begin(), gates.end(), [](const auto &l, const auto &r) { return l.key() < r.key(); });
    return gates;
}

GateTable::GateTable(std::vector<CliffordGate2> gates) : gates_(std::move(gates)) {
}

GateTable GateTable::build() {
    return GateTable(enumerate_two_qubit_cliffords());
}

std::optional<GateTable> GateTable::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    auto read_u32 = [&](std::uint32_t &value) {
        unsigned char raw[4];
        if (!in.read(reinterpret_cast<char *>(raw), 4)) {
            return false;
        }
        value = raw[0] | (raw[1] << 8) | (raw[2] << 16) | (static_cast<std::uint32_t>(raw[3]) << 24);
        return true;
    };
    char magic[4];
    std::uint32_t version = 0;
    std::uint32_t count = 0;
    if (!in.read(magic, 4) || std::string_view(magic, 4) != "FSGT" || !read_u32(version) || version != 1 ||
        !read_u32(count) || count != kTwoQubitCliffordCount) {
        return std::nullopt;
    }
    std::vector<CliffordGate2> gates;
    gates.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        unsigned char record[4];
        if (!in.read(reinterpret_cast<char *>(record), 4)) {
            return std::nullopt;
        }
        auto gate = CliffordGate2::from_images(
            {decode_record(record[0]), decode_record(record[1]), decode_record(record[2]), decode_record(record[3])});
        if (!validate(gate)) {
            return std::nullopt;
        }
        if (!gates.empty() && gates.back().key() >= gate.key()) {
            return std::nullopt;
        }
        gates.push_back(gate);
    }
    return GateTable(std::move(gates));
}

GateTable GateTable::load_or_build(const std::filesystem::path &path) {
    if (auto cached = load(path)) {
        return std::move(*cached);
    }
    GateTable table = build();
    try {
        table.save(path);
    } catch (const std::exception &) {
        // An unwritable cache location only costs the rebuild next time.
    }
    return table;
}

void GateTable::save(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open gate cache for writing: " + path.string());
    }
    auto write_u32 = [&](std::uint32_t value) {
        unsigned char raw[4] = {static_cast<unsigned char>(value), static_cast<unsigned char>(value >> 8),
                                static_cast<unsigned char>(value >> 16), static_cast<unsigned char>(value >> 24)};
        out.write(reinterpret_cast<const char *>(raw), 4);
    };
    out.write("FSGT", 4);
    write_u32(1);
    write_u32(static_cast<std::uint32_t>(gates_.size()));
    for (const auto &gate : gates_) {
        unsigned char record[4];
        for (std::size_t k = 0; k < 4; ++k) {
            record[k] = encode_record(gate.images()[k]);
        }
        out.write(reinterpret_cast<const char *>(record), 4);
    }
    if (!out) {
        throw std::runtime_error("failed writing gate cache: " + path.string());
    }
}

std::optional<std::size_t> GateTable::index_of(const CliffordGate2 &gate) const {
    const std::uint32_t key = gate.key();
    auto it = std::lower_bound(gates_.begin(), gates_.end(), key,
                               [](const CliffordGate2 &g, std::uint32_t k) { return g.key() < k; });
    if (it == gates_.end() || it->key() != key) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - gates_.begin());
}

}  // namespace forgetsim
