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
#include "forgetsim/dense_oracle.hpp"

#include <cmath>
#include <complex>

#include "forgetsim/errors.hpp"

namespace forgetsim {

namespace {

using cd = std::complex<double>;

constexpr double kBranchFloor = 1e-12;
constexpr double kEigenFloor = 1e-14;

double entropy_of(const Eigen::MatrixXcd &rho) {
    Eigen::VectorXd lambda = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] > kEigenFloor) {
            s -= lambda[k] * std::log2(lambda[k]);
        }
    }
    return s;
}

}  // namespace

DenseState::DenseState(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxQubits) {
        throw DimensionError("dense oracle supports 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                             std::to_string(n));
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    rho_ = Eigen::MatrixXcd::Zero(dim, dim);
}

DenseState DenseState::pure_zero(std::size_t n) {
    DenseState s(n);
    s.rho_(0, 0) = 1.0;
    return s;
}

DenseState DenseState::maximally_mixed(std::size_t n) {
    DenseState s(n);
    const Eigen::Index dim = s.rho_.rows();
    s.rho_ = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return s;
}

DenseState DenseState::from_density(Eigen::MatrixXcd rho) {
    const Eigen::Index dim = rho.rows();
    if (rho.cols() != dim || dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("density matrix must be square with power-of-two dimension");
    }
    std::size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    DenseState s(n);
    s.rho_ = std::move(rho);
    return s;
}

DenseState DenseState::from_stabilizer(const StabilizerState &state) {
    DenseState s(state.num_qubits());
    const Eigen::Index dim = s.rho_.rows();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : state.generators()) {
        Eigen::MatrixXcd factor = Eigen::MatrixXcd::Identity(dim, dim) + pauli_matrix(g);
        acc = acc * factor;
    }
    s.rho_ = acc / static_cast<double>(dim);
    return s;
}

void DenseState::check_site(std::size_t site) const {
    if (site >= n_) {
        throw IndexError("site " + std::to_string(site) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

void DenseState::apply_unitary(const Eigen::Matrix4cd &u, std::size_t first, std::size_t second) {
    check_site(first);
    check_site(second);
    if (first == second) {
        throw ArgumentError("two-qubit gate needs distinct sites");
    }
    const Eigen::Index dim = rho_.rows();
    const Eigen::Index rest_mask = ~((Eigen::Index{1} << first) | (Eigen::Index{1} << second));
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            if ((r & rest_mask) != (c & rest_mask)) {
                continue;
            }
            const Eigen::Index ur = ((r >> first) & 1) | (((r >> second) & 1) << 1);
            const Eigen::Index uc = ((c >> first) & 1) | (((c >> second) & 1) << 1);
            full(r, c) = u(ur, uc);
        }
    }
    rho_ = full * rho_ * full.adjoint();
}

void DenseState::apply_gate(const CliffordGate2 &gate, std::size_t first, std::size_t second) {
    apply_unitary(clifford_unitary(gate), first, second);
}

double DenseState::outcome_probability(std::size_t site, int outcome) const {
    check_site(site);
    const Eigen::Index want = outcome < 0 ? 1 : 0;
    double p = 0.0;
    for (Eigen::Index b = 0; b < rho_.rows(); ++b) {
        if (((b >> site) & 1) == want) {
            p += rho_(b, b).real();
        }
    }
    return p;
}

void DenseState::measure_z(std::size_t site, int outcome) {
    const double p = outcome_probability(site, outcome);
    if (p <= kBranchFloor) {
        throw InconsistencyError("injected outcome " + std::to_string(outcome) + " on site " + std::to_string(site) +
                                 " has probability " + std::to_string(p));
    }
    const Eigen::Index want = outcome < 0 ? 1 : 0;
    for (Eigen::Index r = 0; r < rho_.rows(); ++r) {
        for (Eigen::Index c = 0; c < rho_.cols(); ++c) {
            if (((r >> site) & 1) != want || ((c >> site) & 1) != want) {
                rho_(r, c) = 0.0;
            }
        }
    }
    rho_ /= p;
}

void DenseState::forget_z(std::size_t site) {
    check_site(site);
    for (Eigen::Index r = 0; r < rho_.rows(); ++r) {
        for (Eigen::Index c = 0; c < rho_.cols(); ++c) {
            if (((r >> site) & 1) != ((c >> site) & 1)) {
                rho_(r, c) = 0.0;
            }
        }
    }
}

Eigen::MatrixXcd DenseState::reduced(std::span<const std::size_t> sites) const {
    std::vector<bool> keep(n_, false);
    for (std::size_t s : sites) {
        check_site(s);
        if (keep[s]) {
            throw ArgumentError("duplicate site " + std::to_string(s) + " in subsystem");
        }
        keep[s] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n_; ++q) {
        if (!keep[q]) {
            traced.push_back(q);
        }
    }
    auto scatter = [](std::size_t value, const auto &positions) {
        Eigen::Index out = 0;
        for (std::size_t k = 0; k < positions.size(); ++k) {
            out |= static_cast<Eigen::Index>((value >> k) & 1u) << positions[k];
        }
        return out;
    };
    const std::size_t dim_a = std::size_t{1} << sites.size();
    const std::size_t dim_b = std::size_t{1} << traced.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_a));
    for (std::size_t ar = 0; ar < dim_a; ++ar) {
        for (std::size_t ac = 0; ac < dim_a; ++ac) {
            cd sum = 0.0;
            for (std::size_t b = 0; b < dim_b; ++b) {
                const Eigen::Index tb = scatter(b, traced);
                sum += rho_(scatter(ar, sites) | tb, scatter(ac, sites) | tb);
            }
            out(static_cast<Eigen::Index>(ar), static_cast<Eigen::Index>(ac)) = sum;
        }
    }
    return out;
}

double DenseState::exact_entropy() const {
    return entropy_of(rho_);
}

double DenseState::exact_entropy(std::span<const std::size_t> sites) const {
    if (sites.empty()) {
        return 0.0;
    }
    return entropy_of(reduced(sites));
}

double DenseState::mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
    std::vector<std::size_t> joint(a.begin(), a.end());
    joint.insert(joint.end(), b.begin(), b.end());
    return exact_entropy(a) + exact_entropy(b) - exact_entropy(joint);
}

double DenseState::invariant_violation() const {
    double worst = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    worst = std::max(worst, std::abs(rho_.trace() - cd(1.0, 0.0)));
    Eigen::VectorXd lambda = hermitian_eigenvalues(rho_);
    worst = std::max(worst, std::max(0.0, -lambda.minCoeff()));
    return worst;
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    const std::size_t n = p.size();
    if (n == 0 || n > DenseState::kMaxQubits) {
        throw DimensionError("pauli_matrix supports 1.." + std::to_string(DenseState::kMaxQubits) + " qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::Index flip = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (p.x(k)) {
            flip |= Eigen::Index{1} << k;
        }
    }
    static const cd kIPow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        unsigned log_i = p.phase_exp();
        for (std::size_t k = 0; k < n; ++k) {
            const bool bit = (b >> k) & 1;
            if (p.z(k) && bit) {
                log_i += 2;  // Z|1> = -|1>
            }
            if (p.x(k) && p.z(k)) {
                log_i += 1;  // Y = i X Z
            }
        }
        m(b ^ flip, b) = kIPow[log_i & 3u];
    }
    return m;
}

Eigen::Matrix4cd clifford_unitary(const CliffordGate2 &gate) {
    const Eigen::Matrix4cd x1 = pauli_matrix(gate.image(0));
    const Eigen::Matrix4cd z1 = pauli_matrix(gate.image(1));
    const Eigen::Matrix4cd x2 = pauli_matrix(gate.image(2));
    const Eigen::Matrix4cd z2 = pauli_matrix(gate.image(3));
    const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
    const Eigen::Matrix4cd projector = (id + z1) * (id + z2) / 4.0;
    Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4cd candidate = projector.col(k);
        if (candidate.norm() > 1e-6) {
            psi0 = candidate.normalized();
            break;
        }
    }
    if (psi0.norm() < 0.5) {
        throw ArgumentError("gate images do not define a Clifford unitary");
    }
    Eigen::Matrix4cd u;
    u.col(0) = psi0;
    u.col(1) = x1 * psi0;
    u.col(2) = x2 * psi0;
    u.col(3) = x1 * x2 * psi0;
    return u;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

void apply_channel(DenseState &state, const Action &action) {
    std::visit(
        [&](const auto &a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, GateAction>) {
                state.apply_gate(a.gate, a.first, a.second);
            } else if constexpr (std::is_same_v<T, MeasureAction>) {
                if (a.outcome != 1 && a.outcome != -1) {
                    throw ArgumentError("measure action needs an injected outcome of +1 or -1");
                }
                state.measure_z(a.site, a.outcome);
            } else {
                state.forget_z(a.site);
            }
        },
        action);
}

}  // namespace forgetsim
