// Copyright 2026 The gapscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapscope/dense.hpp"

#include <bit>
#include <cmath>

#include "gapscope/error.hpp"

namespace gapscope {

namespace {

std::complex<double> i_power(int k) {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3];
}

void check_dense_capacity(int n) {
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense matrices are limited to " +
                            std::to_string(kMaxDenseQubits) + " qubits, got " +
                            std::to_string(n));
    }
}

// Adds coeff * P into m (real or complex matrix).
template <typename Matrix>
void accumulate_pauli(Matrix &m, const PauliString &p, double coeff) {
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const auto phase = i_power(p.y_count());
    for (std::size_t j = 0; j < dim; ++j) {
        const double sign = (std::popcount(j & z) & 1) ? -1.0 : 1.0;
        const auto value = phase * (sign * coeff);
        if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
            m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += value.real();
        } else {
            m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += value;
        }
    }
}

} // namespace

Eigen::MatrixXcd pauli_matrix(const PauliString &pauli) {
    check_dense_capacity(pauli.n_qubits());
    const Eigen::Index dim = Eigen::Index{1} << pauli.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    accumulate_pauli(m, pauli, 1.0);
    return m;
}

Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian &h) {
    check_dense_capacity(h.n_qubits());
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        accumulate_pauli(m, t.pauli, t.coeff);
    }
    return m;
}

Eigen::MatrixXcd rotation_matrix(const PauliString &axis, double angle) {
    const Eigen::MatrixXcd p = pauli_matrix(axis);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p.rows(), p.cols());
    return std::cos(0.5 * angle) * id - std::complex<double>(0.0, std::sin(0.5 * angle)) * p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd unitary_superoperator(const Eigen::MatrixXcd &u) {
    return kron(u.conjugate(), u);
}

int EigenDecomposition::n_qubits() const {
    return std::countr_zero(static_cast<std::uint64_t>(eigenvalues.size()));
}

bool EigenDecomposition::is_degenerate(int level) const {
    const Eigen::Index i = level;
    const double e = eigenvalues(i);
    const double tol = 1e-8 * std::max(1.0, std::abs(e));
    if (i > 0 && std::abs(eigenvalues(i - 1) - e) < tol) {
        return true;
    }
    return i + 1 < eigenvalues.size() && std::abs(eigenvalues(i + 1) - e) < tol;
}

EigenDecomposition eigendecompose(const Hamiltonian &h) {
    check_dense_capacity(h.n_qubits());
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    EigenDecomposition out;
    if (h.is_real()) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
        for (const auto &t : h.terms()) {
            accumulate_pauli(m, t.pauli, t.coeff);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        if (solver.info() != Eigen::Success) {
            throw ConsistencyError("eigensolver did not converge");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<std::complex<double>>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_matrix(h));
        if (solver.info() != Eigen::Success) {
            throw ConsistencyError("eigensolver did not converge");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    return out;
}

StateVector eigen_superposition(const EigenDecomposition &eig, const std::vector<int> &levels,
                                const std::vector<double> &weights) {
    if (levels.empty()) {
        throw DomainError("eigen superposition needs at least one level");
    }
    if (!weights.empty() && weights.size() != levels.size()) {
        throw DomainError("eigen superposition weights and levels differ in length");
    }
    const Eigen::Index dim = eig.eigenvalues.size();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 0 || levels[k] >= dim) {
            throw DomainError("eigen level " + std::to_string(levels[k]) + " out of range");
        }
        const double w = weights.empty() ? 1.0 : weights[k];
        psi += w * eig.eigenvectors.col(levels[k]);
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw DomainError("eigen superposition has zero norm");
    }
    psi /= norm;
    return StateVector(eig.n_qubits(),
                       std::vector<Amplitude>(psi.data(), psi.data() + psi.size()));
}

std::vector<double> exact_expectation_series(const EigenDecomposition &eig,
                                             const StateVector &initial,
                                             const PauliString &observable,
                                             std::span<const double> times) {
    const Eigen::Index dim = eig.eigenvalues.size();
    if (static_cast<Eigen::Index>(initial.dimension()) != dim) {
        throw DomainError("initial state does not match the decomposition");
    }
    const auto amps = initial.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi0(amps.data(), dim);
    const Eigen::VectorXcd coeffs = eig.eigenvectors.adjoint() * psi0;

    std::vector<double> out;
    out.reserve(times.size());
    Eigen::VectorXcd phased(dim);
    for (double t : times) {
        for (Eigen::Index a = 0; a < dim; ++a) {
            phased(a) = coeffs(a) * std::polar(1.0, -eig.eigenvalues(a) * t);
        }
        const Eigen::VectorXcd psi_t = eig.eigenvectors * phased;
        StateVector state(initial.n_qubits(),
                          std::vector<Amplitude>(psi_t.data(), psi_t.data() + dim));
        out.push_back(state.expectation(observable));
    }
    return out;
}

} // namespace gapscope
