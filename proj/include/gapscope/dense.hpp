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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gapscope/hamiltonian.hpp"
#include "gapscope/statevector.hpp"

namespace gapscope {

/// Largest Hamiltonian `eigendecompose` will densify.
inline constexpr int kMaxDenseQubits = 14;

/// 2^n x 2^n matrix of a Pauli string, same index convention as StateVector.
Eigen::MatrixXcd pauli_matrix(const PauliString &pauli);

/// Dense Hamiltonian. Throws CapacityError above kMaxDenseQubits.
Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian &h);

/// cos(angle/2) I - i sin(angle/2) P as a dense matrix.
Eigen::MatrixXcd rotation_matrix(const PauliString &axis, double angle);

/// Column-stacking superoperator of rho -> U rho U^dagger, i.e. conj(U) (x) U.
Eigen::MatrixXcd unitary_superoperator(const Eigen::MatrixXcd &u);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;   ///< ascending
    Eigen::MatrixXcd eigenvectors; ///< orthonormal columns

    int n_qubits() const;
    /// Max absolute gap to a neighbour below 1e-8 * max(1, |E|).
    bool is_degenerate(int level) const;
};

/// Full spectrum by dense Hermitian solve. Real Hamiltonians use the real
/// symmetric solver.
EigenDecomposition eigendecompose(const Hamiltonian &h);

/// sum_k w_k |E_{level_k}>, normalized. Empty weights mean equal weights.
StateVector eigen_superposition(const EigenDecomposition &eig,
                                const std::vector<int> &levels,
                                const std::vector<double> &weights = {});

/**
 * Noise-free, Trotter-free signal S(t) = <psi(t)|O|psi(t)>.
 *
 * The initial state is expanded in the eigenbasis once; every time point
 * then costs one phase rotation and one basis change back.
 */
std::vector<double> exact_expectation_series(const EigenDecomposition &eig,
                                             const StateVector &initial,
                                             const PauliString &observable,
                                             std::span<const double> times);

} // namespace gapscope
