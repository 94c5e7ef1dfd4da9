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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gapscope/pauli.hpp"
#include "gapscope/random.hpp"

namespace gapscope {

using Amplitude = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr int kMaxSimulatorQubits = 26;

/**
 * Dense pure state on n qubits. Basis index bit q holds qubit q.
 *
 * Single owner, mutated in place by the gate kernels below.
 */
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(int n_qubits);
    /// Takes ownership of `amplitudes`; size must be 2^n. Not renormalized.
    StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

    /// Product state from characters over {0, 1, +, -}, qubit 0 first.
    static StateVector product(std::string_view spec);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    Amplitude operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const noexcept;
    /// <psi|P|psi>, real for Hermitian P.
    double expectation(const PauliString &pauli) const;

  private:
    int n_qubits_;
    std::vector<Amplitude> amps_;
};

struct RotationGate {
    PauliString axis;
    double angle = 0.0; ///< radians, wrapped to (-pi, pi]
};

/// Ordered list of Pauli rotations R_{P,theta} = exp(-i theta P / 2).
class RotationCircuit {
  public:
    explicit RotationCircuit(int n_qubits);

    /// Appends a rotation. Throws DomainError for an identity axis or a
    /// width mismatch. The angle is wrapped to (-pi, pi]; the wrap changes
    /// the unitary by a global sign only.
    void add(const PauliString &axis, double angle);
    void reserve(std::size_t n) { gates_.reserve(n); }

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<RotationGate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }

  private:
    int n_qubits_;
    std::vector<RotationGate> gates_;
};

/// In-place exp(-i angle P / 2). Never forms a dense matrix.
void apply_pauli_rotation(StateVector &state, const PauliString &axis, double angle);

/// In-place P|psi>, including the i^{n_y} phase of Y letters.
void apply_pauli(StateVector &state, const PauliString &pauli);

/// Arbitrary 2x2 unitary on one qubit, row-major {u00, u01, u10, u11}.
void apply_single_qubit_gate(StateVector &state, int qubit,
                             const std::array<Amplitude, 4> &u);

/**
 * One trajectory of the depolarizing channel on `support` (one or two qubits).
 *
 * With probability p a Pauli drawn uniformly from the 4^k - 1 non-identity
 * strings on the support is applied. Returns the inserted Pauli, if any.
 * Throws DomainError if p is outside [0, 1] or k is not 1 or 2.
 */
std::optional<PauliString> apply_depolarizing(StateVector &state,
                                              std::span<const int> support, double p,
                                              RandomStream &rng);

/// Runs every gate of the circuit in order.
void apply_circuit(StateVector &state, const RotationCircuit &circuit);

/// Basis change that maps the eigenbasis of `letter` onto the computational
/// basis: H for X, H S^dagger for Y, nothing for Z.
void rotate_to_basis(StateVector &state, int qubit, PauliLetter letter);

/// Samples one computational-basis outcome from |amplitude|^2 as a bitmask.
/// Throws ConsistencyError if the norm has drifted by more than 1e-6.
std::uint64_t sample_bitstring(const StateVector &state, RandomStream &rng);

/**
 * Terminal measurement of every qubit in the given Pauli basis.
 *
 * `bases` carries one of X/Y/Z on each qubit. The state is consumed: it is
 * left rotated into the measurement frame.
 */
std::uint64_t measure_in_bases(StateVector &state, const PauliString &bases,
                               RandomStream &rng);

/// Layer count when every gate occupies one layer on its support qubits.
int circuit_depth(const RotationCircuit &circuit);

} // namespace gapscope
