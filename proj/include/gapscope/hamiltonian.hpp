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

#include <string>
#include <vector>

#include <json.hpp>

#include "gapscope/pauli.hpp"

namespace gapscope {

struct PauliTerm {
    double coeff = 0.0;
    PauliString pauli;
};

/**
 * Real linear combination of Pauli strings, H = sum_j h_j P_j.
 *
 * Repeated strings are merged at construction by summing coefficients; the
 * merged term keeps the position of its first occurrence, which fixes the
 * gate order of the product formula built from it.
 */
class Hamiltonian {
  public:
    explicit Hamiltonian(int n_qubits);
    Hamiltonian(int n_qubits, const std::vector<PauliTerm> &terms);

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Identity terms only shift the spectrum; gap estimation ignores them.
    bool has_identity_term() const noexcept;
    /// True when every term has an even number of Y letters, i.e. the
    /// matrix is real in the computational basis.
    bool is_real() const noexcept;

    Hamiltonian scaled(double factor) const;

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

enum class ModelKind { heisenberg, tfim };

ModelKind parse_model_kind(const std::string &name);
std::string to_string(ModelKind kind);

struct ModelParams {
    // Heisenberg couplings.
    double jx = 1.0;
    double jy = 1.0;
    double jz = 1.0;
    // Transverse-field Ising: H = -J sum Z Z - d sum X.
    double j = 1.0;
    double d = 1.0;
};

/// Open-boundary chain. Heisenberg terms are ordered bond by bond
/// (XX, YY, ZZ on bond 0, then bond 1, ...); TFIM lists the N-1 ZZ bonds
/// followed by the N field terms. Throws InvalidModelError for n < 2.
Hamiltonian build_model(ModelKind kind, int n_qubits, const ModelParams &params);

/// Sum of |h_j|.
double l1_norm(const Hamiltonian &h);

/// sum_{a<b} ||[h_a P_a, h_b P_b]||, which is 2|h_a h_b| for every
/// anticommuting pair and zero otherwise.
double commutator_norm(const Hamiltonian &h);

/// ZZ-chain gap 2 sqrt(J^2 + d^2 - 2 J d cos(pi / (N + 1))).
double tfim_gap(int n_qubits, double j, double d);

enum class LocalityMode { all_subsets, contiguous_windows };

LocalityMode parse_locality_mode(const std::string &name);
std::string to_string(LocalityMode mode);

struct ObservableSet {
    std::vector<PauliString> observables;
    int locality = 1;
    LocalityMode mode = LocalityMode::all_subsets;

    std::size_t size() const noexcept { return observables.size(); }
};

/// Every Pauli string of weight 1..q. In contiguous-window mode only strings
/// whose support fits inside q consecutive qubits are kept. Throws
/// DomainError unless 1 <= q <= n_qubits.
ObservableSet enumerate_observables(int n_qubits, int q,
                                    LocalityMode mode = LocalityMode::all_subsets);

/// [{"coeff": h, "pauli": "XXI"}, ...]
nlohmann::json to_json(const Hamiltonian &h);
Hamiltonian hamiltonian_from_json(const nlohmann::json &j);

} // namespace gapscope
