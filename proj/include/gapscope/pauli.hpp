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

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gapscope {

/// Largest register a bitmask Pauli string can describe.
inline constexpr int kMaxQubits = 64;

/// Single-qubit Pauli letter. The numeric value packs (x, z) as bits 0 and 1.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(PauliLetter letter);

/**
 * Tensor product of single-qubit Paulis in symplectic form.
 *
 * Qubit q has letter X if only bit q of the x-mask is set, Z if only bit q
 * of the z-mask is set, and Y if both are set. The text form lists qubit 0
 * first, so "XIZ" is X on qubit 0 and Z on qubit 2.
 */
class PauliString {
  public:
    PauliString() = default;
    /// Identity on n qubits.
    explicit PauliString(int n_qubits);
    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

    /// Parse "IXZY"-style text. Throws DomainError on bad letters or length.
    static PauliString parse(std::string_view letters);
    /// Identity everywhere except `letter` on each qubit in `sites`.
    static PauliString on_sites(int n_qubits, const std::vector<int> &sites,
                                PauliLetter letter);

    int n_qubits() const noexcept { return n_qubits_; }
    std::uint64_t x_mask() const noexcept { return x_; }
    std::uint64_t z_mask() const noexcept { return z_; }
    std::uint64_t support() const noexcept { return x_ | z_; }
    int weight() const noexcept { return std::popcount(x_ | z_); }
    bool is_identity() const noexcept { return (x_ | z_) == 0; }
    /// Number of Y letters; P = i^{n_y} X^x Z^z.
    int y_count() const noexcept { return std::popcount(x_ & z_); }

    PauliLetter letter(int qubit) const;
    PauliString with_letter(int qubit, PauliLetter letter) const;
    /// Qubits carrying a non-identity letter, ascending.
    std::vector<int> support_qubits() const;

    /// Symplectic inner product parity: true iff the strings commute.
    bool commutes_with(const PauliString &other) const noexcept {
        return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
    }

    std::string to_string() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;
    friend auto operator<=>(const PauliString &, const PauliString &) = default;

  private:
    int n_qubits_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

struct PauliStringHash {
    std::size_t operator()(const PauliString &p) const noexcept;
};

} // namespace gapscope
