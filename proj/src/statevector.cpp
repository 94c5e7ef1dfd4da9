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

#include "gapscope/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "gapscope/error.hpp"

namespace gapscope {

namespace {

inline int parity(std::uint64_t v) noexcept { return std::popcount(v) & 1; }

// i^k for k mod 4.
inline Amplitude i_power(int k) noexcept {
    switch (k & 3) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

// Complex product written out so the hot loops never hit the
// NaN-recovering library multiply.
inline Amplitude cmul(Amplitude a, Amplitude b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

// Index with a zero inserted at bit `pos`.
inline std::size_t insert_zero(std::size_t i, int pos) noexcept {
    const std::size_t low = i & ((std::size_t{1} << pos) - 1);
    return ((i >> pos) << (pos + 1)) | low;
}

void check_axis(const StateVector &state, const PauliString &p) {
    if (p.n_qubits() != state.n_qubits()) {
        throw DomainError("Pauli width " + std::to_string(p.n_qubits()) +
                          " does not match state width " +
                          std::to_string(state.n_qubits()));
    }
}

double wrap_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::remainder(angle, two_pi); // [-pi, pi]
    if (a <= -std::numbers::pi) {
        a += two_pi;
    }
    return a;
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxSimulatorQubits) {
        throw CapacityError("dense simulator supports 1.." +
                            std::to_string(kMaxSimulatorQubits) + " qubits, got " +
                            std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > kMaxSimulatorQubits) {
        throw CapacityError("dense simulator supports 1.." +
                            std::to_string(kMaxSimulatorQubits) + " qubits");
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw ConsistencyError("amplitude count does not match 2^n");
    }
}

StateVector StateVector::product(std::string_view spec) {
    const int n = static_cast<int>(spec.size());
    StateVector out(n);
    const double h = std::numbers::sqrt2 / 2.0;
    // Build qubit by qubit as a Kronecker product.
    std::vector<Amplitude> amps(std::size_t{1} << n, Amplitude{0.0, 0.0});
    amps[0] = 1.0;
    for (int q = 0; q < n; ++q) {
        Amplitude a0;
        Amplitude a1;
        switch (spec[static_cast<std::size_t>(q)]) {
        case '0':
            a0 = 1.0;
            a1 = 0.0;
            break;
        case '1':
            a0 = 0.0;
            a1 = 1.0;
            break;
        case '+':
            a0 = h;
            a1 = h;
            break;
        case '-':
            a0 = h;
            a1 = -h;
            break;
        default:
            throw DomainError("product state letters must be 0, 1, + or -; got \"" +
                              std::string(spec) + "\"");
        }
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < bit; ++i) {
            const Amplitude v = amps[i];
            amps[i] = v * a0;
            amps[i | bit] = v * a1;
        }
    }
    return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto &a : amps_) {
        sum += std::norm(a);
    }
    return sum;
}

double StateVector::expectation(const PauliString &pauli) const {
    check_axis(*this, pauli);
    const std::uint64_t x = pauli.x_mask();
    const std::uint64_t z = pauli.z_mask();
    const Amplitude phase = i_power(pauli.y_count());
    Amplitude sum{0.0, 0.0};
    for (std::size_t j = 0; j < amps_.size(); ++j) {
        const std::size_t k = j ^ x;
        const double sign = parity(k & z) ? -1.0 : 1.0;
        sum += std::conj(amps_[j]) * amps_[k] * sign;
    }
    return cmul(sum, phase).real();
}

RotationCircuit::RotationCircuit(int n_qubits) : n_qubits_(n_qubits) {}

void RotationCircuit::add(const PauliString &axis, double angle) {
    if (axis.is_identity()) {
        throw DomainError("rotation axis must be a non-identity Pauli string");
    }
    if (axis.n_qubits() != n_qubits_) {
        throw DomainError("rotation axis width does not match circuit width");
    }
    gates_.push_back({axis, wrap_angle(angle)});
}

void apply_pauli_rotation(StateVector &state, const PauliString &axis, double angle) {
    check_axis(state, axis);
    if (axis.is_identity()) {
        throw DomainError("rotation axis must be a non-identity Pauli string");
    }
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::uint64_t x = axis.x_mask();
    const std::uint64_t z = axis.z_mask();
    auto amps = state.amplitudes();

    if (x == 0) {
        // Diagonal: exp(-i angle/2) on even Z-parity, exp(+i angle/2) on odd.
        const Amplitude even{c, -s};
        const Amplitude odd{c, s};
        for (std::size_t j = 0; j < amps.size(); ++j) {
            amps[j] = cmul(amps[j], parity(j & z) ? odd : even);
        }
        return;
    }

    // psi'[j] = c psi[j] - i s (P psi)[j], with (P psi)[j] =
    // i^{n_y} (-1)^{|(j^x) & z|} psi[j^x]. Pairs are visited once via the
    // lowest set bit of x.
    const Amplitude w = cmul(Amplitude{0.0, -s}, i_power(axis.y_count()));
    const int pivot = std::countr_zero(x);
    const std::size_t half = amps.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t j = insert_zero(i, pivot);
        const std::size_t k = j ^ x;
        const Amplitude a = amps[j];
        const Amplitude b = amps[k];
        const Amplitude wj = parity(k & z) ? -w : w;
        const Amplitude wk = parity(j & z) ? -w : w;
        amps[j] = c * a + cmul(wj, b);
        amps[k] = c * b + cmul(wk, a);
    }
}

void apply_pauli(StateVector &state, const PauliString &pauli) {
    check_axis(state, pauli);
    const std::uint64_t x = pauli.x_mask();
    const std::uint64_t z = pauli.z_mask();
    auto amps = state.amplitudes();
    if (x == 0) {
        for (std::size_t j = 0; j < amps.size(); ++j) {
            if (parity(j & z)) {
                amps[j] = -amps[j];
            }
        }
        return;
    }
    const Amplitude phase = i_power(pauli.y_count());
    const int pivot = std::countr_zero(x);
    const std::size_t half = amps.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t j = insert_zero(i, pivot);
        const std::size_t k = j ^ x;
        const Amplitude a = amps[j];
        const Amplitude b = amps[k];
        amps[j] = cmul(parity(k & z) ? -phase : phase, b);
        amps[k] = cmul(parity(j & z) ? -phase : phase, a);
    }
}

void apply_single_qubit_gate(StateVector &state, int qubit,
                             const std::array<Amplitude, 4> &u) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw DomainError("qubit index out of range");
    }
    auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t half = amps.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t j = insert_zero(i, qubit);
        const Amplitude a = amps[j];
        const Amplitude b = amps[j | bit];
        amps[j] = cmul(u[0], a) + cmul(u[1], b);
        amps[j | bit] = cmul(u[2], a) + cmul(u[3], b);
    }
}

std::optional<PauliString> apply_depolarizing(StateVector &state,
                                              std::span<const int> support, double p,
                                              RandomStream &rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("depolarizing probability must lie in [0, 1]");
    }
    if (support.size() != 1 && support.size() != 2) {
        throw DomainError("depolarizing noise acts on one or two qubits");
    }
    if (p == 0.0 || rng.uniform() >= p) {
        return std::nullopt;
    }
    const unsigned k = static_cast<unsigned>(support.size());
    const std::uint64_t choice = 1 + rng.below((1ULL << (2 * k)) - 1);
    PauliString error(state.n_qubits());
    for (unsigned i = 0; i < k; ++i) {
        const auto code = static_cast<std::uint8_t>((choice >> (2 * i)) & 3U);
        error = error.with_letter(support[i], static_cast<PauliLetter>(code));
    }
    apply_pauli(state, error);
    return error;
}

void apply_circuit(StateVector &state, const RotationCircuit &circuit) {
    for (const auto &gate : circuit.gates()) {
        apply_pauli_rotation(state, gate.axis, gate.angle);
    }
}

void rotate_to_basis(StateVector &state, int qubit, PauliLetter letter) {
    const double h = std::numbers::sqrt2 / 2.0;
    switch (letter) {
    case PauliLetter::X:
        apply_single_qubit_gate(state, qubit, {Amplitude{h, 0}, Amplitude{h, 0},
                                               Amplitude{h, 0}, Amplitude{-h, 0}});
        break;
    case PauliLetter::Y:
        apply_single_qubit_gate(state, qubit, {Amplitude{h, 0}, Amplitude{0, -h},
                                               Amplitude{h, 0}, Amplitude{0, h}});
        break;
    case PauliLetter::Z:
        break;
    case PauliLetter::I:
        throw DomainError("measurement basis must be X, Y or Z");
    }
}

std::uint64_t sample_bitstring(const StateVector &state, RandomStream &rng) {
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw ConsistencyError("state norm drifted to " + std::to_string(norm));
    }
    const double target = rng.uniform() * norm;
    const auto amps = state.amplitudes();
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t j = 0; j < amps.size(); ++j) {
        const double pj = std::norm(amps[j]);
        if (pj > 0.0) {
            last_nonzero = j;
            acc += pj;
            if (target < acc) {
                return j;
            }
        }
    }
    return last_nonzero;
}

std::uint64_t measure_in_bases(StateVector &state, const PauliString &bases,
                               RandomStream &rng) {
    if (bases.n_qubits() != state.n_qubits() || bases.weight() != state.n_qubits()) {
        throw DomainError("measurement needs one X/Y/Z basis per qubit");
    }
    for (int q = 0; q < state.n_qubits(); ++q) {
        rotate_to_basis(state, q, bases.letter(q));
    }
    return sample_bitstring(state, rng);
}

int circuit_depth(const RotationCircuit &circuit) {
    std::vector<int> frontier(static_cast<std::size_t>(circuit.n_qubits()), 0);
    int depth = 0;
    for (const auto &gate : circuit.gates()) {
        int layer = 0;
        for (std::uint64_t s = gate.axis.support(); s != 0; s &= s - 1) {
            layer = std::max(layer, frontier[static_cast<std::size_t>(std::countr_zero(s))]);
        }
        ++layer;
        for (std::uint64_t s = gate.axis.support(); s != 0; s &= s - 1) {
            frontier[static_cast<std::size_t>(std::countr_zero(s))] = layer;
        }
        depth = std::max(depth, layer);
    }
    return depth;
}

} // namespace gapscope
