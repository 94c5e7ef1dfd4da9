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

#include <doctest.h>

#include <array>
#include <map>
#include <cmath>
#include <numbers>

#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/statevector.hpp"
#include "helpers.hpp"

using namespace gapscope;
using gapscope::testing::max_diff;
using gapscope::testing::random_state;
using gapscope::testing::to_eigen;

TEST_CASE("initial states") {
    const StateVector zero(3);
    CHECK(zero[0] == Amplitude(1.0));
    CHECK(zero.norm_squared() == doctest::Approx(1.0));
    const auto plus = StateVector::product("+1");
    // qubit 0 in |+>, qubit 1 in |1>: indices 2 and 3.
    CHECK(std::abs(plus[2] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(plus[3] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(plus[0]) < 1e-15);
    const auto minus = StateVector::product("-");
    CHECK(std::abs(minus[1] + std::sqrt(0.5)) < 1e-15);
    CHECK_THROWS_AS(StateVector::product("0a"), DomainError);
    CHECK_THROWS_AS(StateVector(kMaxSimulatorQubits + 1), CapacityError);
    CHECK_THROWS_AS(StateVector(0), CapacityError);
}

TEST_CASE("pauli rotation matches the dense matrix") {
    const char *axes[] = {"X", "Y", "Z", "XX", "YY", "ZZ", "XYZ", "IYI", "ZIX", "YIY"};
    int seed = 0;
    for (const char *text : axes) {
        const auto axis = PauliString::parse(text);
        const int n = axis.n_qubits();
        for (double angle : {0.3, -1.1, std::numbers::pi, 2.5}) {
            auto psi = random_state(n, static_cast<std::uint64_t>(++seed));
            const Eigen::VectorXcd expected = rotation_matrix(axis, angle) * to_eigen(psi);
            apply_pauli_rotation(psi, axis, angle);
            CHECK(max_diff(psi, expected) < 1e-13);
        }
    }
}

TEST_CASE("pauli application matches the dense matrix") {
    for (const char *text : {"X", "Y", "Z", "XY", "YZI", "IYY"}) {
        const auto p = PauliString::parse(text);
        auto psi = random_state(p.n_qubits(), 99);
        const Eigen::VectorXcd expected = pauli_matrix(p) * to_eigen(psi);
        apply_pauli(psi, p);
        CHECK(max_diff(psi, expected) < 1e-14);
    }
}

TEST_CASE("expectation values") {
    auto psi = random_state(3, 5);
    for (const char *text : {"ZII", "XYZ", "IYX", "YYI"}) {
        const auto p = PauliString::parse(text);
        const auto v = to_eigen(psi);
        const double expected = (v.adjoint() * pauli_matrix(p) * v)(0, 0).real();
        CHECK(psi.expectation(p) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(StateVector::product("+").expectation(PauliString::parse("X")) == doctest::Approx(1.0));
}

TEST_CASE("circuits wrap angles and reject bad gates") {
    RotationCircuit c(2);
    c.add(PauliString::parse("XX"), 3.0 * std::numbers::pi);
    CHECK(c.gates()[0].angle == doctest::Approx(std::numbers::pi));
    c.add(PauliString::parse("ZI"), -3.5);
    CHECK(c.gates()[1].angle == doctest::Approx(-3.5 + 2.0 * std::numbers::pi));
    CHECK_THROWS_AS(c.add(PauliString::parse("II"), 0.1), DomainError);
    CHECK_THROWS_AS(c.add(PauliString::parse("X"), 0.1), DomainError);
}

TEST_CASE("circuit depth counts layers") {
    RotationCircuit c(4);
    c.add(PauliString::parse("XXII"), 0.1);
    c.add(PauliString::parse("IIXX"), 0.1);
    CHECK(circuit_depth(c) == 1);
    c.add(PauliString::parse("IXXI"), 0.1);
    CHECK(circuit_depth(c) == 2);
    c.add(PauliString::parse("ZIII"), 0.1);
    CHECK(circuit_depth(c) == 2);
    CHECK(circuit_depth(RotationCircuit(3)) == 0);
}

TEST_CASE("basis rotation maps eigenstates onto |0>") {
    auto plus = StateVector::product("+");
    rotate_to_basis(plus, 0, PauliLetter::X);
    CHECK(std::norm(plus[0]) == doctest::Approx(1.0));
    // |+i> = (|0> + i|1>)/sqrt 2
    StateVector plus_i(1, {std::sqrt(0.5), Amplitude(0.0, std::sqrt(0.5))});
    rotate_to_basis(plus_i, 0, PauliLetter::Y);
    CHECK(std::norm(plus_i[0]) == doctest::Approx(1.0));
    auto one = StateVector::product("1");
    rotate_to_basis(one, 0, PauliLetter::Z);
    CHECK(std::norm(one[1]) == doctest::Approx(1.0));
}

TEST_CASE("sampling follows the Born rule") {
    StateVector psi(2, {std::sqrt(0.1), 0.0, std::sqrt(0.6), Amplitude(0.0, std::sqrt(0.3))});
    auto rng = RandomStream::derive(7, {});
    std::array<int, 4> counts{};
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        ++counts[sample_bitstring(psi, rng)];
    }
    const double p[4] = {0.1, 0.0, 0.6, 0.3};
    for (int k = 0; k < 4; ++k) {
        const double sigma = std::sqrt(p[k] * (1 - p[k]) / n) + 1e-12;
        CHECK(std::abs(counts[k] / static_cast<double>(n) - p[k]) < 5 * sigma);
    }
    StateVector drifted(1, {1.0, 1.0});
    CHECK_THROWS_AS(sample_bitstring(drifted, rng), ConsistencyError);
}

TEST_CASE("measuring |0...0> in Z gives zeros") {
    auto rng = RandomStream::derive(1, {});
    StateVector psi(4);
    CHECK(measure_in_bases(psi, PauliString::parse("ZZZZ"), rng) == 0);
    StateVector other(2);
    CHECK_THROWS_AS(measure_in_bases(other, PauliString::parse("ZI"), rng), DomainError);
}

TEST_CASE("depolarizing trajectories") {
    auto rng = RandomStream::derive(3, {});
    StateVector psi(2);
    const int support[2] = {0, 1};
    CHECK_FALSE(apply_depolarizing(psi, support, 0.0, rng).has_value());
    CHECK_THROWS_AS(apply_depolarizing(psi, support, 1.5, rng), DomainError);

    // p = 1 always inserts a non-identity Pauli, uniform over the 15 choices.
    std::map<std::string, int> seen;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        StateVector s(2);
        const auto p = apply_depolarizing(s, support, 1.0, rng);
        REQUIRE(p.has_value());
        CHECK_FALSE(p->is_identity());
        ++seen[p->to_string()];
    }
    CHECK(seen.size() == 15);
    for (const auto &[name, count] : seen) {
        const double f = count / static_cast<double>(n);
        CHECK(std::abs(f - 1.0 / 15) < 5 * std::sqrt((1.0 / 15) * (14.0 / 15) / n));
    }

    // Averaged over trajectories, <Z> of |0> shrinks by 1 - 4p/3.
    const int one[1] = {0};
    double z = 0.0;
    const double p = 0.3;
    for (int i = 0; i < n; ++i) {
        StateVector s(1);
        apply_depolarizing(s, one, p, rng);
        z += s.expectation(PauliString::parse("Z"));
    }
    CHECK(std::abs(z / n - (1 - 4 * p / 3)) < 5 * std::sqrt(1.0 / n));
}
