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

#include <cmath>
#include <numbers>

#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/evolution.hpp"

using namespace gapscope;
using std::numbers::pi;

TEST_CASE("interpolation coefficients at reference points") {
    const auto c = pai_coefficients(pi / 8, pi / 4);
    CHECK(c.a1 == doctest::Approx(0.49999999999999994).epsilon(1e-14));
    CHECK(c.a2 == doctest::Approx(0.541196100146197).epsilon(1e-14));
    CHECK(c.a3 == doctest::Approx(-0.04119610014619698).epsilon(1e-12));
    CHECK(c.gamma == doctest::Approx(1.0823922002923938).epsilon(1e-14));
    CHECK(c.branch_angle == doctest::Approx(pi / 4));

    const auto d = pai_coefficients(0.3, 1.0);
    CHECK(d.a1 == doctest::Approx(0.7071951896570488).epsilon(1e-14));
    CHECK(d.a2 == doctest::Approx(0.35119476725487486).epsilon(1e-14));
    CHECK(d.a3 == doctest::Approx(-0.058389956911923675).epsilon(1e-12));
}

TEST_CASE("interpolation edge cases") {
    const auto zero = pai_coefficients(0.0, 0.5);
    CHECK(zero.a1 == doctest::Approx(1.0));
    CHECK(zero.a2 == 0.0);
    CHECK(zero.gamma == doctest::Approx(1.0));

    const auto full = pai_coefficients(0.5, 0.5);
    CHECK(std::abs(full.a1) < 1e-15);
    CHECK(full.a2 == doctest::Approx(1.0));
    CHECK(std::abs(full.a3) < 1e-15);

    const auto neg = pai_coefficients(-0.2, 0.5);
    const auto pos = pai_coefficients(0.2, 0.5);
    CHECK(neg.branch_angle == doctest::Approx(-0.5));
    CHECK(neg.a2 == doctest::Approx(pos.a2));
    CHECK(neg.gamma == doctest::Approx(pos.gamma));

    CHECK_THROWS_AS(pai_coefficients(0.6, 0.5), DomainError);
    CHECK_THROWS_AS(pai_coefficients(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(pai_coefficients(0.1, pi), DomainError);
    CHECK_NOTHROW(pai_coefficients(0.5 * (1 + 1e-14), 0.5));
}

TEST_CASE("decomposition reproduces the rotation channel, negative angles included") {
    const auto axis = PauliString::parse("Y");
    for (double theta : {-0.7, -0.1, 0.0, 0.25, 0.7}) {
        const double delta = 0.7;
        const auto c = pai_coefficients(theta, delta);
        const Eigen::MatrixXcd mix =
            c.a1 * Eigen::MatrixXcd::Identity(4, 4) +
            c.a2 * unitary_superoperator(rotation_matrix(axis, c.branch_angle)) +
            c.a3 * unitary_superoperator(rotation_matrix(axis, pi));
        const Eigen::MatrixXcd target = unitary_superoperator(rotation_matrix(axis, theta));
        CHECK((mix - target).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("quasiprobability sampling") {
    const QuasiProbability q({0.5, -0.25, 0.25});
    CHECK(q.gamma() == doctest::Approx(1.0));
    CHECK(q.probability(1) == doctest::Approx(0.25));
    auto rng = RandomStream::derive(11, {});
    int counts[3] = {0, 0, 0};
    double weighted = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto d = q.sample(rng);
        ++counts[d.branch];
        // Unbiased estimate of sum_d a_d f(d) with f = branch index.
        weighted += q.gamma() * d.sign * static_cast<double>(d.branch);
    }
    CHECK(std::abs(counts[0] / double(n) - 0.5) < 5 * std::sqrt(0.25 / n));
    CHECK(std::abs(counts[1] / double(n) - 0.25) < 5 * std::sqrt(0.1875 / n));
    CHECK(std::abs(weighted / n - 0.25) < 0.02);
    CHECK_THROWS_AS(QuasiProbability({}), DomainError);
    CHECK_THROWS_AS(QuasiProbability({0.0, 0.0}), DomainError);
}

TEST_CASE("trotter schedule") {
    const Hamiltonian h(2, {{0.5, PauliString::parse("XX")}, {2.0, PauliString(2)},
                            {-1.0, PauliString::parse("IZ")}});
    const auto s = trotter_schedule(h, 1.0, 4);
    REQUIRE(s.axes.size() == 2);
    CHECK(s.angles[0] == doctest::Approx(0.25));
    CHECK(s.angles[1] == doctest::Approx(-0.5));
    CHECK(s.max_abs_angle() == doctest::Approx(0.5));
    CHECK(s.gate_count() == 8);
    CHECK(expand(s).size() == 8);
    CHECK_THROWS_AS(trotter_schedule(h, 1.0, 0), DomainError);
    CHECK_THROWS_AS(trotter_schedule(h, -1.0, 3), DomainError);
}

TEST_CASE("trotter depth of the six-site heisenberg chain") {
    const auto h = build_model(ModelKind::heisenberg, 6, {});
    CHECK(circuit_depth(trotter_circuit(h, 3.0, 300)) == 1809);
}

TEST_CASE("time grid") {
    const TimeGrid g(3.0, 60, 300);
    CHECK(g.dt() == doctest::Approx(0.05));
    CHECK(g.step() == doctest::Approx(0.01));
    CHECK(g.time(60) == doctest::Approx(3.0));
    CHECK(g.steps(1) == 5);
    CHECK(g.steps(60) == 300);
    const TimeGrid odd(1.0, 3, 4);
    CHECK(odd.steps(1) == 1); // 4/3 rounds to 1
    CHECK(odd.steps(2) == 3); // 8/3 rounds to 3
    CHECK(odd.steps(3) == 4);
    const TimeGrid half(1.0, 4, 6);
    CHECK(half.steps(1) == 2); // 1.5 rounds up
    CHECK_THROWS_AS(TimeGrid(1.0, 10, 5), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, 1, 5), DomainError);
    CHECK_THROWS_AS(g.time(0), DomainError);
    CHECK_THROWS_AS(g.steps(61), DomainError);
}

TEST_CASE("sampled circuits use only +-delta and pi") {
    const Hamiltonian h(2, {{1.0, PauliString::parse("XX")}, {-1.0, PauliString::parse("IZ")}});
    const auto s = trotter_schedule(h, 0.7, 4);
    const double delta = pi / 4;
    const double gamma = gamma_exact(h, 0.7, delta, 4);
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = RandomStream::derive(5, {i});
        const auto c = sample_tepai_circuit(s, delta, rng);
        CHECK(std::abs(c.gamma_signed) == doctest::Approx(gamma).epsilon(1e-14));
        CHECK(c.gate_count == static_cast<int>(c.circuit.size()));
        for (const auto &g : c.circuit.gates()) {
            const bool xx = g.axis.to_string() == "XX";
            const double expected_delta = xx ? delta : -delta;
            CHECK((std::abs(g.angle - expected_delta) < 1e-15 || std::abs(g.angle - pi) < 1e-15));
        }
    }
    auto rng = RandomStream::derive(5, {});
    CHECK_THROWS_AS(sample_tepai_circuit(s, 0.3, rng), DomainError);
}

TEST_CASE("sampled circuits average to the trotter channel") {
    // Mean of Gamma_l * rho_l over samples equals the Trotter state's
    // density matrix; compare one expectation value.
    const Hamiltonian h(2, {{1.0, PauliString::parse("XX")}, {1.0, PauliString::parse("IZ")}});
    const auto s = trotter_schedule(h, 0.7, 4);
    StateVector exact(2);
    apply_circuit(exact, expand(s));
    const auto o = PauliString::parse("ZI");
    double sum = 0.0, sum_sq = 0.0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        auto rng = RandomStream::derive(17, {static_cast<std::uint64_t>(i)});
        const auto c = sample_tepai_circuit(s, pi / 4, rng);
        StateVector psi(2);
        apply_circuit(psi, c.circuit);
        const double v = c.gamma_signed * psi.expectation(o);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - exact.expectation(o)) < 5 * se);
}

TEST_CASE("asymptotics and finite-K values") {
    const Hamiltonian h(2, {{0.5, PauliString::parse("XX")}, {0.5, PauliString::parse("IZ")}});
    const auto a = tepai_asymptotics(h, 1.0, pi / 4);
    CHECK(a.expected_gates == doctest::Approx((3 - std::cos(pi / 4)) / std::sin(pi / 4)));
    CHECK(a.gamma_limit == doctest::Approx(std::exp(2 * std::tan(pi / 8))));
    CHECK(a.overhead_limit == doctest::Approx(a.gamma_limit * a.gamma_limit));
    CHECK(gamma_exact(h, 1.0, pi / 4, 1000) == doctest::Approx(a.gamma_limit).epsilon(0.01));
    CHECK(gamma_exact(h, 1.0, pi / 4, 20000) == doctest::Approx(a.gamma_limit).epsilon(2e-4));
    CHECK(expected_gate_count(h, 1.0, pi / 4, 20000) ==
          doctest::Approx(a.expected_gates).epsilon(1e-3));
    // One step of one term: Gamma is the single gamma.
    const Hamiltonian one(1, {{0.25, PauliString::parse("X")}});
    CHECK(gamma_exact(one, 1.0, 1.0, 1) == doctest::Approx(pai_coefficients(0.5, 1.0).gamma));
}

TEST_CASE("delta for a target overhead") {
    const auto h = build_model(ModelKind::heisenberg, 4, {});
    const double t = 2.0;
    const double delta = delta_for_overhead(1.5, h, t);
    CHECK(std::log(tepai_asymptotics(h, t, delta).gamma_limit) == doctest::Approx(1.5));
    CHECK_THROWS_AS(delta_for_overhead(0.0, h, t), DomainError);
}

TEST_CASE("trotter error bound formula") {
    const auto h = build_model(ModelKind::heisenberg, 3, {});
    CHECK(trotter_error_bound(h, 1.0, 2.0, 16) == doctest::Approx(4.0 * 12.0 / 16));
}
