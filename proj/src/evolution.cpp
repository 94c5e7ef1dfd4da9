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

#include "gapscope/evolution.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gapscope/error.hpp"

namespace gapscope {

QuasiProbability::QuasiProbability(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw DomainError("quasiprobability decomposition needs at least one branch");
    }
    for (double a : coeffs_) {
        if (!std::isfinite(a)) {
            throw DomainError("quasiprobability coefficient is not finite");
        }
        gamma_ += std::abs(a);
    }
    if (gamma_ == 0.0) {
        throw DomainError("quasiprobability decomposition has zero norm");
    }
    double acc = 0.0;
    for (double a : coeffs_) {
        acc += std::abs(a) / gamma_;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

double QuasiProbability::probability(std::size_t branch) const {
    return std::abs(coeffs_.at(branch)) / gamma_;
}

QuasiProbability::Draw QuasiProbability::sample(RandomStream &rng) const {
    const double u = rng.uniform();
    std::size_t d = 0;
    while (d + 1 < cumulative_.size() && u >= cumulative_[d]) {
        ++d;
    }
    return {d, coeffs_[d] < 0.0 ? -1.0 : 1.0};
}

PaiCoefficients pai_coefficients(double theta, double delta) {
    if (!(delta > 0.0 && delta < std::numbers::pi)) {
        throw DomainError("interpolation angle delta must lie in (0, pi), got " +
                          std::to_string(delta));
    }
    double mag = std::abs(theta);
    if (!(mag <= delta * (1.0 + 1e-12))) {
        throw DomainError("rotation angle |theta|=" + std::to_string(mag) +
                          " exceeds delta=" + std::to_string(delta));
    }
    mag = std::min(mag, delta);
    PaiCoefficients c;
    const double gap = std::sin(0.5 * (delta - mag));
    c.a1 = std::cos(0.5 * mag) * gap / std::sin(0.5 * delta);
    c.a2 = std::sin(mag) / std::sin(delta);
    c.a3 = -std::sin(0.5 * mag) * gap / std::cos(0.5 * delta);
    c.gamma = std::abs(c.a1) + std::abs(c.a2) + std::abs(c.a3);
    c.branch_angle = theta < 0.0 ? -delta : delta;
    return c;
}

double TrotterSchedule::max_abs_angle() const noexcept {
    double m = 0.0;
    for (double a : angles) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

TrotterSchedule trotter_schedule(const Hamiltonian &h, double t, int steps) {
    if (steps < 1) {
        throw DomainError("Trotter step count must be at least 1");
    }
    if (!(t >= 0.0)) {
        throw DomainError("evolution time must be non-negative");
    }
    TrotterSchedule s;
    s.n_qubits = h.n_qubits();
    s.steps = steps;
    const double step = t / steps;
    for (const auto &term : h.terms()) {
        if (term.pauli.is_identity()) {
            continue;
        }
        s.axes.push_back(term.pauli);
        s.angles.push_back(2.0 * term.coeff * step);
    }
    return s;
}

RotationCircuit expand(const TrotterSchedule &schedule) {
    RotationCircuit c(schedule.n_qubits);
    c.reserve(schedule.gate_count());
    for (int k = 0; k < schedule.steps; ++k) {
        for (std::size_t j = 0; j < schedule.axes.size(); ++j) {
            c.add(schedule.axes[j], schedule.angles[j]);
        }
    }
    return c;
}

RotationCircuit trotter_circuit(const Hamiltonian &h, double t, int steps) {
    return expand(trotter_schedule(h, t, steps));
}

double trotter_error_bound(const Hamiltonian &h, double observable_norm, double t, int steps) {
    if (steps < 1) {
        throw DomainError("Trotter step count must be at least 1");
    }
    return t * t * observable_norm * commutator_norm(h) / steps;
}

TimeGrid::TimeGrid(double t_total, int n_t, int k_steps_total)
    : t_total_(t_total), n_t_(n_t), k_total_(k_steps_total) {
    if (!(t_total > 0.0) || !std::isfinite(t_total)) {
        throw DomainError("total evolution time must be positive");
    }
    if (n_t < 1) {
        throw DomainError("number of time points must be at least 1");
    }
    if (k_steps_total < n_t) {
        throw DomainError("total Trotter steps (" + std::to_string(k_steps_total) +
                          ") must be at least the number of time points (" +
                          std::to_string(n_t) + ")");
    }
}

double TimeGrid::time(int s) const {
    if (s < 1 || s > n_t_) {
        throw DomainError("time index out of range");
    }
    return s * t_total_ / n_t_;
}

int TimeGrid::steps(int s) const {
    if (s < 1 || s > n_t_) {
        throw DomainError("time index out of range");
    }
    // round(t_s / delta) with t_s / delta = s K / N_t, in exact integer arithmetic.
    const long long num = 2LL * s * k_total_ + n_t_;
    return static_cast<int>(num / (2LL * n_t_));
}

SampledCircuit sample_tepai_circuit(const TrotterSchedule &schedule, double delta,
                                    RandomStream &rng) {
    if (!(delta > 0.0 && delta < std::numbers::pi)) {
        throw DomainError("interpolation angle delta must lie in (0, pi)");
    }
    const double max_angle = schedule.max_abs_angle();
    if (max_angle > delta * (1.0 + 1e-12)) {
        throw DomainError("delta=" + std::to_string(delta) +
                          " is smaller than the largest Trotter angle " +
                          std::to_string(max_angle) + "; increase K or delta");
    }

    struct Branches {
        double keep_identity; // cumulative p1
        double keep_delta;    // cumulative p1 + p2
        double sign2;
        double sign3;
        double angle2;
    };
    std::vector<Branches> table;
    table.reserve(schedule.axes.size());
    double gamma_step = 1.0;
    for (double theta : schedule.angles) {
        const auto c = pai_coefficients(theta, delta);
        const auto p = c.probabilities();
        table.push_back({p[0], p[0] + p[1], c.a2 < 0.0 ? -1.0 : 1.0,
                         c.a3 < 0.0 ? -1.0 : 1.0, c.branch_angle});
        gamma_step *= c.gamma;
    }

    SampledCircuit out{RotationCircuit(schedule.n_qubits), 1.0, 0};
    double sign = 1.0;
    for (int k = 0; k < schedule.steps; ++k) {
        for (std::size_t j = 0; j < table.size(); ++j) {
            const auto &b = table[j];
            const double u = rng.uniform();
            if (u < b.keep_identity) {
                continue;
            }
            if (u < b.keep_delta) {
                out.circuit.add(schedule.axes[j], b.angle2);
                sign *= b.sign2;
            } else {
                out.circuit.add(schedule.axes[j], std::numbers::pi);
                sign *= b.sign3;
            }
            ++out.gate_count;
        }
    }
    out.gamma_signed = sign * std::pow(gamma_step, schedule.steps);
    return out;
}

TepaiAsymptotics tepai_asymptotics(const Hamiltonian &h, double t, double delta) {
    if (!(delta > 0.0 && delta < std::numbers::pi)) {
        throw DomainError("interpolation angle delta must lie in (0, pi)");
    }
    const double norm = l1_norm(h);
    TepaiAsymptotics a;
    a.expected_gates = (3.0 - std::cos(delta)) / std::sin(delta) * norm * t;
    a.gamma_limit = std::exp(2.0 * t * norm * std::tan(0.5 * delta));
    a.overhead_limit = a.gamma_limit * a.gamma_limit;
    return a;
}

double gamma_exact(const Hamiltonian &h, double t, double delta, int steps) {
    const auto schedule = trotter_schedule(h, t, steps);
    double log_gamma = 0.0;
    for (double theta : schedule.angles) {
        log_gamma += std::log(pai_coefficients(theta, delta).gamma);
    }
    return std::exp(steps * log_gamma);
}

double expected_gate_count(const Hamiltonian &h, double t, double delta, int steps) {
    const auto schedule = trotter_schedule(h, t, steps);
    double per_step = 0.0;
    for (double theta : schedule.angles) {
        const auto p = pai_coefficients(theta, delta).probabilities();
        per_step += p[1] + p[2];
    }
    return steps * per_step;
}

double delta_for_overhead(double q, const Hamiltonian &h, double t) {
    const double norm = l1_norm(h);
    if (!(q > 0.0) || !(t > 0.0) || !(norm > 0.0)) {
        throw DomainError("delta_for_overhead needs Q > 0, t > 0 and ||H||_1 > 0");
    }
    return 2.0 * std::atan(q / (2.0 * norm * t));
}

} // namespace gapscope
