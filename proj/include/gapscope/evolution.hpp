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
#include <vector>

#include "gapscope/hamiltonian.hpp"
#include "gapscope/random.hpp"
#include "gapscope/statevector.hpp"

namespace gapscope {

/**
 * Signed decomposition C = sum_d a_d C_d of a channel into implementable
 * branches, sampled with probability |a_d| / gamma.
 *
 * Reweighting a sampled branch by gamma * sign(a_d) gives an unbiased
 * estimator of C; products of independent draws give one for a sequence.
 */
class QuasiProbability {
  public:
    explicit QuasiProbability(std::vector<double> coefficients);

    struct Draw {
        std::size_t branch;
        double sign; ///< sign(a_branch), +1 or -1
    };

    const std::vector<double> &coefficients() const noexcept { return coeffs_; }
    double gamma() const noexcept { return gamma_; }
    double probability(std::size_t branch) const;
    Draw sample(RandomStream &rng) const;

  private:
    std::vector<double> coeffs_;
    std::vector<double> cumulative_;
    double gamma_ = 0.0;
};

/// Angle-interpolation weights for R_{P,theta} over {I, R_{P,phi}, R_{P,pi}}.
struct PaiCoefficients {
    double a1 = 1.0;           ///< identity branch
    double a2 = 0.0;           ///< R_{P, branch_angle}
    double a3 = 0.0;           ///< R_{P, pi}
    double gamma = 1.0;        ///< |a1| + |a2| + |a3|
    double branch_angle = 0.0; ///< sign(theta) * delta

    std::array<double, 3> probabilities() const noexcept {
        return {std::abs(a1) / gamma, std::abs(a2) / gamma, std::abs(a3) / gamma};
    }
};

/// Coefficients for 0 <= |theta| <= delta < pi. Negative angles use |theta|
/// and flip the sign of the delta branch. Throws DomainError outside the
/// domain; theta may exceed delta by 1e-12 relative to absorb rounding.
PaiCoefficients pai_coefficients(double theta, double delta);

/// One first-order product-formula step, repeated `steps` times.
struct TrotterSchedule {
    int n_qubits = 0;
    std::vector<PauliString> axes; ///< one per non-identity term, Hamiltonian order
    std::vector<double> angles;    ///< 2 h_j t / K
    int steps = 0;

    std::size_t gate_count() const noexcept { return axes.size() * static_cast<std::size_t>(steps); }
    double max_abs_angle() const noexcept;
};

/// Identity terms are dropped (global phase). Throws DomainError if K < 1
/// or t < 0.
TrotterSchedule trotter_schedule(const Hamiltonian &h, double t, int steps);
RotationCircuit expand(const TrotterSchedule &schedule);
/// [R_{P_1, 2 h_1 t/K} ... R_{P_J, 2 h_J t/K}]^K
RotationCircuit trotter_circuit(const Hamiltonian &h, double t, int steps);

/// t^2 ||O|| ||c||_T / K.
double trotter_error_bound(const Hamiltonian &h, double observable_norm, double t, int steps);

/// Time points t_s = s t / N_t, s = 1..N_t, each simulated with
/// K_s = round(t_s / delta) steps so the step size stays close to
/// delta = t / K_total.
class TimeGrid {
  public:
    /// Throws DomainError unless t_total > 0 and k_steps_total >= n_t >= 1.
    TimeGrid(double t_total, int n_t, int k_steps_total);

    double t_total() const noexcept { return t_total_; }
    int n_t() const noexcept { return n_t_; }
    int k_steps_total() const noexcept { return k_total_; }
    double step() const noexcept { return t_total_ / k_total_; }
    double dt() const noexcept { return t_total_ / n_t_; }
    /// s in [1, n_t].
    double time(int s) const;
    int steps(int s) const;

  private:
    double t_total_;
    int n_t_;
    int k_total_;
};

/// A TE-PAI circuit: only angles +-delta and pi survive.
struct SampledCircuit {
    RotationCircuit circuit;
    double gamma_signed = 1.0; ///< Gamma_l = Gamma * prod sign(a_d)
    int gate_count = 0;        ///< retained (non-identity) gates
};

/**
 * Replaces every scheduled rotation by I, R_{P, sign(theta) delta} or
 * R_{P, pi} with probabilities |a_d| / gamma, accumulating the signed weight.
 * Throws DomainError if delta < max |theta_j| or delta is not in (0, pi).
 */
SampledCircuit sample_tepai_circuit(const TrotterSchedule &schedule, double delta,
                                    RandomStream &rng);

/// Large-K behaviour of TE-PAI for total time t.
struct TepaiAsymptotics {
    double expected_gates = 0.0; ///< csc(delta) (3 - cos delta) ||H||_1 t
    double gamma_limit = 1.0;    ///< exp(2 t ||H||_1 tan(delta / 2)), the K -> inf limit of Gamma
    double overhead_limit = 1.0; ///< gamma_limit^2, the variance multiplier
};

TepaiAsymptotics tepai_asymptotics(const Hamiltonian &h, double t, double delta);

/// Gamma = (prod_j gamma(2 h_j t / K))^K at finite K.
double gamma_exact(const Hamiltonian &h, double t, double delta, int steps);

/// Exact mean number of retained gates at finite K.
double expected_gate_count(const Hamiltonian &h, double t, double delta, int steps);

/// delta = 2 arctan(Q / (2 ||H||_1 t)), which pins gamma_limit at exp(Q).
/// Throws DomainError unless Q, t and ||H||_1 are positive.
double delta_for_overhead(double q, const Hamiltonian &h, double t);

} // namespace gapscope
