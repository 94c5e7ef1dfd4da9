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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapscope/evolution.hpp"

namespace gapscope {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0; ///< the compared quantity (error, ratio, ...)
    double limit = 0.0;    ///< what it was compared against
    std::string detail;
};

using CoefficientFunction = std::function<PaiCoefficients(double theta, double delta)>;

struct ValidationOptions {
    std::uint64_t seed = 20240601;
    /// Decomposition under test; defaults to pai_coefficients.
    CoefficientFunction coefficients;
    int workers = 0;
};

/// sum_d a_d S(branch_d) against S(R_theta) for random (theta, delta), and
/// a1 + a2 + a3 = 1.
CheckResult check_decomposition_identity(int pairs, std::uint64_t seed,
                                         const CoefficientFunction &coefficients);

/// TE-PAI + shadow estimate of <Z0> on H = XX + Z1 (t = 0.7, K = 4,
/// delta = pi/4, initial |00>) against the exact Trotter value, per split.
std::vector<CheckResult> check_unbiasedness(long long total, std::uint64_t seed, int workers);

/// Empirical variance over `repetitions` estimates against the Theorem-style
/// bound Gamma^2 ((3^q - 1)/(M N_s) + 1/M), per split of `total`.
std::vector<CheckResult> check_variance_bound(long long total, int repetitions, std::uint64_t seed,
                                              int workers);

/// Monte Carlo kept-gate mean against the large-K formula, and finite-K
/// Gamma^2 against exp(2 t ||H||_1 tan(delta/2)) within 2%.
std::vector<CheckResult> check_gate_count_and_gamma(int samples, std::uint64_t seed);

/// |S(t) - <O>_t^(K)| <= t^2 ||O|| ||c||_T / K on the N=3 Heisenberg chain.
CheckResult check_trotter_bound();

/// An injected cosine is recovered within half a padded bin.
CheckResult check_synthetic_spectrum(std::uint64_t seed);

/// Runs every check at CI-sized sample counts.
std::vector<CheckResult> run_validation(const ValidationOptions &options);

nlohmann::json to_json(const std::vector<CheckResult> &checks);

} // namespace gapscope
