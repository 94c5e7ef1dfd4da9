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

#include "gapscope/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/shadows.hpp"
#include "gapscope/spectroscopy.hpp"

namespace gapscope {
namespace {

constexpr double kToyTime = 0.7;
constexpr int kToySteps = 4;
constexpr double kToyDelta = std::numbers::pi / 4;

Hamiltonian toy_hamiltonian() {
    return Hamiltonian(2, {{1.0, PauliString::parse("XX")}, {1.0, PauliString::parse("IZ")}});
}

std::string describe(double measured, double limit) {
    std::ostringstream os;
    os.precision(6);
    os << measured << " vs " << limit;
    return os.str();
}

struct ToyRun {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// One TE-PAI + shadow estimate of <Z0> on the toy instance. The standard
/// error treats each circuit's N_s shots as one cluster.
ToyRun toy_estimate(long long m, long long n_s, std::uint64_t seed, int workers) {
    const auto h = toy_hamiltonian();
    ExperimentSpec spec;
    spec.method = Method::tepai;
    spec.delta = kToyDelta;
    spec.m = static_cast<int>(m);
    spec.n_s = static_cast<int>(n_s);
    spec.seed = seed;
    spec.workers = workers;
    const auto result =
        run_experiment(h, StateVector(2), TimeGrid(kToyTime, 1, kToySteps), spec);
    const auto records = result.snapshots.at_time(1);
    const auto o = PauliString::parse("ZI");
    std::vector<double> cluster(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        cluster[i / static_cast<std::size_t>(n_s)] +=
            records[i].gamma * snapshot_estimate(records[i], o) / static_cast<double>(n_s);
    }
    ToyRun run;
    for (double c : cluster) {
        run.estimate += c;
    }
    run.estimate /= static_cast<double>(m);
    double ss = 0.0;
    for (double c : cluster) {
        ss += (c - run.estimate) * (c - run.estimate);
    }
    run.standard_error = std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
    return run;
}

double toy_trotter_value() {
    StateVector psi(2);
    apply_circuit(psi, trotter_circuit(toy_hamiltonian(), kToyTime, kToySteps));
    return psi.expectation(PauliString::parse("ZI"));
}

std::vector<std::pair<long long, long long>> splits(long long total) {
    return {{total, 1}, {total / 2, 2}, {total / 4, 4}};
}

} // namespace

CheckResult check_decomposition_identity(int pairs, std::uint64_t seed,
                                         const CoefficientFunction &coefficients) {
    const CoefficientFunction coeff = coefficients ? coefficients : CoefficientFunction(pai_coefficients);
    auto rng = RandomStream::derive(seed, {0x5550});
    const PauliString axes[3] = {PauliString::parse("X"), PauliString::parse("Y"),
                                 PauliString::parse("Z")};
    double worst = 0.0;
    double worst_sum = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const double delta = std::numbers::pi * (1e-3 + (1.0 - 2e-3) * rng.uniform());
        const double theta = delta * (2.0 * rng.uniform() - 1.0);
        const auto &axis = axes[rng.below(3)];
        const auto c = coeff(theta, delta);
        const Eigen::MatrixXcd target = unitary_superoperator(rotation_matrix(axis, theta));
        const Eigen::MatrixXcd mix =
            c.a1 * Eigen::MatrixXcd::Identity(4, 4) +
            c.a2 * unitary_superoperator(rotation_matrix(axis, c.branch_angle)) +
            c.a3 * unitary_superoperator(rotation_matrix(axis, std::numbers::pi));
        worst = std::max(worst, (mix - target).cwiseAbs().maxCoeff());
        worst_sum = std::max(worst_sum, std::abs(c.a1 + c.a2 + c.a3 - 1.0));
    }
    CheckResult r{"decomposition-identity", false, std::max(worst, worst_sum), 1e-12, {}};
    r.passed = worst <= 1e-12 && worst_sum <= 1e-12;
    r.detail = "max superoperator error " + describe(worst, 1e-12) + ", max |sum a - 1| " +
               describe(worst_sum, 1e-12);
    return r;
}

std::vector<CheckResult> check_unbiasedness(long long total, std::uint64_t seed, int workers) {
    const double exact = toy_trotter_value();
    std::vector<CheckResult> out;
    for (auto [m, n_s] : splits(total)) {
        const auto run = toy_estimate(m, n_s, seed + static_cast<std::uint64_t>(n_s), workers);
        const double z = std::abs(run.estimate - exact) / run.standard_error;
        CheckResult r{"unbiasedness M=" + std::to_string(m) + " N_s=" + std::to_string(n_s), z <= 5.0,
                      z, 5.0, {}};
        r.detail = "estimate " + describe(run.estimate, exact) + " exact, " + describe(z, 5.0) +
                   " standard errors";
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_variance_bound(long long total, int repetitions, std::uint64_t seed,
                                              int workers) {
    const double gamma = gamma_exact(toy_hamiltonian(), kToyTime, kToyDelta, kToySteps);
    std::vector<CheckResult> out;
    for (auto [m, n_s] : splits(total)) {
        std::vector<double> estimates;
        for (int rep = 0; rep < repetitions; ++rep) {
            estimates.push_back(
                toy_estimate(m, n_s, seed ^ mix64(static_cast<std::uint64_t>(rep) * 8 + n_s), workers)
                    .estimate);
        }
        double mean = 0.0;
        for (double e : estimates) {
            mean += e;
        }
        mean /= repetitions;
        double var = 0.0;
        for (double e : estimates) {
            var += (e - mean) * (e - mean);
        }
        var /= repetitions - 1;
        const double bound = variance_bound(gamma * gamma, 1, m, n_s);
        CheckResult r{"variance-bound M=" + std::to_string(m) + " N_s=" + std::to_string(n_s),
                      var <= bound, var / bound, 1.0, {}};
        r.detail = "empirical variance " + describe(var, bound) + " bound";
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_gate_count_and_gamma(int samples, std::uint64_t seed) {
    const Hamiltonian h(2, {{0.5, PauliString::parse("XX")}, {0.5, PauliString::parse("IZ")}});
    const double t = 1.0;
    const double delta = std::numbers::pi / 4;
    const int steps = 1000;
    const auto schedule = trotter_schedule(h, t, steps);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        auto rng = RandomStream::derive(seed, {0x6761, static_cast<std::uint64_t>(i)});
        const double g = sample_tepai_circuit(schedule, delta, rng).gate_count;
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / samples;
    const double sd = std::sqrt((sum_sq / samples - mean * mean) * samples / (samples - 1.0));
    const double se = sd / std::sqrt(static_cast<double>(samples));
    const auto limit = tepai_asymptotics(h, t, delta);
    const double z = std::abs(mean - limit.expected_gates) / se;

    std::vector<CheckResult> out;
    CheckResult gates{"gate-count", z <= 5.0, z, 5.0, {}};
    gates.detail = "mean kept gates " + describe(mean, limit.expected_gates) + " asymptotic, " +
                   describe(z, 5.0) + " standard errors";
    out.push_back(gates);

    const double gamma = gamma_exact(h, t, delta, steps);
    const double rel = std::abs(gamma / limit.gamma_limit - 1.0);
    CheckResult g{"gamma-limit", rel <= 0.02, rel, 0.02, {}};
    g.detail = "finite-K Gamma " + describe(gamma, limit.gamma_limit) + " limit (Gamma^2 " +
               describe(gamma * gamma, limit.overhead_limit) + ")";
    out.push_back(g);
    return out;
}

CheckResult check_trotter_bound() {
    const auto h = build_model(ModelKind::heisenberg, 3, {});
    const auto eig = eigendecompose(h);
    const auto initial = StateVector::product("+01");
    const auto o = PauliString::parse("ZII");
    double worst = 0.0;
    bool ok = true;
    for (double t : {0.5, 1.0, 2.0}) {
        const double times[1] = {t};
        const double exact = exact_expectation_series(eig, initial, o, times)[0];
        for (int k : {4, 16, 64}) {
            StateVector psi = initial;
            apply_circuit(psi, trotter_circuit(h, t, k));
            const double err = std::abs(psi.expectation(o) - exact);
            const double bound = trotter_error_bound(h, 1.0, t, k);
            ok = ok && err <= bound;
            worst = std::max(worst, err / bound);
        }
    }
    return {"trotter-bound", ok, worst, 1.0, "max error / bound " + describe(worst, 1.0)};
}

CheckResult check_synthetic_spectrum(std::uint64_t seed) {
    const int n_t = 64;
    const double dt = 0.1;
    const double omega = 3.3;
    auto rng = RandomStream::derive(seed, {0x5359});
    Eigen::MatrixXd raw(40, n_t);
    for (int i = 0; i < raw.rows(); ++i) {
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        const double amp = i < 10 ? 1.0 + rng.uniform() : 0.0;
        for (int n = 0; n < n_t; ++n) {
            // Box-Muller keeps this free of distribution objects whose
            // output differs between standard libraries.
            const double u1 = 1.0 - rng.uniform();
            const double u2 = rng.uniform();
            const double noise = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            raw(i, n) = amp * std::cos(omega * (n + 1) * dt + phase) + 0.3 * noise;
        }
    }
    SpectroscopyOptions options;
    options.keep_fraction = 0.25;
    const auto result = analyze_series(raw, dt, options);
    const double half_bin = 0.5 * result.spectrum.bin_width();
    if (result.spectrum.peaks.empty()) {
        return {"synthetic-spectrum", false, INFINITY, half_bin, "no peak found"};
    }
    const double err = std::abs(result.spectrum.peaks.front().omega - omega);
    return {"synthetic-spectrum", err <= half_bin, err, half_bin,
            "top peak offset " + describe(err, half_bin) + " (half a bin)"};
}

std::vector<CheckResult> run_validation(const ValidationOptions &options) {
    std::vector<CheckResult> all;
    all.push_back(check_decomposition_identity(200, options.seed, options.coefficients));
    for (auto &r : check_unbiasedness(20000, options.seed, options.workers)) {
        all.push_back(std::move(r));
    }
    for (auto &r : check_variance_bound(100, 200, options.seed, options.workers)) {
        all.push_back(std::move(r));
    }
    for (auto &r : check_gate_count_and_gamma(10000, options.seed)) {
        all.push_back(std::move(r));
    }
    all.push_back(check_trotter_bound());
    all.push_back(check_synthetic_spectrum(options.seed));
    return all;
}

nlohmann::json to_json(const std::vector<CheckResult> &checks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &c : checks) {
        out.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"measured", c.measured},
                       {"limit", c.limit},
                       {"detail", c.detail}});
    }
    return out;
}

} // namespace gapscope
