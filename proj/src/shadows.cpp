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

#include "gapscope/shadows.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>

#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/parallel.hpp"

namespace gapscope {
namespace {

constexpr std::uint64_t kCircuitStream = 0x43495243ULL;
constexpr std::uint64_t kShotStream = 0x53484f54ULL;

constexpr PauliLetter kBasisLetters[3] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};

double pow3(int w) {
    double r = 1.0;
    for (int i = 0; i < w; ++i) {
        r *= 3.0;
    }
    return r;
}

void depolarize_after(StateVector &state, const PauliString &axis, const NoiseConfig &noise,
                      RandomStream &rng) {
    int support[2];
    int k = 0;
    for (std::uint64_t s = axis.support(); s != 0; s &= s - 1) {
        if (k == 2) {
            throw DomainError("depolarizing noise is defined for gates on one or two qubits, got " +
                              axis.to_string());
        }
        support[k++] = std::countr_zero(s);
    }
    const double p = k == 1 ? noise.p1 : noise.p2;
    apply_depolarizing(state, std::span<const int>(support, static_cast<std::size_t>(k)), p, rng);
}

void evolve(StateVector &state, const RotationCircuit &circuit, const NoiseConfig *noise,
            RandomStream *rng) {
    if (noise == nullptr) {
        apply_circuit(state, circuit);
        return;
    }
    for (const auto &gate : circuit.gates()) {
        apply_pauli_rotation(state, gate.axis, gate.angle);
        depolarize_after(state, gate.axis, *noise, *rng);
    }
}

Snapshot noisy_snapshot(StateVector &state, const NoiseConfig &noise, RandomStream &rng) {
    Snapshot snap{draw_bases(state.n_qubits(), rng), 0};
    for (int q = 0; q < state.n_qubits(); ++q) {
        const PauliLetter l = snap.bases.letter(q);
        rotate_to_basis(state, q, l);
        if (noise.include_measurement_layer && l != PauliLetter::Z) {
            const int site[1] = {q};
            apply_depolarizing(state, site, noise.p1, rng);
        }
    }
    snap.bits = sample_bitstring(state, rng);
    return snap;
}

} // namespace

PauliString draw_bases(int n_qubits, RandomStream &rng) {
    PauliString bases(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        bases = bases.with_letter(q, kBasisLetters[rng.below(3)]);
    }
    return bases;
}

Snapshot collect_snapshot(StateVector &state, RandomStream &rng) {
    Snapshot snap{draw_bases(state.n_qubits(), rng), 0};
    snap.bits = measure_in_bases(state, snap.bases, rng);
    return snap;
}

double snapshot_estimate(const PauliString &bases, std::uint64_t bits, const PauliString &o) {
    if (bases.n_qubits() != o.n_qubits()) {
        throw DomainError("observable width " + std::to_string(o.n_qubits()) +
                          " does not match snapshot width " + std::to_string(bases.n_qubits()));
    }
    const std::uint64_t supp = o.support();
    if ((bases.x_mask() & supp) != o.x_mask() || (bases.z_mask() & supp) != o.z_mask()) {
        return 0.0;
    }
    const double mag = pow3(o.weight());
    return (std::popcount(bits & supp) & 1) ? -mag : mag;
}

double snapshot_estimate(const SnapshotRecord &record, const PauliString &o) {
    return snapshot_estimate(record.bases, record.bits, o);
}

double estimate_observable(std::span<const SnapshotRecord> records, const PauliString &o) {
    if (records.empty()) {
        throw DomainError("cannot estimate from an empty snapshot set");
    }
    double sum = 0.0;
    for (const auto &r : records) {
        sum += r.gamma * snapshot_estimate(r, o);
    }
    return sum / static_cast<double>(records.size());
}

double variance_bound(double gamma_sq, int q, long long m, long long n_s) {
    if (!(gamma_sq > 0.0) || q < 1 || m < 1 || n_s < 1) {
        throw DomainError("variance_bound needs positive arguments");
    }
    return gamma_sq * ((pow3(q) - 1.0) / static_cast<double>(m * n_s) + 1.0 / static_cast<double>(m));
}

double fixed_budget_variance_bound(double gamma_sq, int q, long long n_s, long long n_total) {
    if (!(gamma_sq > 0.0) || q < 1 || n_s < 1 || n_total < 1) {
        throw DomainError("fixed_budget_variance_bound needs positive arguments");
    }
    return gamma_sq * (pow3(q) - 1.0 + static_cast<double>(n_s)) / static_cast<double>(n_total);
}

Method parse_method(const std::string &name) {
    if (name == "tepai") {
        return Method::tepai;
    }
    if (name == "trotter") {
        return Method::trotter;
    }
    throw DomainError("unknown method '" + name + "' (expected tepai or trotter)");
}

std::string to_string(Method method) {
    return method == Method::tepai ? "tepai" : "trotter";
}

SnapshotSet::SnapshotSet(SnapshotMetadata metadata, std::vector<SnapshotRecord> records)
    : meta_(std::move(metadata)), records_(std::move(records)) {
    if (meta_.n_t < 1 || meta_.m < 1 || meta_.n_s < 1) {
        throw ConsistencyError("snapshot metadata needs n_t, m and n_s >= 1");
    }
    const std::size_t per_time =
        static_cast<std::size_t>(meta_.m) * static_cast<std::size_t>(meta_.n_s);
    if (records_.size() != per_time * static_cast<std::size_t>(meta_.n_t)) {
        throw ConsistencyError("expected " + std::to_string(per_time * meta_.n_t) +
                               " snapshot records, found " + std::to_string(records_.size()));
    }
    std::stable_sort(records_.begin(), records_.end(),
                     [](const SnapshotRecord &a, const SnapshotRecord &b) { return a.s < b.s; });
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto &r = records_[i];
        if (r.s != static_cast<int>(i / per_time) + 1) {
            throw ConsistencyError("time index " + std::to_string(r.s) +
                                   " does not hold exactly m*n_s records");
        }
        if (r.bases.n_qubits() != meta_.n_qubits || r.bases.weight() != meta_.n_qubits) {
            throw ConsistencyError("snapshot record width does not match n_qubits");
        }
        if (r.gamma == 0.0 || !std::isfinite(r.gamma)) {
            throw ConsistencyError("snapshot record has zero or non-finite gamma");
        }
        if (meta_.method == Method::trotter && r.gamma != 1.0) {
            throw ConsistencyError("trotter records must carry gamma = 1");
        }
        if (meta_.n_qubits < 64 && (r.bits >> meta_.n_qubits) != 0) {
            throw ConsistencyError("snapshot bits exceed n_qubits");
        }
    }
}

std::span<const SnapshotRecord> SnapshotSet::at_time(int s) const {
    if (s < 1 || s > meta_.n_t) {
        throw DomainError("time index " + std::to_string(s) + " out of range");
    }
    const std::size_t per_time =
        static_cast<std::size_t>(meta_.m) * static_cast<std::size_t>(meta_.n_s);
    return std::span<const SnapshotRecord>(records_).subspan(
        static_cast<std::size_t>(s - 1) * per_time, per_time);
}

PreparedState prepare_initial_state(const InitialStateSpec &spec, const Hamiltonian &h) {
    if (!spec.is_eigen_superposition()) {
        auto state = StateVector::product(spec.product);
        if (state.n_qubits() != h.n_qubits()) {
            throw DomainError("initial product state has " + std::to_string(state.n_qubits()) +
                              " qubits, model has " + std::to_string(h.n_qubits()));
        }
        return {std::move(state), false, {}};
    }
    const auto eig = eigendecompose(h);
    PreparedState out{eigen_superposition(eig, spec.levels, spec.weights), false, {}};
    for (int level : spec.levels) {
        out.level_energies.push_back(eig.eigenvalues(level));
        out.degenerate = out.degenerate || eig.is_degenerate(level);
    }
    return out;
}

GeneratedCircuit generate_circuit(const Hamiltonian &h, const TimeGrid &grid,
                                  const ExperimentSpec &spec, int s, int m) {
    const auto schedule = trotter_schedule(h, grid.time(s), grid.steps(s));
    GeneratedCircuit out{RotationCircuit(h.n_qubits()), {s, m, 1.0, 0, 0}};
    if (spec.method == Method::trotter) {
        out.circuit = expand(schedule);
        out.stats.gate_count = static_cast<int>(out.circuit.size());
    } else {
        auto rng = RandomStream::derive(spec.seed, {kCircuitStream, static_cast<std::uint64_t>(s),
                                                    static_cast<std::uint64_t>(m)});
        auto sampled = sample_tepai_circuit(schedule, spec.delta, rng);
        out.circuit = std::move(sampled.circuit);
        out.stats.gamma = sampled.gamma_signed;
        out.stats.gate_count = sampled.gate_count;
    }
    out.stats.depth = circuit_depth(out.circuit);
    return out;
}

ExperimentResult run_experiment(const Hamiltonian &h, const StateVector &initial,
                                const TimeGrid &grid, const ExperimentSpec &spec) {
    if (initial.n_qubits() != h.n_qubits()) {
        throw DomainError("initial state width does not match the Hamiltonian");
    }
    if (spec.m < 1 || spec.n_s < 1) {
        throw DomainError("m and n_s must be at least 1");
    }
    const auto &noise = spec.noise;
    if (noise.enabled && !(noise.p1 >= 0.0 && noise.p1 <= 1.0 && noise.p2 >= 0.0 && noise.p2 <= 1.0)) {
        throw DomainError("noise probabilities must lie in [0, 1]");
    }
    if (spec.method == Method::tepai) {
        // Fail before spawning work if delta is out of range at any time point.
        for (int s = 1; s <= grid.n_t(); ++s) {
            const auto schedule = trotter_schedule(h, grid.time(s), grid.steps(s));
            if (!(spec.delta > 0.0 && spec.delta < std::numbers::pi)) {
                throw DomainError("interpolation angle delta must lie in (0, pi)");
            }
            if (schedule.max_abs_angle() > spec.delta * (1.0 + 1e-12)) {
                throw DomainError("delta=" + std::to_string(spec.delta) +
                                  " is smaller than the largest Trotter angle " +
                                  std::to_string(schedule.max_abs_angle()) + " at time index " +
                                  std::to_string(s) + "; increase k_steps_total or delta");
            }
        }
    }

    const int n_t = grid.n_t();
    const std::size_t m = static_cast<std::size_t>(spec.m);
    const std::size_t n_s = static_cast<std::size_t>(spec.n_s);
    const std::size_t n_circuits = static_cast<std::size_t>(n_t) * m;
    const bool noisy = noise.enabled;

    std::vector<SnapshotRecord> records(n_circuits * n_s);
    std::vector<CircuitStats> stats(n_circuits);

    // The Trotter circuit is the same for every m, so without noise the
    // evolved state is shared by all executions at a time point.
    std::vector<std::optional<StateVector>> trotter_states;
    std::vector<CircuitStats> trotter_stats;
    const bool share_trotter = spec.method == Method::trotter && !noisy;
    if (share_trotter) {
        trotter_states.resize(static_cast<std::size_t>(n_t));
        trotter_stats.resize(static_cast<std::size_t>(n_t));
        parallel_for(static_cast<std::size_t>(n_t), [&](std::size_t i) {
            const int s = static_cast<int>(i) + 1;
            auto gen = generate_circuit(h, grid, spec, s, 0);
            StateVector state = initial;
            apply_circuit(state, gen.circuit);
            trotter_states[i] = std::move(state);
            trotter_stats[i] = gen.stats;
        }, spec.workers);
    }

    parallel_for(n_circuits, [&](std::size_t task) {
        const int s = static_cast<int>(task / m) + 1;
        const int mi = static_cast<int>(task % m);
        const StateVector *evolved = nullptr;
        std::optional<StateVector> own;
        GeneratedCircuit gen{RotationCircuit(h.n_qubits()), {}};
        if (share_trotter) {
            evolved = &*trotter_states[static_cast<std::size_t>(s - 1)];
            stats[task] = trotter_stats[static_cast<std::size_t>(s - 1)];
            stats[task].m = mi;
        } else {
            gen = generate_circuit(h, grid, spec, s, mi);
            stats[task] = gen.stats;
            if (!noisy) {
                own = initial;
                apply_circuit(*own, gen.circuit);
                evolved = &*own;
            }
        }
        for (std::size_t shot = 0; shot < n_s; ++shot) {
            auto rng = RandomStream::derive(
                spec.seed, {kShotStream, static_cast<std::uint64_t>(s),
                            static_cast<std::uint64_t>(mi), static_cast<std::uint64_t>(shot)});
            StateVector state = noisy ? initial : *evolved;
            Snapshot snap;
            if (noisy) {
                evolve(state, gen.circuit, &noise, &rng);
                snap = noisy_snapshot(state, noise, rng);
            } else {
                snap = collect_snapshot(state, rng);
            }
            records[task * n_s + shot] = {s, stats[task].gamma, snap.bases, snap.bits};
        }
    }, spec.workers);

    SnapshotMetadata meta;
    meta.n_qubits = h.n_qubits();
    meta.n_t = n_t;
    meta.m = spec.m;
    meta.n_s = spec.n_s;
    meta.dt = grid.dt();
    meta.method = spec.method;
    meta.delta_over_pi = spec.method == Method::tepai ? spec.delta / std::numbers::pi : 0.0;
    meta.seed = spec.seed;
    return {SnapshotSet(std::move(meta), std::move(records)), std::move(stats)};
}

} // namespace gapscope
