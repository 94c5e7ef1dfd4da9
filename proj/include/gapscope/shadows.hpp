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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gapscope/evolution.hpp"
#include "gapscope/hamiltonian.hpp"
#include "gapscope/pauli.hpp"
#include "gapscope/random.hpp"
#include "gapscope/statevector.hpp"

namespace gapscope {

/// Random Pauli-basis measurement outcome: one basis letter and one bit per qubit.
struct Snapshot {
    PauliString bases;      ///< X, Y or Z on every qubit
    std::uint64_t bits = 0; ///< bit q is the outcome on qubit q
};

/// Uniform X/Y/Z on each qubit.
PauliString draw_bases(int n_qubits, RandomStream &rng);

/// Draws bases, then measures. Consumes the state.
Snapshot collect_snapshot(StateVector &state, RandomStream &rng);

struct SnapshotRecord {
    int s = 0;             ///< time index, 1-based
    double gamma = 1.0;    ///< signed weight of the generating circuit
    PauliString bases;
    std::uint64_t bits = 0;
};

/// Single-snapshot estimator of Tr(O rho): 3^w (-1)^{outcome parity on
/// supp O} when every measured basis matches O on its support, else 0.
/// Does not include gamma. Throws DomainError on a width mismatch.
double snapshot_estimate(const PauliString &bases, std::uint64_t bits, const PauliString &o);
double snapshot_estimate(const SnapshotRecord &record, const PauliString &o);

/// Mean of gamma * snapshot_estimate. Throws DomainError if empty.
double estimate_observable(std::span<const SnapshotRecord> records, const PauliString &o);

/// Gamma^2 ((3^q - 1) / (M N_s) + 1 / M). Throws DomainError unless all
/// arguments are positive.
double variance_bound(double gamma_sq, int q, long long m, long long n_s);
/// Same bound written for a fixed budget N_total = M N_s:
/// Gamma^2 (3^q - 1 + N_s) / N_total.
double fixed_budget_variance_bound(double gamma_sq, int q, long long n_s, long long n_total);

enum class Method { tepai, trotter };

Method parse_method(const std::string &name);
std::string to_string(Method method);

struct SnapshotMetadata {
    int n_qubits = 0;
    int n_t = 0;
    int m = 0;
    int n_s = 0;
    double dt = 0.0;
    Method method = Method::tepai;
    double delta_over_pi = 0.0;
    std::uint64_t seed = 0;
    std::string config_sha;
    bool degenerate_initial_state = false;
};

/**
 * All records of one experiment, grouped by time index.
 *
 * Construction sorts records by s (stably) and checks that every time
 * index 1..n_t holds exactly M N_s records of the right width.
 */
class SnapshotSet {
  public:
    SnapshotSet() = default;
    /// Throws ConsistencyError if the records do not match the metadata.
    SnapshotSet(SnapshotMetadata metadata, std::vector<SnapshotRecord> records);

    const SnapshotMetadata &metadata() const noexcept { return meta_; }
    SnapshotMetadata &metadata() noexcept { return meta_; }
    const std::vector<SnapshotRecord> &records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    /// Records at time index s in [1, n_t].
    std::span<const SnapshotRecord> at_time(int s) const;

  private:
    SnapshotMetadata meta_;
    std::vector<SnapshotRecord> records_;
};

/// JSON Lines: one metadata object, then one record per line.
void write_snapshots(std::ostream &out, const SnapshotSet &set);
/// Throws ConfigError with a line reference on malformed input.
SnapshotSet read_snapshots(std::istream &in);

struct NoiseConfig {
    bool enabled = false;
    double p1 = 0.0; ///< after each weight-1 gate
    double p2 = 0.0; ///< after each weight-2 gate
    bool include_measurement_layer = false; ///< p1 after each X/Y basis change
};

/// Product string over {0,1,+,-}, or a superposition of eigenstates by
/// ascending-energy index.
struct InitialStateSpec {
    std::string product;
    std::vector<int> levels;
    std::vector<double> weights; ///< empty means equal weights

    bool is_eigen_superposition() const noexcept { return !levels.empty(); }
};

struct PreparedState {
    StateVector state;
    bool degenerate = false; ///< some requested level is degenerate
    std::vector<double> level_energies;
};

/// Eigen-superpositions diagonalize h densely (CapacityError above the
/// dense limit).
PreparedState prepare_initial_state(const InitialStateSpec &spec, const Hamiltonian &h);

struct ExperimentSpec {
    Method method = Method::tepai;
    double delta = 0.0; ///< ignored for trotter
    int m = 1;
    int n_s = 1;
    NoiseConfig noise;
    std::uint64_t seed = 0;
    int workers = 0; ///< 0 = worker_count()
};

/// Per-circuit record kept at generation time.
struct CircuitStats {
    int s = 0;
    int m = 0; ///< 0-based
    double gamma = 1.0;
    int gate_count = 0;
    int depth = 0;
};

struct GeneratedCircuit {
    RotationCircuit circuit;
    CircuitStats stats;
};

/// The circuit used for (s, m): a TE-PAI sample drawn from the (seed, s, m)
/// stream, or the fixed Trotter circuit.
GeneratedCircuit generate_circuit(const Hamiltonian &h, const TimeGrid &grid,
                                  const ExperimentSpec &spec, int s, int m);

struct ExperimentResult {
    SnapshotSet snapshots;
    std::vector<CircuitStats> circuits; ///< ordered by (s, m)
};

/**
 * Runs N_t x M circuits and N_s shots of each.
 *
 * Each shot draws from its own counter-derived stream, so the output is
 * identical for any worker count. Without noise the evolved state of a
 * circuit is shared by its shots; with noise every shot is a separate
 * trajectory.
 */
ExperimentResult run_experiment(const Hamiltonian &h, const StateVector &initial,
                                const TimeGrid &grid, const ExperimentSpec &spec);

} // namespace gapscope
