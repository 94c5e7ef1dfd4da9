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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapscope/config.hpp"
#include "gapscope/evolution.hpp"
#include "gapscope/shadows.hpp"
#include "gapscope/spectroscopy.hpp"

namespace gapscope {

TimeGrid make_time_grid(const EvolutionConfig &evolution);
ExperimentSpec make_experiment_spec(const ExperimentConfig &config, int workers = 0);

/// Prepares the initial state and runs every circuit of the config. The
/// snapshot metadata carries the config digest and the degeneracy flag.
ExperimentResult simulate(const ExperimentConfig &config, int workers = 0);

/// Observables of the config, series, filter, dominant signals and spectrum.
SpectroscopyResult analyze_snapshots(const SnapshotSet &snapshots,
                                     const ObservablesConfig &observables,
                                     const SpectroscopyOptions &options);

/**
 * Gamma and depth statistics.
 *
 * Per time point: |Gamma| (min and max over samples, which agree), the
 * fraction of negative signs, mean kept gates, mean and max depth, and the
 * depth of the Trotter circuit it replaces. Top level: the same depth
 * figures at the final time point and averaged over all time points.
 */
nlohmann::json circuit_report(const ExperimentConfig &config,
                              const std::vector<CircuitStats> &circuits);

struct RunOutcome {
    ExperimentResult experiment;
    SpectroscopyResult analysis;
    nlohmann::json report;
};

/// `run`: writes snapshots.jsonl, spectrum.csv, peaks.json, report.json,
/// config.json and hamiltonian.json into out_dir (created if needed).
RunOutcome run_command(const ExperimentConfig &config, const std::filesystem::path &out_dir,
                       int workers = 0);

/// `spectrum`: reads a snapshot file, analyzes it, writes spectrum.csv and
/// peaks.json next to `out_prefix` (a directory).
SpectroscopyResult spectrum_command(const std::filesystem::path &snapshots,
                                    const ObservablesConfig &observables,
                                    const SpectroscopyOptions &options,
                                    const std::filesystem::path &out_dir);

/// `sample`: writes circuits.jsonl (one line per (s, m): s, m, gamma, gates)
/// and report.json, without simulating.
nlohmann::json sample_command(const ExperimentConfig &config, const std::filesystem::path &out_dir,
                              int workers = 0);

struct GapRequest {
    ModelKind kind = ModelKind::heisenberg;
    int n_qubits = 2;
    ModelParams params;
    std::vector<std::pair<int, int>> level_pairs; ///< empty: (0, 1)
    bool diagonalize = true;
};

/// Reference gaps: the closed form for TFIM and, when diagonalize is set,
/// dense eigenvalue differences. CapacityError above the dense limit.
nlohmann::json gap_command(const GapRequest &request);

} // namespace gapscope
