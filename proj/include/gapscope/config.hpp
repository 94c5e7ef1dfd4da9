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
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gapscope/hamiltonian.hpp"
#include "gapscope/shadows.hpp"
#include "gapscope/spectroscopy.hpp"

namespace gapscope {

struct ModelConfig {
    ModelKind kind = ModelKind::heisenberg;
    int n_qubits = 2;
    ModelParams params;
};

struct EvolutionConfig {
    double t_total = 0.0;
    double dt = 0.0;
    int n_t = 0;
    int k_steps_total = 0;
    Method method = Method::tepai;
    double delta_over_pi = 0.0;
};

struct SamplingConfig {
    int m = 1;
    int n_s = 1;
    std::uint64_t seed = 0;
};

struct ObservablesConfig {
    int q = 1;
    LocalityMode mode = LocalityMode::all_subsets;
};

struct ExperimentConfig {
    ModelConfig model;
    InitialStateSpec initial_state;
    EvolutionConfig evolution;
    SamplingConfig sampling;
    NoiseConfig noise;
    ObservablesConfig observables;
    SpectroscopyOptions spectroscopy;
    std::string output_directory = "gapscope-out";
};

/**
 * Parses a config tree. Missing optional sections take their defaults;
 * unknown keys and inconsistent values raise ConfigError naming the field
 * path, e.g. "evolution.delta_over_pi".
 *
 * Of evolution.{t_total, dt, n_t} any two suffice; the third is derived and,
 * if given, must agree to 1e-9 relative.
 */
ExperimentConfig parse_config(const nlohmann::json &j);
/// Reads and parses a JSON file. ConfigError on I/O or syntax problems.
ExperimentConfig load_config(const std::filesystem::path &path);

/// Canonical tree. parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig &config);

/// Hex SHA-256 of the canonical compact serialization.
std::string config_digest(const ExperimentConfig &config);

/// Applies the "observables" and "spectroscopy" sections of `j` on top of
/// the given values; other sections are ignored.
void apply_analysis_overrides(const nlohmann::json &j, ObservablesConfig &observables,
                              SpectroscopyOptions &spectroscopy);

Hamiltonian build_hamiltonian(const ModelConfig &model);

} // namespace gapscope
