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

#include "gapscope/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/parallel.hpp"

namespace gapscope {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

void write_json(const fs::path &path, const json &j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

} // namespace

TimeGrid make_time_grid(const EvolutionConfig &evolution) {
    return TimeGrid(evolution.t_total, evolution.n_t, evolution.k_steps_total);
}

ExperimentSpec make_experiment_spec(const ExperimentConfig &config, int workers) {
    ExperimentSpec spec;
    spec.method = config.evolution.method;
    spec.delta = config.evolution.delta_over_pi * std::numbers::pi;
    spec.m = config.sampling.m;
    spec.n_s = config.sampling.n_s;
    spec.noise = config.noise;
    spec.seed = config.sampling.seed;
    spec.workers = workers;
    return spec;
}

ExperimentResult simulate(const ExperimentConfig &config, int workers) {
    const auto h = build_hamiltonian(config.model);
    const auto prepared = prepare_initial_state(config.initial_state, h);
    auto result = run_experiment(h, prepared.state, make_time_grid(config.evolution),
                                 make_experiment_spec(config, workers));
    result.snapshots.metadata().config_sha = config_digest(config);
    result.snapshots.metadata().degenerate_initial_state = prepared.degenerate;
    return result;
}

SpectroscopyResult analyze_snapshots(const SnapshotSet &snapshots,
                                     const ObservablesConfig &observables,
                                     const SpectroscopyOptions &options) {
    const auto set = enumerate_observables(snapshots.metadata().n_qubits, observables.q,
                                           observables.mode);
    const auto raw = build_time_series(snapshots, set.observables);
    return analyze_series(raw, snapshots.metadata().dt, options);
}

json circuit_report(const ExperimentConfig &config, const std::vector<CircuitStats> &circuits) {
    const auto h = build_hamiltonian(config.model);
    const auto grid = make_time_grid(config.evolution);
    const int n_t = grid.n_t();
    const bool tepai = config.evolution.method == Method::tepai;
    const double delta = config.evolution.delta_over_pi * std::numbers::pi;

    struct Acc {
        double gamma_min = INFINITY, gamma_max = 0.0;
        long long negative = 0, count = 0;
        double gates = 0.0, depth = 0.0;
        int depth_max = 0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(n_t));
    for (const auto &c : circuits) {
        auto &a = acc.at(static_cast<std::size_t>(c.s - 1));
        a.gamma_min = std::min(a.gamma_min, std::abs(c.gamma));
        a.gamma_max = std::max(a.gamma_max, std::abs(c.gamma));
        a.negative += c.gamma < 0.0;
        ++a.count;
        a.gates += c.gate_count;
        a.depth += c.depth;
        a.depth_max = std::max(a.depth_max, c.depth);
    }

    std::vector<int> trotter_depth(static_cast<std::size_t>(n_t));
    parallel_for(static_cast<std::size_t>(n_t), [&](std::size_t i) {
        const int s = static_cast<int>(i) + 1;
        trotter_depth[i] = circuit_depth(trotter_circuit(h, grid.time(s), grid.steps(s)));
    });

    json per_time = json::array();
    double mean_depth_all = 0.0, trotter_depth_all = 0.0;
    int max_depth_all = 0;
    for (int s = 1; s <= n_t; ++s) {
        const auto &a = acc[static_cast<std::size_t>(s - 1)];
        if (a.count == 0) {
            throw ConsistencyError("no circuits recorded at time index " + std::to_string(s));
        }
        const double n = static_cast<double>(a.count);
        json row = {
            {"s", s},
            {"t", grid.time(s)},
            {"k_steps", grid.steps(s)},
            {"gamma_abs_min", a.gamma_min},
            {"gamma_abs_max", a.gamma_max},
            {"negative_fraction", static_cast<double>(a.negative) / n},
            {"mean_gates", a.gates / n},
            {"mean_depth", a.depth / n},
            {"max_depth", a.depth_max},
            {"trotter_depth", trotter_depth[static_cast<std::size_t>(s - 1)]},
        };
        if (tepai) {
            const double g = gamma_exact(h, grid.time(s), delta, grid.steps(s));
            row["gamma_exact"] = g;
            row["gamma_sq"] = g * g;
            row["expected_gates"] = expected_gate_count(h, grid.time(s), delta, grid.steps(s));
        }
        per_time.push_back(row);
        mean_depth_all += a.depth / n;
        trotter_depth_all += trotter_depth[static_cast<std::size_t>(s - 1)];
        max_depth_all = std::max(max_depth_all, a.depth_max);
    }
    const auto &last = per_time.back();
    return {
        {"method", to_string(config.evolution.method)},
        {"circuits", circuits.size()},
        {"final_time",
         {{"mean_depth", last["mean_depth"]},
          {"max_depth", last["max_depth"]},
          {"trotter_depth", last["trotter_depth"]},
          {"mean_gates", last["mean_gates"]}}},
        {"all_times",
         {{"mean_depth", mean_depth_all / n_t},
          {"max_depth", max_depth_all},
          {"mean_trotter_depth", trotter_depth_all / n_t}}},
        {"per_time", per_time},
    };
}

RunOutcome run_command(const ExperimentConfig &config, const fs::path &out_dir, int workers) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const auto h = build_hamiltonian(config.model);
    write_json(out_dir / "config.json", to_json(config));
    write_json(out_dir / "hamiltonian.json", to_json(h));

    RunOutcome out;
    out.experiment = simulate(config, workers);
    {
        auto f = open_output(out_dir / "snapshots.jsonl");
        write_snapshots(f, out.experiment.snapshots);
    }
    const auto simulated = std::chrono::steady_clock::now();

    out.analysis = analyze_snapshots(out.experiment.snapshots, config.observables,
                                     config.spectroscopy);
    {
        auto f = open_output(out_dir / "spectrum.csv");
        write_spectrum_csv(f, out.analysis.spectrum);
    }
    {
        auto f = open_output(out_dir / "peaks.json");
        write_peaks_json(f, out.analysis.spectrum.peaks);
    }
    const auto done = std::chrono::steady_clock::now();

    out.report = circuit_report(config, out.experiment.circuits);
    out.report["config_sha"] = config_digest(config);
    out.report["total_records"] = out.experiment.snapshots.size();
    out.report["degenerate_initial_state"] =
        out.experiment.snapshots.metadata().degenerate_initial_state;
    out.report["kept_rows"] = out.analysis.data.rows.size();
    out.report["frequency_bin"] = out.analysis.spectrum.bin_width();
    out.report["unpadded_bin"] =
        2.0 * std::numbers::pi / (config.evolution.n_t * config.evolution.dt);
    if (!out.analysis.spectrum.peaks.empty()) {
        const auto &p = out.analysis.spectrum.peaks.front();
        out.report["top_peak"] = {{"omega", p.omega}, {"lambda", p.lambda}};
    }
    out.report["wall_seconds"] = {
        {"simulation", std::chrono::duration<double>(simulated - start).count()},
        {"spectroscopy", std::chrono::duration<double>(done - simulated).count()},
    };
    write_json(out_dir / "report.json", out.report);
    return out;
}

SpectroscopyResult spectrum_command(const fs::path &snapshots, const ObservablesConfig &observables,
                                    const SpectroscopyOptions &options, const fs::path &out_dir) {
    std::ifstream in(snapshots);
    if (!in) {
        throw ConfigError(snapshots.string(), "cannot open file");
    }
    const auto set = read_snapshots(in);
    if (observables.q > set.metadata().n_qubits) {
        throw ConfigError("observables.q", "must not exceed the snapshot width");
    }
    auto result = analyze_snapshots(set, observables, options);
    fs::create_directories(out_dir);
    {
        auto f = open_output(out_dir / "spectrum.csv");
        write_spectrum_csv(f, result.spectrum);
    }
    {
        auto f = open_output(out_dir / "peaks.json");
        write_peaks_json(f, result.spectrum.peaks);
    }
    return result;
}

json sample_command(const ExperimentConfig &config, const fs::path &out_dir, int workers) {
    const auto h = build_hamiltonian(config.model);
    const auto grid = make_time_grid(config.evolution);
    const auto spec = make_experiment_spec(config, workers);
    fs::create_directories(out_dir);
    auto out = open_output(out_dir / "circuits.jsonl");

    // Generate one time point at a time so memory stays bounded by M circuits.
    std::vector<CircuitStats> stats;
    const auto m = static_cast<std::size_t>(spec.m);
    std::vector<GeneratedCircuit> batch;
    for (int s = 1; s <= grid.n_t(); ++s) {
        batch.assign(m, GeneratedCircuit{RotationCircuit(h.n_qubits()), {}});
        parallel_for(m, [&](std::size_t i) {
            batch[i] = generate_circuit(h, grid, spec, s, static_cast<int>(i));
        }, workers);
        for (const auto &g : batch) {
            json gates = json::array();
            for (const auto &gate : g.circuit.gates()) {
                gates.push_back({{"pauli", gate.axis.to_string()}, {"angle", gate.angle}});
            }
            out << json{{"s", g.stats.s}, {"m", g.stats.m}, {"gamma", g.stats.gamma}, {"gates", gates}}
                       .dump()
                << '\n';
            stats.push_back(g.stats);
        }
    }
    auto report = circuit_report(config, stats);
    report["config_sha"] = config_digest(config);
    write_json(out_dir / "report.json", report);
    return report;
}

json gap_command(const GapRequest &request) {
    const auto h = build_model(request.kind, request.n_qubits, request.params);
    json out = {{"model", to_string(request.kind)}, {"n_qubits", request.n_qubits}};
    if (request.kind == ModelKind::tfim) {
        out["closed_form_gap"] = tfim_gap(request.n_qubits, request.params.j, request.params.d);
    }
    if (!request.diagonalize) {
        return out;
    }
    if (request.n_qubits > kMaxDenseQubits) {
        throw CapacityError("diagonalization supports at most " + std::to_string(kMaxDenseQubits) +
                            " qubits; use the closed form for larger TFIM chains");
    }
    const auto eig = eigendecompose(h);
    auto pairs = request.level_pairs;
    if (pairs.empty()) {
        pairs.emplace_back(0, 1);
    }
    json gaps = json::array();
    const int dim = static_cast<int>(eig.eigenvalues.size());
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= dim || b >= dim) {
            throw DomainError("level index out of range [0, " + std::to_string(dim) + ")");
        }
        gaps.push_back({{"levels", {a, b}},
                        {"energies", {eig.eigenvalues(a), eig.eigenvalues(b)}},
                        {"gap", std::abs(eig.eigenvalues(b) - eig.eigenvalues(a))},
                        {"degenerate", eig.is_degenerate(a) || eig.is_degenerate(b)}});
    }
    out["gaps"] = gaps;
    return out;
}

} // namespace gapscope
