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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapscope/config.hpp"
#include "gapscope/dense.hpp"
#include "gapscope/error.hpp"
#include "gapscope/experiment.hpp"
#include "gapscope/validation.hpp"

namespace fs = std::filesystem;
using namespace gapscope;

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kCapacityError = 3 };

void print_peaks(const Spectrum &spectrum, std::size_t limit) {
    std::size_t shown = 0;
    for (const auto &p : spectrum.peaks) {
        if (shown++ == limit) {
            break;
        }
        std::cout << "  peak omega=" << p.omega << " lambda=" << p.lambda << '\n';
    }
    if (spectrum.peaks.empty()) {
        std::cout << "  no peaks above the prominence threshold\n";
    }
}

std::vector<std::pair<int, int>> parse_level_pairs(const std::vector<std::string> &items) {
    std::vector<std::pair<int, int>> out;
    for (const auto &item : items) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("--levels", "expected a,b, got '" + item + "'");
        }
        try {
            out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
        } catch (const std::exception &) {
            throw ConfigError("--levels", "expected integers in '" + item + "'");
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Energy-gap spectroscopy from TE-PAI sampled dynamics and classical shadows"};
    app.require_subcommand(1);

    std::string config_path, snapshots_path, overrides_path, out_dir, model = "heisenberg";
    int n_qubits = 0;
    ModelParams params;
    std::vector<std::string> levels;
    std::uint64_t validate_seed = ValidationOptions{}.seed;
    bool json_out = false;

    auto *run = app.add_subcommand("run", "simulate, then analyze; writes all artifacts");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: output.directory)");

    auto *spectrum = app.add_subcommand("spectrum", "analyze an existing snapshot file");
    spectrum->add_option("snapshots", snapshots_path, "snapshots.jsonl")->required();
    spectrum->add_option("--config", overrides_path,
                         "JSON with observables/spectroscopy sections (default: config.json beside the snapshots)");
    spectrum->add_option("--out", out_dir, "output directory (default: next to the snapshots)");

    auto *sample = app.add_subcommand("sample", "emit sampled circuits and Gamma statistics only");
    sample->add_option("config", config_path, "experiment config (JSON)")->required();
    sample->add_option("--out", out_dir, "output directory (default: output.directory)");

    auto *gap = app.add_subcommand("gap", "reference gaps by closed form or diagonalization");
    gap->add_option("--model", model, "heisenberg or tfim")->required();
    gap->add_option("--n", n_qubits, "chain length")->required();
    gap->add_option("--jx", params.jx, "Heisenberg XX coupling");
    gap->add_option("--jy", params.jy, "Heisenberg YY coupling");
    gap->add_option("--jz", params.jz, "Heisenberg ZZ coupling");
    gap->add_option("--j", params.j, "TFIM ZZ coupling");
    gap->add_option("--d", params.d, "TFIM transverse field");
    gap->add_option("--levels", levels, "level pairs a,b (ascending-energy indices)");

    auto *validate = app.add_subcommand("validate", "run the built-in oracle checks");
    validate->add_option("--seed", validate_seed, "master seed");
    validate->add_flag("--json", json_out, "print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (run->parsed()) {
            const auto config = load_config(config_path);
            const fs::path dir = out_dir.empty() ? fs::path(config.output_directory) : fs::path(out_dir);
            const auto outcome = run_command(config, dir);
            std::cout << "wrote " << outcome.experiment.snapshots.size() << " snapshot records to "
                      << dir.string() << '\n';
            std::cout << "final-time depth: mean " << outcome.report["final_time"]["mean_depth"]
                      << ", trotter " << outcome.report["final_time"]["trotter_depth"] << '\n';
            print_peaks(outcome.analysis.spectrum, 5);
        } else if (spectrum->parsed()) {
            ObservablesConfig observables;
            SpectroscopyOptions options;
            // A run directory carries its own config; use its analysis
            // settings unless told otherwise.
            if (overrides_path.empty()) {
                const fs::path sibling = fs::path(snapshots_path).parent_path() / "config.json";
                if (fs::exists(sibling)) {
                    overrides_path = sibling.string();
                    std::cout << "analysis settings from " << overrides_path << "\n";
                }
            }
            if (!overrides_path.empty()) {
                std::ifstream in(overrides_path);
                if (!in) {
                    throw ConfigError(overrides_path, "cannot open file");
                }
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::parse_error &e) {
                    throw ConfigError(overrides_path, e.what());
                }
                apply_analysis_overrides(j, observables, options);
            }
            const fs::path dir = out_dir.empty() ? fs::path(snapshots_path).parent_path() : fs::path(out_dir);
            const auto result = spectrum_command(snapshots_path, observables, options,
                                                 dir.empty() ? fs::path(".") : dir);
            std::cout << "kept " << result.data.rows.size() << " series\n";
            print_peaks(result.spectrum, 5);
        } else if (sample->parsed()) {
            const auto config = load_config(config_path);
            const fs::path dir = out_dir.empty() ? fs::path(config.output_directory) : fs::path(out_dir);
            const auto report = sample_command(config, dir);
            std::cout << "wrote " << report["circuits"] << " circuits to " << (dir / "circuits.jsonl").string()
                      << '\n';
            std::cout << "final-time depth: mean " << report["final_time"]["mean_depth"] << ", trotter "
                      << report["final_time"]["trotter_depth"] << '\n';
        } else if (gap->parsed()) {
            GapRequest request;
            try {
                request.kind = parse_model_kind(model);
            } catch (const Error &e) {
                throw ConfigError("--model", e.what());
            }
            request.n_qubits = n_qubits;
            request.params = params;
            request.level_pairs = parse_level_pairs(levels);
            // The closed form covers TFIM chains too long to diagonalize.
            request.diagonalize = request.kind == ModelKind::heisenberg || !levels.empty() ||
                                  n_qubits <= kMaxDenseQubits;
            std::cout << gap_command(request).dump(2) << '\n';
        } else if (validate->parsed()) {
            ValidationOptions options;
            options.seed = validate_seed;
            const auto checks = run_validation(options);
            bool ok = true;
            for (const auto &c : checks) {
                ok = ok && c.passed;
            }
            if (json_out) {
                std::cout << to_json(checks).dump(2) << '\n';
            } else {
                for (const auto &c : checks) {
                    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
                }
            }
            return ok ? kOk : kValidationFailed;
        }
    } catch (const CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacityError;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidModelError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailed;
    }
    return kOk;
}
