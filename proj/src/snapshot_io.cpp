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

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gapscope/error.hpp"
#include "gapscope/shadows.hpp"

namespace gapscope {
namespace {

std::string bits_to_string(std::uint64_t bits, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if ((bits >> q) & 1U) {
            out[static_cast<std::size_t>(q)] = '1';
        }
    }
    return out;
}

std::uint64_t bits_from_string(const std::string &text) {
    if (text.size() > 64) {
        throw DomainError("bit string longer than 64");
    }
    std::uint64_t bits = 0;
    for (std::size_t q = 0; q < text.size(); ++q) {
        if (text[q] == '1') {
            bits |= std::uint64_t{1} << q;
        } else if (text[q] != '0') {
            throw DomainError("bit string may contain only 0 and 1");
        }
    }
    return bits;
}

template <typename T>
T required(const nlohmann::json &j, const char *key, const std::string &where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(where + "." + key, "missing");
    }
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(where + "." + key, e.what());
    }
}

} // namespace

void write_snapshots(std::ostream &out, const SnapshotSet &set) {
    const auto &m = set.metadata();
    nlohmann::json meta = {
        {"n_qubits", m.n_qubits},
        {"n_t", m.n_t},
        {"m", m.m},
        {"n_s", m.n_s},
        {"dt", m.dt},
        {"method", to_string(m.method)},
        {"delta_over_pi", m.delta_over_pi},
        {"seed", m.seed},
        {"config_sha", m.config_sha},
        {"degenerate_initial_state", m.degenerate_initial_state},
    };
    out << meta.dump() << '\n';
    for (const auto &r : set.records()) {
        nlohmann::json line = {
            {"s", r.s},
            {"gamma", r.gamma},
            {"bases", r.bases.to_string()},
            {"bits", bits_to_string(r.bits, m.n_qubits)},
        };
        out << line.dump() << '\n';
    }
    if (!out) {
        throw Error("failed writing snapshot stream");
    }
}

SnapshotSet read_snapshots(std::istream &in) {
    std::string text;
    if (!std::getline(in, text)) {
        throw ConfigError("line 1", "snapshot file is empty");
    }
    SnapshotMetadata meta;
    try {
        const auto j = nlohmann::json::parse(text);
        const std::string where = "line 1";
        meta.n_qubits = required<int>(j, "n_qubits", where);
        meta.n_t = required<int>(j, "n_t", where);
        meta.m = required<int>(j, "m", where);
        meta.n_s = required<int>(j, "n_s", where);
        meta.dt = required<double>(j, "dt", where);
        meta.method = parse_method(required<std::string>(j, "method", where));
        meta.delta_over_pi = required<double>(j, "delta_over_pi", where);
        meta.seed = required<std::uint64_t>(j, "seed", where);
        meta.config_sha = required<std::string>(j, "config_sha", where);
        meta.degenerate_initial_state = j.value("degenerate_initial_state", false);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("line 1", e.what());
    } catch (const DomainError &e) {
        throw ConfigError("line 1", e.what());
    }

    std::vector<SnapshotRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.empty()) {
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);
        try {
            const auto j = nlohmann::json::parse(text);
            SnapshotRecord r;
            r.s = required<int>(j, "s", where);
            r.gamma = required<double>(j, "gamma", where);
            r.bases = PauliString::parse(required<std::string>(j, "bases", where));
            const auto bits = required<std::string>(j, "bits", where);
            if (static_cast<int>(bits.size()) != meta.n_qubits ||
                r.bases.n_qubits() != meta.n_qubits) {
                throw ConfigError(where, "record width does not match n_qubits");
            }
            r.bits = bits_from_string(bits);
            records.push_back(std::move(r));
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError(where, e.what());
        } catch (const DomainError &e) {
            throw ConfigError(where, e.what());
        }
    }
    try {
        return SnapshotSet(std::move(meta), std::move(records));
    } catch (const ConsistencyError &e) {
        throw ConfigError("records", e.what());
    }
}

} // namespace gapscope
