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

#include "gapscope/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <openssl/evp.h>

#include "gapscope/error.hpp"

namespace gapscope {
namespace {

using nlohmann::json;

/// Typed access to one object of the tree; remembers which keys were read
/// so leftovers can be reported.
class Section {
  public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    std::string field(const std::string &key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    const std::string &path() const noexcept { return path_; }

    bool has(const std::string &key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    template <typename T> T get(const std::string &key, T fallback) {
        if (!has(key)) {
            return fallback;
        }
        return as<T>(key);
    }

    template <typename T> T required(const std::string &key) {
        if (!has(key)) {
            throw ConfigError(field(key), "missing");
        }
        return as<T>(key);
    }

    Section child(const std::string &key) {
        seen_.insert(key);
        static const json empty = json::object();
        return Section(j_.contains(key) ? j_.at(key) : empty, field(key));
    }

    const json &raw(const std::string &key) {
        seen_.insert(key);
        return j_.at(key);
    }

    void finish() const {
        for (const auto &item : j_.items()) {
            if (!seen_.count(item.key())) {
                throw ConfigError(field(item.key()), "unknown key");
            }
        }
    }

  private:
    template <typename T> T as(const std::string &key) {
        const json &v = j_.at(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) {
                throw ConfigError(field(key), "expected true or false");
            }
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) {
                throw ConfigError(field(key), "expected an integer");
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
                    throw ConfigError(field(key), "expected a non-negative integer");
                }
            } else {
                if (v.is_number_unsigned() &&
                    v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
                    throw ConfigError(field(key), "integer out of range");
                }
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) {
                throw ConfigError(field(key), "expected a number");
            }
        } else {
            if (!v.is_string()) {
                throw ConfigError(field(key), "expected a string");
            }
        }
        return v.get<T>();
    }

    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

void check(bool ok, const std::string &field, const std::string &what) {
    if (!ok) {
        throw ConfigError(field, what);
    }
}

void parse_observables(Section s, ObservablesConfig &o) {
    o.q = s.get<int>("q", o.q);
    check(o.q >= 1, s.field("q"), "must be at least 1");
    if (s.has("mode")) {
        try {
            o.mode = parse_locality_mode(s.required<std::string>("mode"));
        } catch (const DomainError &e) {
            throw ConfigError(s.field("mode"), e.what());
        }
    }
    s.finish();
}

void parse_spectroscopy(Section s, SpectroscopyOptions &o) {
    o.keep_fraction = s.get<double>("keep_fraction", o.keep_fraction);
    check(o.keep_fraction > 0.0 && o.keep_fraction <= 1.0, s.field("keep_fraction"),
          "must lie in (0, 1]");
    o.lb_lags = s.get<int>("lb_lags", o.lb_lags);
    check(o.lb_lags >= 0, s.field("lb_lags"), "must be non-negative (0 selects the default)");
    o.c = s.get<int>("c", o.c);
    check(o.c >= 1, s.field("c"), "must be at least 1");
    o.zero_pad = s.get<int>("zero_pad", o.zero_pad);
    check(o.zero_pad >= 1, s.field("zero_pad"), "must be at least 1");
    o.dc_exclude_bins = s.get<int>("dc_exclude_bins", o.dc_exclude_bins);
    check(o.dc_exclude_bins >= 0, s.field("dc_exclude_bins"), "must be non-negative");
    o.min_prominence_fraction = s.get<double>("min_prominence_fraction", o.min_prominence_fraction);
    check(o.min_prominence_fraction >= 0.0 && o.min_prominence_fraction <= 1.0,
          s.field("min_prominence_fraction"), "must lie in [0, 1]");
    s.finish();
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

} // namespace

Hamiltonian build_hamiltonian(const ModelConfig &model) {
    return build_model(model.kind, model.n_qubits, model.params);
}

ExperimentConfig parse_config(const json &j) {
    ExperimentConfig c;
    Section root(j, "");

    {
        Section s = root.child("model");
        try {
            c.model.kind = parse_model_kind(s.required<std::string>("kind"));
        } catch (const DomainError &e) {
            throw ConfigError(s.field("kind"), e.what());
        } catch (const InvalidModelError &e) {
            throw ConfigError(s.field("kind"), e.what());
        }
        c.model.n_qubits = s.required<int>("n_qubits");
        check(c.model.n_qubits >= 2, s.field("n_qubits"), "chain needs at least 2 sites");
        check(c.model.n_qubits <= kMaxQubits, s.field("n_qubits"),
              "at most " + std::to_string(kMaxQubits) + " qubits");
        Section p = s.child("params");
        auto &mp = c.model.params;
        if (c.model.kind == ModelKind::heisenberg) {
            mp.jx = p.get<double>("jx", mp.jx);
            mp.jy = p.get<double>("jy", mp.jy);
            mp.jz = p.get<double>("jz", mp.jz);
        } else {
            mp.j = p.get<double>("j", mp.j);
            mp.d = p.get<double>("d", mp.d);
        }
        p.finish();
        s.finish();
    }

    const int n = c.model.n_qubits;
    {
        Section s = root.child("initial_state");
        const bool product = s.has("product");
        const bool eigen = s.has("eigen_superposition");
        check(product != eigen, s.path(), "give exactly one of product or eigen_superposition");
        if (product) {
            c.initial_state.product = s.required<std::string>("product");
            check(static_cast<int>(c.initial_state.product.size()) == n, s.field("product"),
                  "length must equal model.n_qubits");
            for (char ch : c.initial_state.product) {
                check(ch == '0' || ch == '1' || ch == '+' || ch == '-', s.field("product"),
                      "letters must be 0, 1, + or -");
            }
        } else {
            Section e = s.child("eigen_superposition");
            const json &levels = e.raw("levels");
            check(levels.is_array() && !levels.empty(), e.field("levels"),
                  "expected a non-empty array of level indices");
            for (const auto &l : levels) {
                check(l.is_number_integer(), e.field("levels"), "level indices must be integers");
                const auto v = l.get<long long>();
                check(v >= 0 && (n >= 62 || v < (1LL << n)), e.field("levels"),
                      "level index out of range");
                c.initial_state.levels.push_back(static_cast<int>(v));
            }
            if (e.has("weights")) {
                const json &w = e.raw("weights");
                check(w.is_array() && w.size() == levels.size(), e.field("weights"),
                      "must have one weight per level");
                double norm = 0.0;
                for (const auto &x : w) {
                    check(x.is_number(), e.field("weights"), "weights must be numbers");
                    c.initial_state.weights.push_back(x.get<double>());
                    norm += x.get<double>() * x.get<double>();
                }
                check(norm > 0.0, e.field("weights"), "weights must not all be zero");
            }
            e.finish();
        }
        s.finish();
    }

    {
        Section s = root.child("evolution");
        auto &e = c.evolution;
        const bool has_t = s.has("t_total");
        const bool has_dt = s.has("dt");
        const bool has_nt = s.has("n_t");
        check(static_cast<int>(has_t) + static_cast<int>(has_dt) + static_cast<int>(has_nt) >= 2,
              s.field("n_t"), "give at least two of t_total, dt and n_t");
        if (has_t) {
            e.t_total = s.required<double>("t_total");
            check(e.t_total > 0.0 && std::isfinite(e.t_total), s.field("t_total"), "must be positive");
        }
        if (has_dt) {
            e.dt = s.required<double>("dt");
            check(e.dt > 0.0 && std::isfinite(e.dt), s.field("dt"), "must be positive");
        }
        if (has_nt) {
            e.n_t = s.required<int>("n_t");
            check(e.n_t >= 1, s.field("n_t"), "must be at least 1");
        }
        if (!has_nt) {
            const double ratio = e.t_total / e.dt;
            e.n_t = static_cast<int>(std::llround(ratio));
            check(e.n_t >= 1 && close(ratio, e.n_t), s.field("n_t"),
                  "t_total / dt is not a whole number of time points");
        } else if (!has_t) {
            e.t_total = e.dt * e.n_t;
        } else if (!has_dt) {
            e.dt = e.t_total / e.n_t;
        } else {
            check(close(e.dt * e.n_t, e.t_total), s.field("dt"), "dt * n_t must equal t_total");
        }
        e.k_steps_total = s.required<int>("k_steps_total");
        check(e.k_steps_total >= e.n_t, s.field("k_steps_total"),
              "must be at least n_t so every time point gets one step");
        try {
            e.method = parse_method(s.get<std::string>("method", "tepai"));
        } catch (const DomainError &err) {
            throw ConfigError(s.field("method"), err.what());
        }
        if (e.method == Method::tepai) {
            e.delta_over_pi = s.required<double>("delta_over_pi");
        } else {
            e.delta_over_pi = s.get<double>("delta_over_pi", 0.0);
        }
        check((e.method == Method::trotter && e.delta_over_pi == 0.0) ||
                  (e.delta_over_pi > 0.0 && e.delta_over_pi < 1.0),
              s.field("delta_over_pi"), "must lie in (0, 1)");
        s.finish();
    }

    {
        Section s = root.child("sampling");
        c.sampling.m = s.get<int>("m", c.sampling.m);
        check(c.sampling.m >= 1, s.field("m"), "must be at least 1");
        c.sampling.n_s = s.get<int>("n_s", c.sampling.n_s);
        check(c.sampling.n_s >= 1, s.field("n_s"), "must be at least 1");
        c.sampling.seed = s.get<std::uint64_t>("seed", c.sampling.seed);
        s.finish();
    }

    {
        Section s = root.child("noise");
        auto &nz = c.noise;
        nz.enabled = s.get<bool>("enabled", nz.enabled);
        nz.p1 = s.get<double>("p1", nz.p1);
        check(nz.p1 >= 0.0 && nz.p1 <= 1.0, s.field("p1"), "must lie in [0, 1]");
        nz.p2 = s.get<double>("p2", nz.p2);
        check(nz.p2 >= 0.0 && nz.p2 <= 1.0, s.field("p2"), "must lie in [0, 1]");
        nz.include_measurement_layer =
            s.get<bool>("include_measurement_layer", nz.include_measurement_layer);
        s.finish();
    }

    parse_observables(root.child("observables"), c.observables);
    check(c.observables.q <= n, "observables.q", "must not exceed model.n_qubits");
    parse_spectroscopy(root.child("spectroscopy"), c.spectroscopy);
    check(c.spectroscopy.c <= c.evolution.n_t, "spectroscopy.c", "must not exceed evolution.n_t");

    {
        Section s = root.child("output");
        c.output_directory = s.get<std::string>("directory", c.output_directory);
        check(!c.output_directory.empty(), s.field("directory"), "must not be empty");
        s.finish();
    }
    root.finish();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string(), "cannot open file");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(path.string(), e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig &c) {
    json model = {{"kind", to_string(c.model.kind)}, {"n_qubits", c.model.n_qubits}};
    if (c.model.kind == ModelKind::heisenberg) {
        model["params"] = {{"jx", c.model.params.jx}, {"jy", c.model.params.jy},
                           {"jz", c.model.params.jz}};
    } else {
        model["params"] = {{"j", c.model.params.j}, {"d", c.model.params.d}};
    }

    json initial;
    if (c.initial_state.is_eigen_superposition()) {
        json e = {{"levels", c.initial_state.levels}};
        if (!c.initial_state.weights.empty()) {
            e["weights"] = c.initial_state.weights;
        }
        initial["eigen_superposition"] = e;
    } else {
        initial["product"] = c.initial_state.product;
    }

    json evolution = {
        {"t_total", c.evolution.t_total},
        {"dt", c.evolution.dt},
        {"n_t", c.evolution.n_t},
        {"k_steps_total", c.evolution.k_steps_total},
        {"method", to_string(c.evolution.method)},
        {"delta_over_pi", c.evolution.delta_over_pi},
    };

    return {
        {"model", model},
        {"initial_state", initial},
        {"evolution", evolution},
        {"sampling", {{"m", c.sampling.m}, {"n_s", c.sampling.n_s}, {"seed", c.sampling.seed}}},
        {"noise",
         {{"enabled", c.noise.enabled},
          {"p1", c.noise.p1},
          {"p2", c.noise.p2},
          {"include_measurement_layer", c.noise.include_measurement_layer}}},
        {"observables", {{"q", c.observables.q}, {"mode", to_string(c.observables.mode)}}},
        {"spectroscopy",
         {{"keep_fraction", c.spectroscopy.keep_fraction},
          {"lb_lags", c.spectroscopy.lb_lags},
          {"c", c.spectroscopy.c},
          {"zero_pad", c.spectroscopy.zero_pad},
          {"dc_exclude_bins", c.spectroscopy.dc_exclude_bins},
          {"min_prominence_fraction", c.spectroscopy.min_prominence_fraction}}},
        {"output", {{"directory", c.output_directory}}},
    };
}

std::string config_digest(const ExperimentConfig &config) {
    const std::string text = to_json(config).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

void apply_analysis_overrides(const json &j, ObservablesConfig &observables,
                              SpectroscopyOptions &spectroscopy) {
    if (!j.is_object()) {
        throw ConfigError("<root>", "expected an object");
    }
    if (j.contains("observables")) {
        parse_observables(Section(j.at("observables"), "observables"), observables);
    }
    if (j.contains("spectroscopy")) {
        parse_spectroscopy(Section(j.at("spectroscopy"), "spectroscopy"), spectroscopy);
    }
}

} // namespace gapscope
