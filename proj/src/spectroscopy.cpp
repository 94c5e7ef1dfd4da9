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

#include "gapscope/spectroscopy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "gapscope/error.hpp"

namespace gapscope {
namespace {

// X -> 0, Z -> 1, Y -> 2.
int letter_code(PauliLetter l) { return static_cast<int>(l) - 1; }

struct SupportGroup {
    std::uint64_t support = 0;
    std::vector<int> qubits;
    double magnitude = 1.0;                 // 3^w
    std::vector<std::vector<std::size_t>> by_code; // base-3 code of letters -> observables
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Eigen::MatrixXd build_time_series(const SnapshotSet &snapshots,
                                  std::span<const PauliString> observables) {
    const auto &meta = snapshots.metadata();
    std::vector<SupportGroup> groups;
    std::unordered_map<std::uint64_t, std::size_t> group_of;
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const auto &o = observables[i];
        if (o.n_qubits() != meta.n_qubits) {
            throw DomainError("observable " + o.to_string() + " does not match snapshot width");
        }
        auto [it, inserted] = group_of.try_emplace(o.support(), groups.size());
        if (inserted) {
            SupportGroup g;
            g.support = o.support();
            g.qubits = o.support_qubits();
            std::size_t codes = 1;
            for (std::size_t k = 0; k < g.qubits.size(); ++k) {
                codes *= 3;
                g.magnitude *= 3.0;
            }
            g.by_code.resize(codes);
            groups.push_back(std::move(g));
        }
        auto &g = groups[it->second];
        std::size_t code = 0;
        for (auto q = g.qubits.rbegin(); q != g.qubits.rend(); ++q) {
            code = code * 3 + static_cast<std::size_t>(letter_code(o.letter(*q)));
        }
        g.by_code[code].push_back(i);
    }

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(observables.size()),
                                                meta.n_t);
    for (int s = 1; s <= meta.n_t; ++s) {
        const auto records = snapshots.at_time(s);
        if (records.empty()) {
            throw ConsistencyError("time index " + std::to_string(s) + " has no records");
        }
        const double norm = 1.0 / static_cast<double>(records.size());
        for (const auto &r : records) {
            int codes[kMaxQubits] = {};
            for (int q = 0; q < meta.n_qubits; ++q) {
                codes[q] = letter_code(r.bases.letter(q));
            }
            for (const auto &g : groups) {
                std::size_t code = 0;
                for (auto q = g.qubits.rbegin(); q != g.qubits.rend(); ++q) {
                    code = code * 3 + static_cast<std::size_t>(codes[*q]);
                }
                const auto &hits = g.by_code[code];
                if (hits.empty()) {
                    continue;
                }
                double v = r.gamma * g.magnitude * norm;
                if (std::popcount(r.bits & g.support) & 1) {
                    v = -v;
                }
                for (std::size_t i : hits) {
                    out(static_cast<Eigen::Index>(i), s - 1) += v;
                }
            }
        }
    }
    return out;
}

double chi2_sf(double x, double dof) {
    if (!(dof > 0.0)) {
        throw DomainError("chi-squared degrees of freedom must be positive");
    }
    if (!(x > 0.0)) {
        return 1.0;
    }
    return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

LjungBox ljung_box(std::span<const double> series, int lags) {
    const auto n = static_cast<int>(series.size());
    if (lags < 1 || lags >= n) {
        throw DomainError("Ljung-Box lag count must lie in [1, n)");
    }
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    double denom = 0.0;
    for (double v : series) {
        denom += (v - mean) * (v - mean);
    }
    LjungBox out;
    if (denom == 0.0) {
        return out;
    }
    for (int k = 1; k <= lags; ++k) {
        double num = 0.0;
        for (int t = 0; t + k < n; ++t) {
            num += (series[static_cast<std::size_t>(t)] - mean) *
                   (series[static_cast<std::size_t>(t + k)] - mean);
        }
        const double r = num / denom;
        out.q += r * r / (n - k);
    }
    out.q *= static_cast<double>(n) * (n + 2);
    out.p_value = chi2_sf(out.q, lags);
    return out;
}

int default_lb_lags(int n_t) { return std::max(1, std::min(10, n_t / 5)); }

DataMatrix standardize(const Eigen::MatrixXd &raw) {
    const Eigen::Index n_t = raw.cols();
    if (n_t < 1) {
        throw EmptySignalError("time series has no time points");
    }
    DataMatrix d;
    std::vector<Eigen::VectorXd> kept;
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        Eigen::VectorXd row = raw.row(i).transpose();
        const double mean = row.mean();
        row.array() -= mean;
        const double sigma = std::sqrt(row.squaredNorm() / static_cast<double>(n_t));
        if (!(sigma >= 1e-12)) {
            continue;
        }
        row /= sigma;
        // Second pass removes the rounding residue of the first.
        row.array() -= row.mean();
        d.rows.push_back(static_cast<std::size_t>(i));
        kept.push_back(std::move(row));
    }
    if (kept.empty()) {
        throw EmptySignalError("every time series is constant");
    }
    d.values.resize(static_cast<Eigen::Index>(kept.size()), n_t);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        d.values.row(static_cast<Eigen::Index>(k)) = kept[k].transpose();
    }
    d.standardized = true;
    return d;
}

DataMatrix standardize_and_filter(const Eigen::MatrixXd &raw, double keep_fraction, int lb_lags) {
    if (raw.cols() < 8) {
        throw DomainError("Ljung-Box filtering needs at least 8 time points");
    }
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
        throw DomainError("keep_fraction must lie in (0, 1]");
    }
    const DataMatrix all = standardize(raw);
    const auto n_rows = all.rows.size();
    std::vector<LjungBox> tests(n_rows);
    for (std::size_t k = 0; k < n_rows; ++k) {
        const Eigen::VectorXd row = all.values.row(static_cast<Eigen::Index>(k)).transpose();
        tests[k] = ljung_box(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())),
                             lb_lags);
    }
    std::vector<std::size_t> order(n_rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (tests[a].p_value != tests[b].p_value) {
            return tests[a].p_value < tests[b].p_value;
        }
        if (tests[a].q != tests[b].q) {
            return tests[a].q > tests[b].q;
        }
        return a < b;
    });
    auto keep = static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(n_rows) - 1e-9));
    keep = std::clamp<std::size_t>(keep, 1, n_rows);
    order.resize(keep);

    DataMatrix d;
    d.standardized = true;
    d.values.resize(static_cast<Eigen::Index>(keep), all.values.cols());
    for (std::size_t k = 0; k < keep; ++k) {
        d.rows.push_back(all.rows[order[k]]);
        d.tests.push_back(tests[order[k]]);
        d.values.row(static_cast<Eigen::Index>(k)) = all.values.row(static_cast<Eigen::Index>(order[k]));
    }
    return d;
}

DominantSignals dominant_time_signals(const DataMatrix &d, int c) {
    const Eigen::Index n_t = d.values.cols();
    if (c < 1 || c > n_t) {
        throw DomainError("number of dominant signals must lie in [1, N_t]");
    }
    const Eigen::MatrixXd gram = d.values.transpose() * d.values;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("time-correlation eigensolver did not converge");
    }
    DominantSignals out;
    out.eigenvalues.resize(c);
    out.vectors.resize(n_t, c);
    for (int k = 0; k < c; ++k) {
        const Eigen::Index col = n_t - 1 - k;
        out.eigenvalues(k) = solver.eigenvalues()(col);
        Eigen::VectorXd v = solver.eigenvectors().col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) {
            v = -v;
        }
        out.vectors.col(k) = v;
    }
    return out;
}

std::vector<std::complex<double>> dft(std::span<const double> x, std::size_t length) {
    if (length == 0) {
        return {};
    }
    std::vector<std::complex<double>> twiddle(length);
    for (std::size_t j = 0; j < length; ++j) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(length);
        twiddle[j] = {std::cos(a), std::sin(a)};
    }
    const std::size_t n = std::min(x.size(), length);
    std::vector<std::complex<double>> out(length);
    for (std::size_t f = 0; f < length; ++f) {
        std::complex<double> acc = 0.0;
        std::size_t idx = 0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += x[m] * twiddle[idx];
            idx += f;
            if (idx >= length) {
                idx -= length;
            }
        }
        out[f] = acc;
    }
    return out;
}

std::size_t Spectrum::nearest_bin(double omega) const {
    if (omegas.empty()) {
        throw DomainError("empty spectrum");
    }
    const double w = bin_width();
    if (w <= 0.0) {
        return 0;
    }
    const double f = std::round(omega / w);
    return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(omegas.size() - 1)));
}

Spectrum spectral_function(const Eigen::MatrixXd &signals, double dt, int zero_pad) {
    if (!(dt > 0.0)) {
        throw DomainError("dt must be positive");
    }
    if (zero_pad < 1) {
        throw DomainError("zero_pad must be at least 1");
    }
    const auto n_t = static_cast<std::size_t>(signals.rows());
    const auto c = static_cast<std::size_t>(signals.cols());
    if (c < 1 || n_t < 2) {
        throw DomainError("spectral function needs at least one signal of length >= 2");
    }
    const std::size_t length = static_cast<std::size_t>(zero_pad) * n_t;
    const std::size_t n_lags = n_t - 1;
    const std::size_t n_bins = length / 2 + 1;

    // X[k][l][f]
    std::vector<std::vector<std::complex<double>>> xf(c * c);
    std::vector<double> lagged(n_lags);
    for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t l = 0; l < c; ++l) {
            for (std::size_t m = 0; m < n_lags; ++m) {
                double acc = 0.0;
                for (std::size_t n = 0; n + m < n_t; ++n) {
                    acc += signals(static_cast<Eigen::Index>(n + m), static_cast<Eigen::Index>(k)) *
                           signals(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(l));
                }
                lagged[m] = acc;
            }
            xf[k * c + l] = dft(lagged, length);
        }
    }

    Spectrum sp;
    sp.omegas.resize(n_bins);
    sp.lambdas.resize(n_bins);
    Eigen::MatrixXcd x(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    for (std::size_t f = 0; f < n_bins; ++f) {
        for (std::size_t k = 0; k < c; ++k) {
            for (std::size_t l = 0; l < c; ++l) {
                x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = xf[k * c + l][f];
            }
        }
        sp.omegas[f] = 2.0 * std::numbers::pi * static_cast<double>(f) /
                       (static_cast<double>(length) * dt);
        if (c == 1) {
            sp.lambdas[f] = std::abs(x(0, 0));
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
            sp.lambdas[f] = svd.singularValues()(0);
        }
    }
    return sp;
}

std::vector<Peak> find_gap_peaks(const Spectrum &spectrum, int dc_exclude_bins,
                                 double min_prominence_fraction) {
    const auto &y = spectrum.lambdas;
    const std::size_t first = static_cast<std::size_t>(std::max(0, dc_exclude_bins)) + 1;
    if (y.size() <= first) {
        throw EmptySignalError("no spectral bins left after DC exclusion");
    }
    const std::size_t last = y.size() - 1;
    const double y_max = *std::max_element(y.begin() + static_cast<std::ptrdiff_t>(first), y.end());
    const double min_prominence = min_prominence_fraction * y_max;

    std::vector<Peak> peaks;
    if (!(y_max > 0.0)) {
        return peaks;
    }
    for (std::size_t i = first; i < last; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) {
            continue;
        }
        // Prominence: height above the higher of the two minima reached
        // before meeting a taller bin on either side.
        double left_min = y[i];
        for (std::size_t j = i; j-- > first;) {
            if (y[j] > y[i]) {
                break;
            }
            left_min = std::min(left_min, y[j]);
        }
        double right_min = y[i];
        for (std::size_t j = i + 1; j <= last; ++j) {
            if (y[j] > y[i]) {
                break;
            }
            right_min = std::min(right_min, y[j]);
        }
        const double prominence = y[i] - std::max(left_min, right_min);
        if (prominence < min_prominence) {
            continue;
        }
        double offset = 0.0;
        const double curvature = y[i - 1] - 2.0 * y[i] + y[i + 1];
        if (curvature < 0.0) {
            offset = std::clamp(0.5 * (y[i - 1] - y[i + 1]) / curvature, -0.5, 0.5);
        }
        peaks.push_back({(static_cast<double>(i) + offset) * spectrum.bin_width(), y[i], i});
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak &a, const Peak &b) { return a.lambda > b.lambda; });
    return peaks;
}

SpectroscopyResult analyze_series(const Eigen::MatrixXd &raw, double dt,
                                  const SpectroscopyOptions &options) {
    const int n_t = static_cast<int>(raw.cols());
    const int lags = options.lb_lags > 0 ? options.lb_lags : default_lb_lags(n_t);
    SpectroscopyResult out;
    out.data = standardize_and_filter(raw, options.keep_fraction, lags);
    out.signals = dominant_time_signals(out.data, std::min<int>(options.c, n_t));
    // Null-space directions of D^T D are arbitrary; keep only directions
    // carrying signal so the spectrum is a function of the data alone.
    const double top = out.signals.eigenvalues(0);
    Eigen::Index rank = 0;
    while (rank < out.signals.eigenvalues.size() && out.signals.eigenvalues(rank) > 1e-9 * top) {
        ++rank;
    }
    if (rank == 0) {
        throw EmptySignalError("time-correlation matrix is zero");
    }
    out.signals.eigenvalues.conservativeResize(rank);
    out.signals.vectors.conservativeResize(Eigen::NoChange, rank);
    out.spectrum = spectral_function(out.signals.vectors, dt, options.zero_pad);
    out.spectrum.peaks =
        find_gap_peaks(out.spectrum, options.dc_exclude_bins, options.min_prominence_fraction);
    return out;
}

void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum) {
    out << "omega,lambda\n";
    for (std::size_t f = 0; f < spectrum.omegas.size(); ++f) {
        out << format_double(spectrum.omegas[f]) << ',' << format_double(spectrum.lambdas[f]) << '\n';
    }
}

void write_peaks_json(std::ostream &out, const std::vector<Peak> &peaks) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &p : peaks) {
        j.push_back({{"omega", p.omega}, {"lambda", p.lambda}});
    }
    out << j.dump(2) << '\n';
}

} // namespace gapscope
