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

#include <cstddef>
#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gapscope/pauli.hpp"
#include "gapscope/shadows.hpp"

namespace gapscope {

/**
 * Raw series S_i(n): row i is the estimate of observables[i] at time
 * index n + 1.
 *
 * One pass over the records. Observables are grouped by support, so a
 * record costs O(sum of group weights) no matter how many observables share
 * a support.
 */
Eigen::MatrixXd build_time_series(const SnapshotSet &snapshots,
                                  std::span<const PauliString> observables);

/// Upper tail of the chi-squared distribution, P(X > x), with `dof` degrees
/// of freedom.
double chi2_sf(double x, double dof);

struct LjungBox {
    double q = 0.0;
    double p_value = 1.0;
};

/// Q = n (n + 2) sum_{k=1}^{h} r_k^2 / (n - k) on the mean-removed series,
/// p from chi-squared with h degrees of freedom. Throws DomainError unless
/// 1 <= h < n.
LjungBox ljung_box(std::span<const double> series, int lags);

/// Default lag count min(10, floor(n_t / 5)), at least 1.
int default_lb_lags(int n_t);

struct DataMatrix {
    std::vector<std::size_t> rows; ///< indices into the raw matrix
    Eigen::MatrixXd values;        ///< one row per kept observable
    std::vector<LjungBox> tests;   ///< aligned with rows; empty if not filtered
    bool standardized = false;
};

/// Drops rows with population std below 1e-12 and rescales the rest to
/// mean 0, population std 1. Throws EmptySignalError if no row survives.
DataMatrix standardize(const Eigen::MatrixXd &raw);

/**
 * Standardizes, ranks rows by Ljung-Box p-value (ties: larger Q first,
 * then lower index) and keeps ceil(keep_fraction * rows) of them.
 *
 * Throws DomainError if there are fewer than 8 time points or keep_fraction
 * is outside (0, 1]; EmptySignalError if every row is constant.
 */
DataMatrix standardize_and_filter(const Eigen::MatrixXd &raw, double keep_fraction, int lb_lags);

struct DominantSignals {
    Eigen::VectorXd eigenvalues; ///< descending
    Eigen::MatrixXd vectors;     ///< N_t x c, unit columns
};

/// Top-c eigenvectors of the time-correlation matrix D^T D. The sign of each
/// vector is fixed so its largest-magnitude entry is positive.
/// Throws DomainError unless 1 <= c <= N_t.
DominantSignals dominant_time_signals(const DataMatrix &d, int c);

/// X(f) = sum_{m < L} x(m) exp(-2 pi i f m / L) for f = 0..L-1, computed
/// directly from a twiddle table.
std::vector<std::complex<double>> dft(std::span<const double> x, std::size_t length);

struct Peak {
    double omega = 0.0;  ///< refined by parabolic interpolation
    double lambda = 0.0; ///< lambda at the peak bin
    std::size_t bin = 0;
};

struct Spectrum {
    std::vector<double> omegas;  ///< 2 pi f / (L dt), f = 0..L/2
    std::vector<double> lambdas;
    std::vector<Peak> peaks;

    double bin_width() const { return omegas.size() > 1 ? omegas[1] - omegas[0] : 0.0; }
    /// Index of the bin nearest omega.
    std::size_t nearest_bin(double omega) const;
};

/**
 * Cross-correlations x_kl(m) = sum_n v_k(n + m) v_l(n) for lags
 * m = 0..N_t-2, zero-padded to L = zero_pad N_t and transformed. lambda(f)
 * is the largest singular value of the c x c matrix X(f).
 */
Spectrum spectral_function(const Eigen::MatrixXd &signals, double dt, int zero_pad);

/// Local maxima of lambda above bin dc_exclude_bins whose prominence is at
/// least min_prominence_fraction times the largest lambda past the excluded
/// bins, sorted by descending lambda. Throws EmptySignalError if no bins
/// remain after exclusion.
std::vector<Peak> find_gap_peaks(const Spectrum &spectrum, int dc_exclude_bins,
                                 double min_prominence_fraction);

struct SpectroscopyOptions {
    double keep_fraction = 0.10;
    int lb_lags = 0; ///< 0 = default_lb_lags(N_t)
    int c = 5;
    int zero_pad = 4;
    int dc_exclude_bins = 2;
    double min_prominence_fraction = 0.2;
};

struct SpectroscopyResult {
    DataMatrix data;
    DominantSignals signals;
    Spectrum spectrum; ///< peaks filled in
};

/// Full pipeline from a raw series matrix. c is capped at N_t, and
/// dominant directions with eigenvalue below 1e-9 of the largest (fewer
/// kept rows than c) are dropped before the spectral step.
SpectroscopyResult analyze_series(const Eigen::MatrixXd &raw, double dt,
                                  const SpectroscopyOptions &options);

/// "omega,lambda" header, one row per bin.
void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum);
/// [{"omega": ..., "lambda": ...}, ...]
void write_peaks_json(std::ostream &out, const std::vector<Peak> &peaks);

} // namespace gapscope
