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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gapscope/error.hpp"
#include "gapscope/spectroscopy.hpp"

using namespace gapscope;
using std::numbers::pi;

namespace {

double gaussian(RandomStream &rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

Eigen::MatrixXd cosine_signals(int n_t, double dt, double omega, int c) {
    Eigen::MatrixXd v(n_t, c);
    for (int k = 0; k < c; ++k) {
        for (int n = 0; n < n_t; ++n) {
            v(n, k) = std::cos(omega * n * dt + 0.4 * k);
        }
        v.col(k).normalize();
    }
    return v;
}

} // namespace

TEST_CASE("chi-squared survival against reference values") {
    CHECK(chi2_sf(3.0, 2) == doctest::Approx(0.22313016014842982).epsilon(1e-13));
    CHECK(chi2_sf(10.0, 5) == doctest::Approx(0.07523524614651217).epsilon(1e-13));
    CHECK(chi2_sf(0.5, 1) == doctest::Approx(0.47950012218695337).epsilon(1e-13));
    CHECK(chi2_sf(25.0, 10) == doctest::Approx(0.005345505487134069).epsilon(1e-12));
    CHECK(chi2_sf(100.0, 10) == doctest::Approx(5.4497019829205215e-17).epsilon(1e-10));
    CHECK(chi2_sf(0.0, 3) == 1.0);
    CHECK_THROWS_AS(chi2_sf(1.0, 0.0), DomainError);
}

TEST_CASE("ljung-box against a reference implementation") {
    std::vector<double> s;
    for (int n = 0; n < 40; ++n) {
        s.push_back(std::sin(0.7 * n) + 0.1 * ((n * 37) % 11 - 5));
    }
    const auto lb = ljung_box(s, 8);
    CHECK(lb.q == doctest::Approx(91.72749856048706).epsilon(1e-12));
    CHECK(lb.p_value == doctest::Approx(2.0729454550826918e-16).epsilon(1e-8));
    CHECK_THROWS_AS(ljung_box(s, 0), DomainError);
    CHECK_THROWS_AS(ljung_box(s, 40), DomainError);
    CHECK(default_lb_lags(90) == 10);
    CHECK(default_lb_lags(30) == 6);
    CHECK(default_lb_lags(4) == 1);
}

TEST_CASE("ljung-box p-values are calibrated under white noise") {
    auto rng = RandomStream::derive(31, {});
    std::vector<double> p;
    for (int r = 0; r < 1000; ++r) {
        std::vector<double> s(200);
        for (auto &x : s) {
            x = gaussian(rng);
        }
        const auto lb = ljung_box(s, 10);
        CHECK(lb.q >= 0.0);
        p.push_back(lb.p_value);
    }
    std::sort(p.begin(), p.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        ks = std::max({ks, std::abs(p[i] - double(i) / p.size()),
                       std::abs(p[i] - double(i + 1) / p.size())});
    }
    CHECK(ks < 0.1);
}

TEST_CASE("standardization") {
    Eigen::MatrixXd raw(3, 10);
    for (int n = 0; n < 10; ++n) {
        raw(0, n) = 5.0 + 2.0 * std::sin(n);
        raw(1, n) = 7.0; // constant
        raw(2, n) = 1e6 * n;
    }
    const auto d = standardize(raw);
    REQUIRE(d.rows == std::vector<std::size_t>{0, 2});
    for (int i = 0; i < 2; ++i) {
        const Eigen::VectorXd row = d.values.row(i);
        CHECK(std::abs(row.mean()) < 1e-10);
        CHECK(std::abs(std::sqrt(row.squaredNorm() / 10) - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(standardize(Eigen::MatrixXd::Constant(2, 10, 3.0)), EmptySignalError);
}

TEST_CASE("ljung-box filter keeps oscillating rows") {
    auto rng = RandomStream::derive(32, {});
    const int n_t = 60;
    Eigen::MatrixXd raw(20, n_t);
    for (int i = 0; i < 20; ++i) {
        for (int n = 0; n < n_t; ++n) {
            raw(i, n) = i % 2 == 0 ? std::cos(0.9 * n + i) : gaussian(rng);
        }
    }
    const auto d = standardize_and_filter(raw, 0.5, 10);
    REQUIRE(d.rows.size() == 10);
    for (auto r : d.rows) {
        CHECK(r % 2 == 0);
    }
    for (const auto &t : d.tests) {
        CHECK(t.p_value < 1e-6);
    }
    const auto all = standardize_and_filter(raw, 1.0, 10);
    CHECK(all.rows.size() == 20);
    CHECK(standardize_and_filter(raw, 0.01, 10).rows.size() == 1);
    CHECK_THROWS_AS(standardize_and_filter(raw.leftCols(7), 0.5, 3), DomainError);
    CHECK_THROWS_AS(standardize_and_filter(raw, 0.0, 3), DomainError);
}

TEST_CASE("dominant signals of a rank-one matrix") {
    const int n_t = 30;
    Eigen::MatrixXd raw(4, n_t);
    for (int i = 0; i < 4; ++i) {
        for (int n = 0; n < n_t; ++n) {
            raw(i, n) = (i + 1) * std::sin(0.5 * n);
        }
    }
    const auto d = standardize(raw);
    const auto sig = dominant_time_signals(d, 3);
    CHECK(sig.eigenvalues(0) == doctest::Approx(4.0 * n_t));
    CHECK(std::abs(sig.eigenvalues(1)) < 1e-9);
    CHECK(sig.eigenvalues(2) >= -1e-10);
    const Eigen::VectorXd row = d.values.row(0).transpose().normalized();
    CHECK(std::abs(std::abs(row.dot(sig.vectors.col(0))) - 1.0) < 1e-10);
    Eigen::Index arg = 0;
    sig.vectors.col(0).cwiseAbs().maxCoeff(&arg);
    CHECK(sig.vectors(arg, 0) > 0.0);
    CHECK_THROWS_AS(dominant_time_signals(d, 0), DomainError);
    CHECK_THROWS_AS(dominant_time_signals(d, n_t + 1), DomainError);
}

TEST_CASE("direct dft against the definition") {
    std::vector<double> x = {1.0, -2.0, 0.5, 3.0};
    const auto f = dft(x, 8);
    for (std::size_t k = 0; k < 8; ++k) {
        std::complex<double> ref = 0.0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            ref += x[m] * std::polar(1.0, -2.0 * pi * double(k * m) / 8.0);
        }
        CHECK(std::abs(f[k] - ref) < 1e-12);
    }
    std::vector<double> big(512);
    auto rng = RandomStream::derive(33, {});
    for (auto &v : big) {
        v = rng.uniform();
    }
    const auto g = dft(big, 1024);
    for (std::size_t k : {0u, 1u, 77u, 512u, 1023u}) {
        std::complex<double> ref = 0.0;
        for (std::size_t m = 0; m < big.size(); ++m) {
            ref += big[m] * std::polar(1.0, -2.0 * pi * double((k * m) % 1024) / 1024.0);
        }
        CHECK(std::abs(g[k] - ref) < 1e-10);
    }
}

TEST_CASE("spectrum of a cosine peaks at its frequency") {
    const int n_t = 60;
    const double dt = 0.1;
    const double omega = 4.0;
    const auto sp = spectral_function(cosine_signals(n_t, dt, omega, 1), dt, 4);
    CHECK(sp.omegas.size() == 4 * n_t / 2 + 1);
    CHECK(sp.omegas[0] == 0.0);
    CHECK(sp.bin_width() == doctest::Approx(2 * pi / (4 * n_t * dt)));
    CHECK(sp.omegas.back() == doctest::Approx(pi / dt));
    const auto peaks = find_gap_peaks(sp, 2, 0.2);
    REQUIRE_FALSE(peaks.empty());
    CHECK(std::abs(peaks.front().omega - omega) < 0.5 * sp.bin_width());
    CHECK(peaks.front().bin == sp.nearest_bin(omega));
}

TEST_CASE("spectrum invariances") {
    const int n_t = 40;
    const double dt = 0.2;
    Eigen::MatrixXd v = cosine_signals(n_t, dt, 2.0, 3);
    v.col(2) = cosine_signals(n_t, dt, 5.0, 1).col(0);
    const auto a = spectral_function(v, dt, 4);
    Eigen::MatrixXd flipped = v;
    flipped.col(1) *= -1.0;
    flipped.col(0).swap(flipped.col(2));
    const auto b = spectral_function(flipped, dt, 4);
    for (std::size_t f = 0; f < a.lambdas.size(); ++f) {
        CHECK(std::abs(a.lambdas[f] - b.lambdas[f]) < 1e-10);
    }
    const auto zero = spectral_function(Eigen::MatrixXd::Zero(n_t, 2), dt, 2);
    for (double l : zero.lambdas) {
        CHECK(l == 0.0);
    }
    CHECK(find_gap_peaks(zero, 2, 0.2).empty());
}

TEST_CASE("peak finder") {
    Spectrum sp;
    for (int f = 0; f < 20; ++f) {
        sp.omegas.push_back(0.5 * f);
        sp.lambdas.push_back(1.0);
    }
    CHECK(find_gap_peaks(sp, 2, 0.2).empty());
    sp.lambdas[0] = 100.0; // DC spike is excluded
    sp.lambdas[8] = 3.0;
    sp.lambdas[9] = 5.0;
    sp.lambdas[10] = 3.0;
    sp.lambdas[15] = 1.1; // too small to count
    const auto peaks = find_gap_peaks(sp, 2, 0.2);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].bin == 9);
    CHECK(peaks[0].omega == doctest::Approx(4.5));
    CHECK(peaks[0].lambda == 5.0);
    sp.lambdas[10] = 4.0; // asymmetric shoulder pulls the estimate right
    CHECK(find_gap_peaks(sp, 2, 0.2)[0].omega > 4.5);
    CHECK_THROWS_AS(find_gap_peaks(sp, 25, 0.2), EmptySignalError);
}

TEST_CASE("scaling the raw series leaves the spectrum unchanged") {
    auto rng = RandomStream::derive(34, {});
    const int n_t = 50;
    Eigen::MatrixXd raw(30, n_t);
    for (int i = 0; i < 30; ++i) {
        for (int n = 0; n < n_t; ++n) {
            raw(i, n) = (i < 8 ? std::cos(2.5 * n * 0.1 + i) : 0.0) + 0.5 * gaussian(rng);
        }
    }
    const auto a = analyze_series(raw, 0.1, {});
    const auto b = analyze_series(raw * 37.5, 0.1, {});
    REQUIRE(a.spectrum.lambdas.size() == b.spectrum.lambdas.size());
    for (std::size_t f = 0; f < a.spectrum.lambdas.size(); ++f) {
        CHECK(std::abs(a.spectrum.lambdas[f] - b.spectrum.lambdas[f]) < 1e-9);
    }
    REQUIRE(a.spectrum.peaks.size() == b.spectrum.peaks.size());
    CHECK(a.spectrum.peaks[0].omega == doctest::Approx(b.spectrum.peaks[0].omega));
}

TEST_CASE("injected oscillations are recovered up to the Nyquist frequency") {
    auto rng = RandomStream::derive(35, {});
    const int n_t = 64;
    const double dt = 0.1;
    for (double omega : {1.5, 7.0, 15.0, 29.0}) {
        Eigen::MatrixXd raw(20, n_t);
        for (int i = 0; i < 20; ++i) {
            for (int n = 0; n < n_t; ++n) {
                raw(i, n) = (i < 5 ? std::cos(omega * n * dt + i) : 0.0) + 0.2 * gaussian(rng);
            }
        }
        SpectroscopyOptions opt;
        opt.keep_fraction = 0.25;
        const auto r = analyze_series(raw, dt, opt);
        REQUIRE_FALSE(r.spectrum.peaks.empty());
        CHECK(std::abs(r.spectrum.peaks.front().omega - omega) < 0.5 * r.spectrum.bin_width());
    }
}

TEST_CASE("time series from snapshots") {
    SnapshotMetadata meta;
    meta.n_qubits = 2;
    meta.n_t = 2;
    meta.m = 2;
    meta.n_s = 1;
    meta.dt = 0.1;
    std::vector<SnapshotRecord> rs = {
        {1, 2.0, PauliString::parse("ZX"), 0b00},
        {1, -2.0, PauliString::parse("ZZ"), 0b01},
        {2, 1.0, PauliString::parse("XY"), 0b10},
        {2, 1.0, PauliString::parse("XY"), 0b11},
    };
    const SnapshotSet set(meta, rs);
    const std::vector<PauliString> obs = {PauliString::parse("ZI"), PauliString::parse("ZZ"),
                                          PauliString::parse("XY"), PauliString::parse("IY"),
                                          PauliString::parse("II"), PauliString::parse("ZI")};
    const auto m = build_time_series(set, obs);
    REQUIRE(m.rows() == 6);
    REQUIRE(m.cols() == 2);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (int s = 1; s <= 2; ++s) {
            CHECK(m(static_cast<Eigen::Index>(i), s - 1) ==
                  doctest::Approx(estimate_observable(set.at_time(s), obs[i])));
        }
    }
    CHECK(m(0, 0) == doctest::Approx((6.0 + 6.0) / 2));
    const std::vector<PauliString> wrong = {PauliString::parse("Z")};
    CHECK_THROWS_AS(build_time_series(set, wrong), DomainError);
}

TEST_CASE("csv and json writers") {
    Spectrum sp;
    sp.omegas = {0.0, 0.5};
    sp.lambdas = {1.0, 0.25};
    std::ostringstream csv;
    write_spectrum_csv(csv, sp);
    CHECK(csv.str() == "omega,lambda\n0,1\n0.5,0.25\n");
    std::ostringstream js;
    write_peaks_json(js, {{0.5, 0.25, 1}});
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j[0]["omega"] == 0.5);
    CHECK(j[0]["lambda"] == 0.25);
}
