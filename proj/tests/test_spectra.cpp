// Copyright 2026 The cvnl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvnl/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"

#include "cvnl/errors.hpp"
#include "cvnl/sampling.hpp"
#include "cvnl/strategies.hpp"

using namespace cvnl;

namespace {

SpectralTrace flat(double db, std::size_t bins = 21, double f0 = 1e6, double step = 1e4) {
    SpectralTrace t;
    t.label = "flat";
    for (std::size_t k = 0; k < bins; k++) {
        t.freqs.push_back(f0 + k * step);
        t.power_db.push_back(db);
    }
    return t;
}

}  // namespace

TEST(spectra, validate) {
    SpectralTrace t = flat(0);
    EXPECT_NO_THROW(t.validate());
    t.freqs[3] = t.freqs[2];
    EXPECT_THROW(t.validate(), std::invalid_argument);
    t = flat(0);
    t.rbw = 0;
    EXPECT_THROW(t.validate(), std::invalid_argument);
    t = flat(0);
    t.power_db.pop_back();
    EXPECT_THROW(t.validate(), std::invalid_argument);
    EXPECT_THROW(SpectralTrace{}.validate(), std::invalid_argument);
}

TEST(spectra, normalize_examples) {
    SpectralTrace a = flat(-70.0);
    SpectralTrace z = normalize_to_shot_noise(a, a);
    for (double v : z.power_db) {
        EXPECT_EQ(v, 0.0);
    }
    SpectralTrace s = flat(-67.0);
    for (double v : normalize_to_shot_noise(s, a).power_db) {
        EXPECT_NEAR(v, 3.0, 1e-12);
    }
}

TEST(spectra, normalize_grid_mismatch) {
    EXPECT_THROW(normalize_to_shot_noise(flat(0, 21), flat(0, 20)), GridMismatchError);
    EXPECT_THROW(normalize_to_shot_noise(flat(0, 21, 1e6), flat(0, 21, 1e6 + 1)), GridMismatchError);
}

TEST(spectra, normalize_synthetic_round_trip) {
    Rng rng(41);
    for (double peak : {2.0, 10.0, 40.0}) {
        SpectralTrace sig = synth_trace(peak, 5e6, 1.0, 2e6, 401, rng);
        SpectralTrace shot = synth_trace(1.0, 5e6, 1.0, 2e6, 401, rng);
        SpectralTrace norm = normalize_to_shot_noise(sig, shot);
        EXPECT_NEAR(norm.power_db[200], linear_to_db(peak), 0.05);
        std::vector<double> wing(norm.power_db.begin(), norm.power_db.begin() + 100);
        std::nth_element(wing.begin(), wing.begin() + 50, wing.end());
        EXPECT_NEAR(wing[50], 0.0, 0.05);
    }
}

TEST(spectra, signal_power_examples) {
    EXPECT_EQ(signal_power(flat(0), 1.1e6), 1.0);
    SpectralTrace t = flat(0);
    t.power_db[10] = 6.02;
    EXPECT_NEAR(signal_power(t, 1.1e6), 4.0, 0.01);
    // The peak may sit a couple of bins off the requested frequency.
    EXPECT_NEAR(signal_power(t, 1.1e6 + 2e4), 4.0, 0.01);
    // window tops out on the shoulder of a peak beyond its reach
    SpectralTrace edge = flat(0);
    edge.power_db[18] = 3;
    edge.power_db[19] = 6;
    EXPECT_THROW(signal_power(edge, 1.15e6), PeakNotFoundError);
    EXPECT_NEAR(signal_power(edge, 1.17e6), std::pow(10, 0.6), 1e-12);
    EXPECT_THROW(signal_power(t, 0.5e6), std::out_of_range);
    EXPECT_THROW(signal_power(t, 2e6), std::out_of_range);
}

TEST(spectra, signal_power_synthetic) {
    Rng rng(42);
    EXPECT_NEAR(signal_power(synth_trace(10, 5e6, 1, 2e6, 401, rng), 5e6), 10, 0.2);
    EXPECT_NEAR(signal_power(synth_trace(4, 5e6, 1, 2e6, 401, rng), 5e6), 4, 0.08);
    for (int k = 0; k < 20; k++) {
        EXPECT_THROW(signal_power(synth_trace(1, 5e6, 1, 2e6, 401, rng), 5e6), PeakNotFoundError);
    }
}

TEST(spectra, synthetic_gain) {
    Rng rng(43);
    double s_ref = signal_power(synth_trace(11, 5e6, 1, 2e6, 401, rng), 5e6) - 1;
    double s_est = signal_power(synth_trace(21, 5e6, 1, 2e6, 401, rng), 5e6) - 1;
    EXPECT_NEAR(snr_gain_db(s_est, s_ref), 3.0103, 0.1);
}

TEST(spectra, synth_deterministic_and_validated) {
    Rng a(7), b(7);
    SpectralTrace x = synth_trace(5, 5e6, 1, 2e6, 101, a), y = synth_trace(5, 5e6, 1, 2e6, 101, b);
    EXPECT_EQ(x.power_db, y.power_db);
    EXPECT_EQ(x.freqs[50], 5e6);
    EXPECT_THROW(synth_trace(5, 5e6, 1, 2e6, 100, a), std::invalid_argument);
    EXPECT_THROW(synth_trace(5, 5e6, 1, 2e6, 1, a), std::invalid_argument);
    EXPECT_THROW(synth_trace(0.5, 5e6, 1, 2e6, 101, a), std::invalid_argument);
    EXPECT_THROW(synth_trace(5, 5e6, 0, 2e6, 101, a), std::invalid_argument);
    EXPECT_THROW(synth_trace(5, 5e6, 1, -1, 101, a), std::invalid_argument);
    EXPECT_THROW(synth_trace(5, 5e6, 1, 2e7, 101, a), std::invalid_argument);
}

TEST(spectra, added_noise_examples) {
    EXPECT_DOUBLE_EQ(input_referred_added_noise(2, 1, 1), 0.5);
    EXPECT_DOUBLE_EQ(input_referred_added_noise(1, 1, 1), 1.0);
    EXPECT_EQ(input_referred_added_noise(3, 0, 1), 0.0);
    EXPECT_THROW(input_referred_added_noise(0, 1, 1), std::invalid_argument);
    EXPECT_THROW(input_referred_added_noise(1, 1, -1), std::invalid_argument);
    EXPECT_THROW(input_referred_added_noise(1, -1, 1), std::invalid_argument);
}

TEST(spectra, fidelity_examples) {
    EXPECT_NEAR(fidelity_from_added_noise({1.12, 1.12}), 0.641, 0.0005);
    EXPECT_NEAR(fidelity_from_added_noise({0.51, 0.52}), 0.795, 0.0005);
    EXPECT_EQ(fidelity_from_added_noise({0, 0}), 1.0);
    EXPECT_THROW(fidelity_from_added_noise({-0.1, 0}), std::invalid_argument);
    EXPECT_THROW(fidelity_from_added_noise({0, -0.1}), std::invalid_argument);
}

TEST(spectra, fidelity_monotone) {
    for (double a = 0; a < 5; a += 0.25) {
        for (double b = 0; b < 5; b += 0.25) {
            double f = fidelity_from_added_noise({a, b});
            ASSERT_GT(f, fidelity_from_added_noise({a + 0.01, b}));
            ASSERT_GT(f, fidelity_from_added_noise({a, b + 0.01}));
            ASSERT_GT(f, 0);
            ASSERT_LE(f, 1);
        }
    }
}

TEST(spectra, snr_gain_examples) {
    EXPECT_NEAR(snr_gain_db(2, 1), 3.0103, 1e-4);
    EXPECT_EQ(snr_gain_db(1, 1), 0.0);
    EXPECT_NEAR(db_to_linear(3.0), 1.995, 0.01);
    EXPECT_NEAR(db_to_linear(2.9), 1.950, 0.01);
    EXPECT_THROW(snr_gain_db(0, 1), std::invalid_argument);
    EXPECT_THROW(snr_gain_db(1, 0), std::invalid_argument);
}

TEST(spectra, consistency_with_bounds) {
    EXPECT_DOUBLE_EQ(fidelity_from_added_noise({1, 1}), local_fidelity_bound(2, 0));
    EXPECT_DOUBLE_EQ(fidelity_from_added_noise({0.5, 0.5}), nonlocal_fidelity_bound(2, 0));
}

TEST(spectra, unit_bridge_from_sampled_estimates) {
    // Delta in SNU is the estimate's quadrature error variance over the vacuum's 1/2.
    Rng rng(44);
    Amplitude a{0.4, -0.2};
    const int n = 400000;
    double local_x = 0, nonlocal_x = 0;
    bool flags[] = {false, true};
    for (int k = 0; k < n; k++) {
        HeterodyneOutcome o[] = {heterodyne(a, rng), heterodyne(conjugate(a), rng)};
        Amplitude e = local_estimate(o, flags, 0);
        local_x += std::pow(quadratures(e).x - quadratures(a).x, 2);
        Amplitude f = nonlocal_estimate(joint_epr_measure(a, conjugate(a), rng), 2, 0);
        nonlocal_x += std::pow(quadratures(f).x - quadratures(a).x, 2);
    }
    EXPECT_NEAR(local_x / n / 0.5, 1.0, 0.01);
    EXPECT_NEAR(nonlocal_x / n / 0.5, 0.5, 0.005);
}

TEST(spectra, pipeline_identity) {
    Rng rng(45);
    for (double target = 0.5; target <= 0.95 + 1e-9; target += 0.05) {
        double delta = 2 / target - 2;
        double gain = 0.5 + 2.5 * rng.uniform();
        double s_ref = 20;
        SpectralTrace shot = synth_trace(1, 5e6, 1, 2e6, 401, rng);
        auto norm = [&](SpectralTrace t) { return normalize_to_shot_noise(t, shot); };
        SpectralTrace ref = norm(synth_trace(1 + s_ref, 5e6, 1, 2e6, 401, rng));
        double n_est = delta * gain;
        SpectralTrace est = norm(synth_trace(n_est + gain * s_ref, 5e6, n_est, 2e6, 401, rng));
        SpectralTrace noise = norm(synth_trace(n_est, 5e6, n_est, 2e6, 401, rng));
        QuadratureAnalysis q = analyze_quadrature(ref, est, noise, 5e6);
        SpectraReport r = analyze_spectra(q, q);
        EXPECT_NEAR(r.fidelity, target, 0.01 * target) << target;
        EXPECT_NEAR(q.delta, delta, 0.03 * delta + 0.01);
    }
}
