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
#include <numeric>
#include <stdexcept>
#include <string>

#include "cvnl/errors.hpp"

namespace cvnl {

void SpectralTrace::validate() const {
    if (freqs.empty()) {
        throw std::invalid_argument("trace '" + label + "' is empty");
    }
    if (freqs.size() != power_db.size()) {
        throw std::invalid_argument("trace '" + label + "': frequency and power columns differ in length");
    }
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (!std::isfinite(freqs[k]) || !std::isfinite(power_db[k])) {
            throw std::invalid_argument("trace '" + label + "': non-finite value at bin " + std::to_string(k));
        }
        if (k > 0 && !(freqs[k] > freqs[k - 1])) {
            throw std::invalid_argument("trace '" + label + "': frequencies not strictly increasing at bin " +
                                        std::to_string(k));
        }
    }
    if (!(rbw > 0.0) || !(vbw > 0.0)) {
        throw std::invalid_argument("trace '" + label + "': rbw and vbw must be > 0");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

SpectralTrace normalize_to_shot_noise(const SpectralTrace& signal, const SpectralTrace& floor) {
    signal.validate();
    floor.validate();
    if (signal.size() != floor.size()) {
        throw GridMismatchError("traces '" + signal.label + "' and '" + floor.label + "' have " +
                                std::to_string(signal.size()) + " and " + std::to_string(floor.size()) + " bins");
    }
    SpectralTrace out = signal;
    for (std::size_t k = 0; k < signal.size(); ++k) {
        const double scale = std::max(std::abs(signal.freqs[k]), 1.0);
        if (std::abs(signal.freqs[k] - floor.freqs[k]) > kGridMatchTolerance * scale) {
            throw GridMismatchError("traces '" + signal.label + "' and '" + floor.label +
                                    "' disagree at bin " + std::to_string(k));
        }
        out.power_db[k] = signal.power_db[k] - floor.power_db[k];
    }
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

std::vector<double> linear_levels(const SpectralTrace& trace) {
    std::vector<double> lin(trace.size());
    std::transform(trace.power_db.begin(), trace.power_db.end(), lin.begin(), db_to_linear);
    return lin;
}

}  // namespace

double floor_level(const SpectralTrace& trace) {
    trace.validate();
    return median_of(linear_levels(trace));
}

double mean_level(const SpectralTrace& trace) {
    trace.validate();
    const std::vector<double> lin = linear_levels(trace);
    return std::accumulate(lin.begin(), lin.end(), 0.0) / static_cast<double>(lin.size());
}

double signal_power(const SpectralTrace& trace, double sideband_hz) {
    trace.validate();
    const double half_bin = trace.size() > 1 ? 0.5 * (trace.freqs[1] - trace.freqs[0]) : 0.0;
    if (!(sideband_hz >= trace.freqs.front() - half_bin && sideband_hz <= trace.freqs.back() + half_bin)) {
        throw std::out_of_range("sideband " + std::to_string(sideband_hz) + " Hz lies outside trace '" +
                                trace.label + "'");
    }
    const auto it = std::lower_bound(trace.freqs.begin(), trace.freqs.end(), sideband_hz);
    std::size_t nearest = static_cast<std::size_t>(it - trace.freqs.begin());
    if (nearest == trace.size() ||
        (nearest > 0 && sideband_hz - trace.freqs[nearest - 1] < trace.freqs[nearest] - sideband_hz)) {
        --nearest;
    }

    const std::vector<double> lin = linear_levels(trace);
    const std::size_t lo = nearest >= kPeakSearchBins ? nearest - kPeakSearchBins : 0;
    const std::size_t hi = std::min(nearest + kPeakSearchBins, trace.size() - 1);
    std::size_t peak = lo;
    for (std::size_t k = lo + 1; k <= hi; ++k) {
        if (lin[k] > lin[peak]) {
            peak = k;
        }
    }
    const bool left_ok = peak == 0 || lin[peak] >= lin[peak - 1];
    const bool right_ok = peak + 1 == trace.size() || lin[peak] >= lin[peak + 1];

    const double median = median_of(lin);
    std::vector<double> dev(lin.size());
    std::transform(lin.begin(), lin.end(), dev.begin(), [median](double v) { return std::abs(v - median); });
    const double sigma = 1.4826 * median_of(dev);
    if (!left_ok || !right_ok || lin[peak] - median < kPeakProminence * sigma) {
        throw PeakNotFoundError("no peak near " + std::to_string(sideband_hz) + " Hz in trace '" + trace.label +
                                "' (level " + std::to_string(lin[peak]) + " SNU against a floor of " +
                                std::to_string(median) + ")");
    }
    return lin[peak];
}

double input_referred_added_noise(double s_est, double n_est, double s_ref) {
    if (!(s_est > 0.0) || !(s_ref > 0.0)) {
        throw std::invalid_argument("signal powers must be > 0");
    }
    if (!(n_est >= 0.0)) {
        throw std::invalid_argument("noise power must be >= 0");
    }
    return n_est * s_ref / s_est;
}

double fidelity_from_added_noise(const AddedNoise& noise) {
    if (!(noise.delta_x >= 0.0) || !(noise.delta_p >= 0.0)) {
        throw std::invalid_argument("added noise must be >= 0");
    }
    return 2.0 / std::sqrt((2.0 + noise.delta_x) * (2.0 + noise.delta_p));
}

double snr_gain_db(double s_est, double s_ref) {
    if (!(s_est > 0.0) || !(s_ref > 0.0)) {
        throw std::invalid_argument("snr_gain_db needs positive powers");
    }
    return 10.0 * std::log10(s_est / s_ref);
}

SpectralTrace synth_trace(double peak_snu, double sideband_hz, double floor_snu, double span_hz, std::size_t bins,
                          Rng& rng, double rbw_hz, double vbw_hz) {
    if (!(floor_snu > 0.0) || !(peak_snu >= floor_snu)) {
        throw std::invalid_argument("synth_trace needs peak >= floor > 0");
    }
    if (bins < 3 || bins % 2 == 0) {
        throw std::invalid_argument("synth_trace needs an odd bin count >= 3");
    }
    if (!(span_hz > 0.0) || !(sideband_hz - span_hz / 2 > 0.0)) {
        throw std::invalid_argument("synth_trace span must be > 0 and stay at positive frequencies");
    }
    if (!(rbw_hz > 0.0) || !(vbw_hz > 0.0)) {
        throw std::invalid_argument("synth_trace bandwidths must be > 0");
    }
    SpectralTrace t;
    t.rbw = rbw_hz;
    t.vbw = vbw_hz;
    t.freqs.resize(bins);
    t.power_db.resize(bins);
    const std::size_t centre = bins / 2;
    const double step = span_hz / static_cast<double>(bins - 1);
    const double shape = 4.0 * std::log(2.0) / (rbw_hz * rbw_hz);
    for (std::size_t k = 0; k < bins; ++k) {
        const double offset = (static_cast<double>(k) - static_cast<double>(centre)) * step;
        t.freqs[k] = sideband_hz + offset;
        const double level = floor_snu + (peak_snu - floor_snu) * std::exp(-shape * offset * offset);
        t.power_db[k] = linear_to_db(level * (1.0 + kSynthJitter * rng.normal()));
    }
    return t;
}

QuadratureAnalysis analyze_quadrature(const SpectralTrace& reference, const SpectralTrace& estimate,
                                      const SpectralTrace& noise, double sideband_hz) {
    QuadratureAnalysis q;
    q.s_ref = signal_power(reference, sideband_hz) - floor_level(reference);
    q.s_est = signal_power(estimate, sideband_hz) - floor_level(estimate);
    q.n_est = mean_level(noise);
    q.delta = input_referred_added_noise(q.s_est, q.n_est, q.s_ref);
    return q;
}

SpectraReport analyze_spectra(const QuadratureAnalysis& x, const QuadratureAnalysis& p) {
    SpectraReport r;
    r.noise = {x.delta, p.delta};
    r.fidelity = fidelity_from_added_noise(r.noise);
    r.snr_gain_db = snr_gain_db(x.s_est, x.s_ref);
    r.snr_gain_db_p = snr_gain_db(p.s_est, p.s_ref);
    return r;
}

}  // namespace cvnl
