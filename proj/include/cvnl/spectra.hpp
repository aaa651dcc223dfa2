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

#pragma once

#include <string>
#include <vector>

#include "cvnl/rng.hpp"

// Shot-noise-normalised spectrum analysis. Traces are stored in dB; every
// arithmetic step converts to linear shot-noise units (SNU, vacuum = 1) first.
//
// Unit bridge: an added noise of Delta SNU is a quadrature variance of Delta/2
// in the vacuum-variance-1/2 convention used everywhere else.
namespace cvnl {

struct SpectralTrace {
    std::vector<double> freqs;     // Hz, strictly increasing
    std::vector<double> power_db;  // one value per frequency
    double rbw = 100e3;            // resolution bandwidth, Hz
    double vbw = 30.0;             // video bandwidth, Hz
    std::string label;

    std::size_t size() const { return freqs.size(); }
    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

struct AddedNoise {
    double delta_x = 0.0;  // SNU
    double delta_p = 0.0;  // SNU
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Relative frequency mismatch tolerated between two grids.
inline constexpr double kGridMatchTolerance = 1e-9;

/// Per-bin signal minus floor in dB. Throws GridMismatchError.
SpectralTrace normalize_to_shot_noise(const SpectralTrace& signal, const SpectralTrace& floor);

/// Half-width of the window searched around the sideband bin.
inline constexpr std::size_t kPeakSearchBins = 3;
/// Required peak prominence over the trace median, in robust standard deviations.
inline constexpr double kPeakProminence = 6.0;

/// Linear power of the peak nearest `sideband_hz`. The peak is the maximum
/// within +-kPeakSearchBins of the nearest bin; it must be a local maximum and
/// stand kPeakProminence robust deviations (1.4826 MAD) above the trace
/// median. Throws std::out_of_range outside the grid and PeakNotFoundError.
double signal_power(const SpectralTrace& trace, double sideband_hz);

/// Median linear level of a trace (its noise floor when the peak is narrow).
double floor_level(const SpectralTrace& trace);

/// Mean linear level of a trace.
double mean_level(const SpectralTrace& trace);

/// Delta = n_est / G with G = s_est / s_ref.
double input_referred_added_noise(double s_est, double n_est, double s_ref);

/// F = 2 / sqrt((2 + Delta_x)(2 + Delta_p)) for a flat prior.
double fidelity_from_added_noise(const AddedNoise& noise);

/// 10 log10(s_est / s_ref).
double snr_gain_db(double s_est, double s_ref);

/// Relative size of the multiplicative jitter applied by synth_trace.
inline constexpr double kSynthJitter = 0.002;

/// Flat floor plus a Gaussian peak of full width rbw at `sideband_hz`:
///   level(f) = (floor + (peak - floor) exp(-4 ln2 (f - f0)^2 / rbw^2)) (1 + kSynthJitter z)
/// with z standard normal per bin. `bins` (odd, >= 3) points span
/// [f0 - span/2, f0 + span/2], so one bin sits on the sideband.
SpectralTrace synth_trace(double peak_snu, double sideband_hz, double floor_snu, double span_hz, std::size_t bins,
                          Rng& rng, double rbw_hz = 100e3, double vbw_hz = 30.0);

/// Input-referred analysis of one quadrature from normalised traces.
struct QuadratureAnalysis {
    double s_ref = 0.0;
    double s_est = 0.0;
    double n_est = 0.0;
    double delta = 0.0;
};

/// s_ref and s_est are peak minus median floor, n_est is the mean level of the
/// signal-free estimate trace.
QuadratureAnalysis analyze_quadrature(const SpectralTrace& reference, const SpectralTrace& estimate,
                                      const SpectralTrace& noise, double sideband_hz);

struct SpectraReport {
    AddedNoise noise;
    double fidelity = 0.0;
    double snr_gain_db = 0.0;    // amplitude quadrature
    double snr_gain_db_p = 0.0;  // phase quadrature
};

SpectraReport analyze_spectra(const QuadratureAnalysis& x, const QuadratureAnalysis& p);

}  // namespace cvnl
