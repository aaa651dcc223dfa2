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

// Writes the synthetic spectrum-analyzer fixtures under tests/fixtures/spectra.
//
// Each quadrature gets three traces: the input signal alone (reference), the
// strategy output (estimate) and the strategy output with the modulation off
// (noise). All levels are in shot-noise units before an absolute offset is
// added, and the shot-noise trace carries the same offset.
//
// usage: make_spectra_fixtures <out_dir> [seed]

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "cvnl/rng.hpp"
#include "cvnl/spectra.hpp"
#include "cvnl/trace_io.hpp"

namespace fs = std::filesystem;
using namespace cvnl;

namespace {

constexpr double kSidebandHz = 5e6;
constexpr double kSpanHz = 2e6;
constexpr std::size_t kBins = 401;
constexpr double kOffsetDb = -72.0;  // analyzer reading of the shot-noise level
constexpr double kReferenceSnu = 20.0;

struct QuadratureSetup {
    double gain;   // s_est / s_ref
    double noise;  // output noise level, SNU
};

void write_offset(const fs::path& path, SpectralTrace t, const std::string& label) {
    for (double& p : t.power_db) {
        p += kOffsetDb;
    }
    t.label = label;
    write_trace(path, t);
}

void write_quadrature(const fs::path& dir, const std::string& q, const QuadratureSetup& s, Rng& rng,
                      QuadratureFiles& files) {
    files.reference = dir / (q + "_reference.csv");
    files.estimate = dir / (q + "_estimate.csv");
    files.noise = dir / (q + "_noise.csv");
    write_offset(files.reference, synth_trace(1.0 + kReferenceSnu, kSidebandHz, 1.0, kSpanHz, kBins, rng),
                 q + " input signal");
    write_offset(files.estimate,
                 synth_trace(s.noise + s.gain * kReferenceSnu, kSidebandHz, s.noise, kSpanHz, kBins, rng),
                 q + " estimate");
    write_offset(files.noise, synth_trace(s.noise, kSidebandHz, s.noise, kSpanHz, kBins, rng), q + " estimate noise");
}

void write_fixture(const fs::path& dir, const QuadratureSetup& x, const QuadratureSetup& p, Rng& rng) {
    fs::create_directories(dir);
    SpectraManifest m;
    m.sideband_hz = kSidebandHz;
    m.shot_noise = dir / "shot_noise.csv";
    write_offset(m.shot_noise, synth_trace(1.0, kSidebandHz, 1.0, kSpanHz, kBins, rng), "shot noise");
    write_quadrature(dir, "x", x, rng, m.x);
    write_quadrature(dir, "p", p, rng, m.p);
    write_manifest(dir, m);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: make_spectra_fixtures <out_dir> [seed]\n";
        return 2;
    }
    const fs::path out = argv[1];
    Rng rng(argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2026);

    // Local: unit output noise and a gain of 1/1.12 give Delta = 1.12 in both quadratures.
    const QuadratureSetup local{1.0 / 1.12, 1.0};
    write_fixture(out / "local", local, local, rng);

    // Joint measurement: gains of 3.0 and 2.9 dB with Delta = 0.51 and 0.52.
    const double gx = std::pow(10.0, 0.30);
    const double gp = std::pow(10.0, 0.29);
    write_fixture(out / "nonlocal", {gx, 0.51 * gx}, {gp, 0.52 * gp}, rng);
    return 0;
}
