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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cvnl/spectra.hpp"

// Trace files: CSV with header `freq_hz,power_db`, plus a sidecar JSON
// {label, rbw_hz, vbw_hz} next to it with the extension replaced by `.json`.
//
// A fixture directory holds manifest.json:
//   {"sideband_hz": f, "shot_noise": "sn.csv",
//    "x": {"reference": ..., "estimate": ..., "noise": ...}, "p": {...}}
// with paths relative to the directory.
namespace cvnl {

/// Parses the CSV body. `source` prefixes diagnostics as `source:line: ...`.
SpectralTrace parse_trace_csv(std::istream& in, const std::string& source);

/// CSV plus sidecar. Throws TraceParseError.
SpectralTrace read_trace(const std::filesystem::path& csv_path);

/// Writes CSV and sidecar with 12 significant digits.
void write_trace(const std::filesystem::path& csv_path, const SpectralTrace& trace);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

struct QuadratureFiles {
    std::filesystem::path reference;
    std::filesystem::path estimate;
    std::filesystem::path noise;
};

struct SpectraManifest {
    double sideband_hz = 0.0;
    std::filesystem::path shot_noise;
    QuadratureFiles x;
    QuadratureFiles p;
};

SpectraManifest read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::filesystem::path& dir, const SpectraManifest& manifest);

/// Loads every trace of a fixture directory, normalises to the shot-noise
/// trace and runs the added-noise analysis.
SpectraReport analyze_fixture(const std::filesystem::path& dir);

}  // namespace cvnl
