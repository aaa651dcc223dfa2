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

#include "cvnl/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include "cvnl/errors.hpp"
#include "cvnl/format.hpp"
#include "json.hpp"

namespace cvnl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw TraceParseError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, const std::string& source, std::size_t line) {
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        fail(source, line, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) {
        fail(source, line, "non-finite value");
    }
    return v;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw TraceParseError(path.string() + ":0: cannot open file");
    }
    return in;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

json read_json(const fs::path& path) {
    std::ifstream in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw TraceParseError(path.string() + ":0: " + e.what());
    }
}

}  // namespace

SpectralTrace parse_trace_csv(std::istream& in, const std::string& source) {
    SpectralTrace t;
    std::string text;
    std::size_t line = 0;
    bool header = false;
    while (std::getline(in, text)) {
        ++line;
        const std::string_view row = trim(text);
        if (row.empty()) {
            continue;
        }
        if (!header) {
            if (row != "freq_hz,power_db") {
                fail(source, line, "expected header 'freq_hz,power_db'");
            }
            header = true;
            continue;
        }
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            fail(source, line, "expected two comma-separated fields");
        }
        const double f = parse_number(row.substr(0, comma), source, line);
        const double p = parse_number(row.substr(comma + 1), source, line);
        if (!t.freqs.empty() && !(f > t.freqs.back())) {
            fail(source, line, "frequencies must be strictly increasing");
        }
        t.freqs.push_back(f);
        t.power_db.push_back(p);
    }
    if (!header) {
        fail(source, std::max<std::size_t>(line, 1), "empty file, missing header");
    }
    if (t.freqs.empty()) {
        fail(source, line, "no data rows");
    }
    return t;
}

fs::path sidecar_path(const fs::path& csv_path) {
    fs::path p = csv_path;
    p.replace_extension(".json");
    return p;
}

SpectralTrace read_trace(const fs::path& csv_path) {
    std::ifstream in = open_in(csv_path);
    SpectralTrace t = parse_trace_csv(in, csv_path.string());
    const fs::path meta_path = sidecar_path(csv_path);
    const json meta = read_json(meta_path);
    try {
        t.label = meta.at("label").get<std::string>();
        t.rbw = meta.at("rbw_hz").get<double>();
        t.vbw = meta.at("vbw_hz").get<double>();
    } catch (const json::exception& e) {
        throw TraceParseError(meta_path.string() + ":0: " + e.what());
    }
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw TraceParseError(csv_path.string() + ":0: " + e.what());
    }
    return t;
}

void write_trace(const fs::path& csv_path, const SpectralTrace& trace) {
    trace.validate();
    {
        std::ofstream out = open_out(csv_path);
        out << "freq_hz,power_db\n";
        for (std::size_t k = 0; k < trace.size(); ++k) {
            out << format_sig(trace.freqs[k]) << ',' << format_sig(trace.power_db[k]) << '\n';
        }
    }
    nlohmann::ordered_json meta = {{"label", trace.label}, {"rbw_hz", trace.rbw}, {"vbw_hz", trace.vbw}};
    std::ofstream out = open_out(sidecar_path(csv_path));
    out << meta.dump(2) << '\n';
}

SpectraManifest read_manifest(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    const json m = read_json(path);
    SpectraManifest out;
    try {
        out.sideband_hz = m.at("sideband_hz").get<double>();
        out.shot_noise = dir / m.at("shot_noise").get<std::string>();
        auto quad = [&](const char* key) {
            const json& q = m.at(key);
            return QuadratureFiles{dir / q.at("reference").get<std::string>(),
                                   dir / q.at("estimate").get<std::string>(),
                                   dir / q.at("noise").get<std::string>()};
        };
        out.x = quad("x");
        out.p = quad("p");
    } catch (const json::exception& e) {
        throw TraceParseError(path.string() + ":0: " + e.what());
    }
    return out;
}

void write_manifest(const fs::path& dir, const SpectraManifest& manifest) {
    auto rel = [&](const fs::path& p) { return p.lexically_relative(dir).generic_string(); };
    auto quad = [&](const QuadratureFiles& q) {
        return nlohmann::ordered_json{
            {"reference", rel(q.reference)}, {"estimate", rel(q.estimate)}, {"noise", rel(q.noise)}};
    };
    nlohmann::ordered_json m = {{"sideband_hz", manifest.sideband_hz},
                                {"shot_noise", rel(manifest.shot_noise)},
                                {"x", quad(manifest.x)},
                                {"p", quad(manifest.p)}};
    std::ofstream out = open_out(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

SpectraReport analyze_fixture(const fs::path& dir) {
    const SpectraManifest m = read_manifest(dir);
    const SpectralTrace shot = read_trace(m.shot_noise);
    auto load = [&](const fs::path& p) { return normalize_to_shot_noise(read_trace(p), shot); };
    auto quad = [&](const QuadratureFiles& q) {
        return analyze_quadrature(load(q.reference), load(q.estimate), load(q.noise), m.sideband_hz);
    };
    const QuadratureAnalysis x = quad(m.x);
    const QuadratureAnalysis p = quad(m.p);
    return analyze_spectra(x, p);
}

}  // namespace cvnl
