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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "cvnl/cli.hpp"

namespace cvnl::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

template <class T>
T parse_scalar(std::string_view field) {
    field = trim(field);
    T v{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::invalid_argument("not a number: '" + std::string(field) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite value: '" + std::string(field) + "'");
        }
    }
    return v;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> values;
    for (std::string_view item : split(text, ',')) {
        if (trim(item).empty()) {
            continue;
        }
        const std::vector<std::string_view> r = split(item, ':');
        if (r.size() == 1) {
            values.push_back(parse_scalar<T>(r[0]));
            continue;
        }
        if (r.size() != 3) {
            throw std::invalid_argument("range must be start:stop:step, got '" + std::string(item) + "'");
        }
        const T a = parse_scalar<T>(r[0]);
        const T b = parse_scalar<T>(r[1]);
        const T step = parse_scalar<T>(r[2]);
        if (!(step > T{0}) || b < a) {
            throw std::invalid_argument("range needs start <= stop and step > 0: '" + std::string(item) + "'");
        }
        if constexpr (std::is_integral_v<T>) {
            for (T v = a; v <= b; v += step) {
                values.push_back(v);
            }
        } else {
            const auto count = static_cast<std::size_t>(std::floor((b - a) / step * (1.0 + 1e-12)));
            for (std::size_t k = 0; k <= count; ++k) {
                values.push_back(a + static_cast<double>(k) * step);
            }
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("empty list");
    }
    return values;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text); }

std::vector<double> parse_double_list(const std::string& text) { return parse_list<double>(text); }

Amplitude parse_amplitude(const std::string& text) {
    const std::vector<std::string_view> parts = split(text, ',');
    if (parts.size() == 1) {
        return {parse_scalar<double>(parts[0]), 0.0};
    }
    if (parts.size() != 2) {
        throw std::invalid_argument("amplitude must be 're,im', got '" + text + "'");
    }
    return {parse_scalar<double>(parts[0]), parse_scalar<double>(parts[1])};
}

namespace {

struct CommandDefaults {
    const char* n;
    const char* lambda;
};

CommandDefaults defaults_for(const std::string& command) {
    if (command == "bounds") {
        return {"2:10:2", "0,0.1,1,10"};
    }
    if (command == "oracle") {
        return {"1,2", "0.5,1"};
    }
    return {"2", "0"};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fidelity bounds, Monte Carlo, Fock-space checks and spectrum analysis for phase-conjugate "
                 "coherent-state pairs.",
                 "cvnl"};
    app.set_config("--config", "", "key=value file mirroring the long flags; flags override it");
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig cfg;
    std::string n_text, lambda_text, alpha_text, beta_text, mode_text = "fixed", input_text, out_text;
    app.add_option("--n", n_text, "state count(s): list or start:stop:step range");
    app.add_option("--lambda", lambda_text, "prior precision(s): list or range");
    app.add_option("--samples", cfg.samples, "Monte Carlo samples per strategy");
    app.add_option("--seed", cfg.seed, "master seed")->envname("CVNL_SEED");
    app.add_option("--fock-dim", cfg.fock_dim, "Fock truncation for O_beta and the bound integral");
    app.add_option("--grid-nodes", cfg.grid_nodes, "quadrature nodes per axis (0: exactness threshold)");
    app.add_option("--workers", cfg.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    app.add_option("--mode", mode_text, "alpha source: fixed or prior")->check(CLI::IsMember({"fixed", "prior"}));
    app.add_option("--alpha", alpha_text, "fixed alpha as re,im");
    app.add_option("--p", cfg.p, "Schatten exponent of the p-norm check");
    app.add_option("--states", cfg.states, "random states per oracle configuration");
    app.add_option("--phi-dim", cfg.phi_dim, "state dimension of the p-norm sweep");
    app.add_option("--trace-dim", cfg.trace_dim, "state dimension of the two-mode trace check");
    app.add_option("--beta", beta_text, "O_beta eigenvector case as re,im");
    app.add_option("--input", input_text, "spectra fixture directory");
    app.add_option("--out", out_text, "report path (default: stdout)");

    app.add_subcommand("bounds", "CSV table of analytic fidelity bounds");
    app.add_subcommand("simulate", "Monte Carlo estimates of both strategies against their bounds");
    app.add_subcommand("oracle", "truncated Fock-space certification suite");
    CLI::App* spectra = app.add_subcommand("spectra", "added noise and fidelity from spectral traces");
    spectra->add_option("dir", input_text, "fixture directory (same as --input)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "cvnl: " << e.what() << '\n';
        return kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        const CommandDefaults d = defaults_for(cfg.command);
        cfg.n_values = parse_int_list(n_text.empty() ? d.n : n_text);
        cfg.lambda_values = parse_double_list(lambda_text.empty() ? d.lambda : lambda_text);
        cfg.mode = mode_text == "prior" ? AlphaMode::SamplePrior : AlphaMode::Fixed;
        if (!alpha_text.empty()) {
            cfg.alpha = parse_amplitude(alpha_text);
        }
        if (!beta_text.empty()) {
            cfg.beta = parse_amplitude(beta_text);
        }
    } catch (const std::invalid_argument& e) {
        err << "cvnl: " << e.what() << '\n';
        return kExitUsage;
    }
    cfg.input = input_text;
    cfg.out = out_text;

    std::ostringstream report;
    int code = kExitUsage;
    if (cfg.command == "bounds") {
        code = cmd_bounds(cfg, report, err);
    } else if (cfg.command == "simulate") {
        code = cmd_simulate(cfg, report, err);
    } else if (cfg.command == "oracle") {
        code = cmd_oracle(cfg, report, err);
    } else {
        code = cmd_spectra(cfg, report, err);
    }
    if (report.str().empty()) {
        return code;
    }
    if (cfg.out.empty()) {
        out << report.str();
    } else {
        std::ofstream file(cfg.out);
        if (!(file << report.str())) {
            err << "cvnl: cannot write " << cfg.out.string() << '\n';
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace cvnl::cli
