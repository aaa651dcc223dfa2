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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cvnl/phase_space.hpp"
#include "cvnl/strategies.hpp"

namespace cvnl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Seed used when neither --seed, the config file nor CVNL_SEED sets one.
inline constexpr std::uint64_t kDefaultSeed = 42;
/// |z| above this fails `simulate`.
inline constexpr double kZScoreLimit = 5.0;

struct RunConfig {
    std::string command;
    std::vector<int> n_values{2};
    std::vector<double> lambda_values{0.0};
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::size_t fock_dim = 40;
    std::size_t grid_nodes = 0;  // 0: exactness threshold
    unsigned workers = 1;
    AlphaMode mode = AlphaMode::Fixed;
    Amplitude alpha{0.7, -0.4};
    // oracle
    int p = 2;
    std::size_t states = 25;     // random states per p-norm configuration
    std::size_t phi_dim = 12;    // p-norm sweep state dimension
    std::size_t trace_dim = 8;   // two-mode check dimension
    Amplitude beta{0.8, 0.3};    // O_beta eigenvector case
    // spectra
    std::filesystem::path input;
    std::filesystem::path out;  // empty: stdout
};

/// "2,4,10:20:2" style lists; a:b:step ranges include b when it lies on the
/// step. Throws std::invalid_argument on malformed or empty input.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
/// "re,im" or a single real number.
Amplitude parse_amplitude(const std::string& text);

/// Subcommands write their report to `out` and diagnostics to `err`, and
/// return an exit code. They validate `cfg` before computing anything.
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectra(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full front end: parses argv (flags, --config file, CVNL_SEED), runs the
/// subcommand and writes the report to --out or `out`. Nothing is written to
/// --out unless the command produced a report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvnl::cli
