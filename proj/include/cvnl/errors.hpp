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

#include <stdexcept>
#include <string>

namespace cvnl {

/// A coherent-state amplitude is too large for the requested Fock truncation.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Refining a quadrature grid moved a reported value by more than the gate tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed trace file. The message carries `path:line:`.
struct TraceParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// No validated spectral peak near the requested sideband.
struct PeakNotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cvnl
