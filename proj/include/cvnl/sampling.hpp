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

#include "cvnl/phase_space.hpp"
#include "cvnl/rng.hpp"

namespace cvnl {

struct HeterodyneOutcome {
    Amplitude beta;
};

/// Values of the commuting pair x1 + x2 and p1 - p2.
struct JointOutcome {
    double u = 0.0;
    double v = 0.0;
};

/// Draws beta from the coherent-state Q-function (1/pi) exp(-|beta - a|^2).
HeterodyneOutcome heterodyne(Amplitude a, Rng& rng);

/// Same distribution as `heterodyne`, realised as a 50:50 split with vacuum
/// followed by an x homodyne on one port and a p homodyne on the other.
HeterodyneOutcome heterodyne_via_homodyne(Amplitude a, Rng& rng);

/// Outcome ~ N(sqrt2 Re a, 1/2).
double homodyne_x(Amplitude a, Rng& rng);
/// Outcome ~ N(sqrt2 Im a, 1/2).
double homodyne_p(Amplitude a, Rng& rng);

/// u ~ N(sqrt2 Re(a1 + a2), 1), v ~ N(sqrt2 Im(a1 - a2), 1), independent.
JointOutcome joint_epr_measure(Amplitude a1, Amplitude a2, Rng& rng);

/// Same distribution as `joint_epr_measure`: balanced splitter, x homodyne on
/// the sum port and p homodyne on the difference port, each rescaled by sqrt2.
JointOutcome joint_epr_via_beamsplitter(Amplitude a1, Amplitude a2, Rng& rng);

}  // namespace cvnl
