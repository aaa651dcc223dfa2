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

#include "cvnl/sampling.hpp"

#include <cmath>

namespace cvnl {

using convention::kSqrt2;

namespace {
const double kVacuumSigma = std::sqrt(convention::kVacuumVariance);
}

HeterodyneOutcome heterodyne(Amplitude a, Rng& rng) {
    const double re = rng.normal(a.re, kVacuumSigma);
    const double im = rng.normal(a.im, kVacuumSigma);
    return {{re, im}};
}

HeterodyneOutcome heterodyne_via_homodyne(Amplitude a, Rng& rng) {
    auto [port1, port2] = beamsplitter(a, Amplitude{});
    // Each port carries a/sqrt2, so the sqrt2 quadrature factor cancels.
    const double re = homodyne_x(port1, rng);
    const double im = homodyne_p(port2, rng);
    return {{re, im}};
}

double homodyne_x(Amplitude a, Rng& rng) { return rng.normal(kSqrt2 * a.re, kVacuumSigma); }

double homodyne_p(Amplitude a, Rng& rng) { return rng.normal(kSqrt2 * a.im, kVacuumSigma); }

JointOutcome joint_epr_measure(Amplitude a1, Amplitude a2, Rng& rng) {
    const double u = rng.normal(kSqrt2 * (a1.re + a2.re), 1.0);
    const double v = rng.normal(kSqrt2 * (a1.im - a2.im), 1.0);
    return {u, v};
}

JointOutcome joint_epr_via_beamsplitter(Amplitude a1, Amplitude a2, Rng& rng) {
    auto [sum, diff] = beamsplitter(a1, a2);
    const double u = kSqrt2 * homodyne_x(sum, rng);
    const double v = kSqrt2 * homodyne_p(diff, rng);
    return {u, v};
}

}  // namespace cvnl
