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
#include <optional>
#include <span>

#include "cvnl/phase_space.hpp"
#include "cvnl/sampling.hpp"

namespace cvnl {

struct FidelityEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

enum class AlphaMode { SamplePrior, Fixed };

struct ScenarioConfig {
    int n_states = 2;
    GaussianPrior prior{};
    AlphaMode mode = AlphaMode::Fixed;
    std::optional<Amplitude> fixed_alpha = Amplitude{0.7, -0.4};
    // Local strategy only: odd-indexed copies are |alpha*> instead of |alpha>.
    bool conjugate_pairs = true;

    /// Throws std::invalid_argument when the scenario violates its invariants.
    void validate(bool nonlocal) const;
};

/// (n + lambda) / (n + lambda + 1). Best measure-and-prepare fidelity on n copies of |alpha>.
double local_fidelity_bound(int n, double lambda);

/// (2n + lambda) / (2n + lambda + 1) for n total states (n/2 conjugate pairs).
double nonlocal_fidelity_bound(int n, double lambda);

/// nonlocal_fidelity_bound(n, lambda) - local_fidelity_bound(2n, lambda). Identically zero.
double correspondence_gap(int n, double lambda);

/// Conditional mean fidelity of each estimator for a fixed alpha. Averaging over
/// the prior gives the bounds above; at lambda = 0 they equal the bounds for every alpha.
double expected_local_fidelity(Amplitude alpha, int n, double lambda);
double expected_nonlocal_fidelity(Amplitude alpha, int n, double lambda);

/// Sum of outcomes (conjugated where the copy was |alpha*>) divided by N + lambda.
Amplitude local_estimate(std::span<const HeterodyneOutcome> outcomes, std::span<const bool> conjugated,
                         double lambda);

/// beta = (u + i v)/2, estimate = 2 sqrt(n) / (2n + lambda) * beta.
Amplitude nonlocal_estimate(JointOutcome out, int n, double lambda);

/// Gain 2 sqrt(n) / (2n + lambda) applied to beta.
double nonlocal_gain(int n, double lambda);

struct McOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

// Monte Carlo runs draw sample i from block i / kMcBlockSize, and each block
// owns the stream Rng::stream(seed, block). Block sums are reduced in block
// order, so results do not depend on the worker count.
inline constexpr std::uint64_t kMcBlockSize = 4096;
inline constexpr std::uint64_t kMcMinSamples = 1000;

FidelityEstimate run_local_mc(const ScenarioConfig& cfg, const McOptions& opts);
FidelityEstimate run_nonlocal_mc(const ScenarioConfig& cfg, const McOptions& opts);

}  // namespace cvnl
