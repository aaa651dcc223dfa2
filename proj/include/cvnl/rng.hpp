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
#include <random>
#include <utility>

namespace cvnl {

/// Seeded generator used by every sampler.
///
/// Uniforms take the top 53 bits of a std::mt19937_64 draw. Normals use the
/// Box-Muller transform on a pair of uniforms u1 in (0, 1], u2 in [0, 1):
///   r = sqrt(-2 ln u1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2),
/// returning z0 first and caching z1 for the next call.
///
/// Independent streams for parallel work are derived with `Rng::stream`, which
/// seeds the engine from splitmix64(master ^ splitmix64(index)).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    static Rng stream(std::uint64_t master_seed, std::uint64_t index);

    double uniform();        // [0, 1)
    double uniform_open0();  // (0, 1]
    double normal();         // mean 0, variance 1
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cvnl
