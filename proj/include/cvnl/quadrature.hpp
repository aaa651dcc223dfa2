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

#include <cstddef>
#include <vector>

#include "cvnl/phase_space.hpp"

namespace cvnl {

/// Gauss-Hermite rule: integral of exp(-t^2) f(t) dt ~ sum_k w_k f(t_k).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached, thread-safe. Exact for polynomials of degree <= 2k - 1.
const GaussHermiteRule& gauss_hermite(std::size_t k);

/// Tolerance of the refinement gate: doubling the node count may move a
/// reported value by at most this much.
inline constexpr double kGridTolerance = 1e-6;

/// Caller-facing grid settings. nodes_per_axis = 0 picks the smallest count
/// that integrates the operator's polynomial part exactly.
struct GridSpec {
    std::size_t nodes_per_axis = 0;
    bool verify = true;
};

/// Product Gauss-Hermite rule over the complex plane for
///   integral d^2alpha exp(-precision |alpha - center|^2) f(alpha).
/// Points are center + (t_j + i t_k)/sqrt(precision), weights w_j w_k / precision.
class QuadratureGrid {
  public:
    QuadratureGrid(Amplitude center, double precision, std::size_t nodes_per_axis);

    Amplitude center() const { return center_; }
    double precision() const { return precision_; }
    std::size_t nodes_per_axis() const { return nodes_per_axis_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Amplitude>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    /// Largest node distance from the centre (the grid's radial extent).
    double extent() const { return extent_; }

    QuadratureGrid refined() const { return {center_, precision_, 2 * nodes_per_axis_}; }

  private:
    Amplitude center_;
    double precision_;
    std::size_t nodes_per_axis_;
    std::vector<Amplitude> points_;
    std::vector<double> weights_;
    double extent_ = 0.0;
};

}  // namespace cvnl
