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

#include "cvnl/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace cvnl {

const GaussHermiteRule& gauss_hermite(std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("gauss_hermite: need at least one node");
    }
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[k];
    if (!slot) {
        gsl_integration_fixed_workspace* ws =
            gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, k, 0.0, 1.0, 0.0, 0.0);
        if (ws == nullptr) {
            throw std::runtime_error("gauss_hermite: GSL allocation failed");
        }
        auto rule = std::make_unique<GaussHermiteRule>();
        const double* x = gsl_integration_fixed_nodes(ws);
        const double* w = gsl_integration_fixed_weights(ws);
        rule->nodes.assign(x, x + k);
        rule->weights.assign(w, w + k);
        gsl_integration_fixed_free(ws);
        slot = std::move(rule);
    }
    return *slot;
}

QuadratureGrid::QuadratureGrid(Amplitude center, double precision, std::size_t nodes_per_axis)
    : center_(center), precision_(precision), nodes_per_axis_(nodes_per_axis) {
    if (!(precision > 0.0) || !std::isfinite(precision)) {
        throw std::invalid_argument("QuadratureGrid: precision must be positive");
    }
    const GaussHermiteRule& rule = gauss_hermite(nodes_per_axis);
    const double scale = 1.0 / std::sqrt(precision);
    points_.reserve(nodes_per_axis * nodes_per_axis);
    weights_.reserve(nodes_per_axis * nodes_per_axis);
    for (std::size_t j = 0; j < nodes_per_axis; ++j) {
        for (std::size_t k = 0; k < nodes_per_axis; ++k) {
            const Amplitude offset{scale * rule.nodes[j], scale * rule.nodes[k]};
            points_.push_back(center + offset);
            weights_.push_back(rule.weights[j] * rule.weights[k] / precision);
            extent_ = std::max(extent_, std::sqrt(offset.norm2()));
        }
    }
}

}  // namespace cvnl
