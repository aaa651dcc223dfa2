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

#include "cvnl/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvnl/rng.hpp"

namespace cvnl {

using convention::kInvSqrt2;
using convention::kSqrt2;

bool Amplitude::finite() const { return std::isfinite(re) && std::isfinite(im); }

GaussianPrior::GaussianPrior(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("prior lambda must be finite and >= 0, got " + std::to_string(lambda));
    }
}

double GaussianPrior::density(Amplitude a) const {
    if (!normalizable()) {
        throw std::domain_error("flat prior (lambda = 0) has no normalized density");
    }
    return lambda_ / std::numbers::pi * std::exp(-lambda_ * a.norm2());
}

Amplitude conjugate(Amplitude a) { return {a.re, -a.im}; }

QuadraturePair quadratures(Amplitude a) { return {kSqrt2 * a.re, kSqrt2 * a.im}; }

Amplitude amplitude_from_quadratures(QuadraturePair q) { return {q.x * kInvSqrt2, q.p * kInvSqrt2}; }

std::pair<Amplitude, Amplitude> beamsplitter(Amplitude a1, Amplitude a2) {
    return {kInvSqrt2 * (a1 + a2), kInvSqrt2 * (a1 - a2)};
}

std::pair<Amplitude, Amplitude> beamsplitter(Amplitude a1, Amplitude a2, double transmissivity) {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw std::invalid_argument("beamsplitter transmissivity must lie in [0, 1]");
    }
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    return {t * a1 + r * a2, r * a1 - t * a2};
}

namespace {

struct Mode {
    Amplitude amplitude;
    std::size_t copies;
};

// Two modes carrying k and l copies merge into one carrying k + l; the dark port
// must come out in vacuum.
Mode merge(const Mode& a, const Mode& b) {
    const double t = static_cast<double>(a.copies) / static_cast<double>(a.copies + b.copies);
    auto [bright, dark] = a.copies == b.copies ? beamsplitter(a.amplitude, b.amplitude)
                                               : beamsplitter(a.amplitude, b.amplitude, t);
    if (std::sqrt(dark.norm2()) > convention::kConcentrateTolerance) {
        throw std::logic_error("concentrate: dark port is not in vacuum");
    }
    return {bright, a.copies + b.copies};
}

}  // namespace

Amplitude concentrate(std::span<const Amplitude> copies) {
    if (copies.empty()) {
        throw std::invalid_argument("concentrate: need at least one copy");
    }
    const Amplitude first = copies.front();
    for (const Amplitude& c : copies) {
        if (!c.finite()) {
            throw std::invalid_argument("concentrate: non-finite amplitude");
        }
        if (std::abs(c.re - first.re) > convention::kConcentrateTolerance ||
            std::abs(c.im - first.im) > convention::kConcentrateTolerance) {
            throw std::invalid_argument("concentrate: copies are not identical");
        }
    }

    std::vector<Mode> level;
    level.reserve(copies.size());
    for (const Amplitude& c : copies) {
        level.push_back({c, 1});
    }
    while (level.size() > 1) {
        std::vector<Mode> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(merge(level[i], level[i + 1]));
        }
        if (level.size() % 2 == 1) {
            next.push_back(level.back());
        }
        level = std::move(next);
    }
    return level.front().amplitude;
}

Amplitude sample_prior(const GaussianPrior& prior, Rng& rng) {
    if (!prior.normalizable()) {
        throw std::invalid_argument(
            "sample_prior: lambda = 0 is the flat, non-normalizable limit; use fixed-alpha mode instead");
    }
    const double sigma = std::sqrt(0.5 / prior.lambda());
    const double re = rng.normal(0.0, sigma);
    const double im = rng.normal(0.0, sigma);
    return {re, im};
}

double overlap2(Amplitude a, Amplitude b) { return std::exp(-(a - b).norm2()); }

}  // namespace cvnl
