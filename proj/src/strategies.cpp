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

#include "cvnl/strategies.hpp"

#include <cmath>
#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cvnl/kernels/kernels.hpp"
#include "cvnl/rng.hpp"

namespace cvnl {

namespace {

void require_lambda(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("lambda must be finite and >= 0");
    }
}

void require_even(int n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("nonlocal strategy needs an even number of states >= 2, got " +
                                    std::to_string(n));
    }
}

// E exp(-|e|^2) for e with mean mu and per-component variance s2.
double gaussian_overlap_mean(Amplitude mu, double s2) {
    const double denom = 1.0 + 2.0 * s2;
    return std::exp(-mu.norm2() / denom) / denom;
}

}  // namespace

void ScenarioConfig::validate(bool nonlocal) const {
    if (n_states < 1) {
        throw std::invalid_argument("n_states must be >= 1");
    }
    if (nonlocal) {
        require_even(n_states);
    }
    if (mode == AlphaMode::Fixed) {
        if (!fixed_alpha || !fixed_alpha->finite()) {
            throw std::invalid_argument("fixed-alpha mode needs a finite fixed_alpha");
        }
    } else if (!prior.normalizable()) {
        throw std::invalid_argument("lambda = 0 cannot be sampled; use fixed-alpha mode");
    }
}

double local_fidelity_bound(int n, double lambda) {
    if (n < 1) {
        throw std::invalid_argument("local_fidelity_bound: n must be >= 1");
    }
    require_lambda(lambda);
    const double m = static_cast<double>(n) + lambda;
    return m / (m + 1.0);
}

double nonlocal_fidelity_bound(int n, double lambda) {
    require_even(n);
    require_lambda(lambda);
    const double m = 2.0 * static_cast<double>(n) + lambda;
    return m / (m + 1.0);
}

double correspondence_gap(int n, double lambda) {
    return nonlocal_fidelity_bound(n, lambda) - local_fidelity_bound(2 * n, lambda);
}

double expected_local_fidelity(Amplitude alpha, int n, double lambda) {
    local_fidelity_bound(n, lambda);  // argument checks
    const double m = static_cast<double>(n) + lambda;
    const double s2 = static_cast<double>(n) / (2.0 * m * m);
    return gaussian_overlap_mean((-lambda / m) * alpha, s2);
}

double nonlocal_gain(int n, double lambda) {
    require_even(n);
    require_lambda(lambda);
    return 2.0 * std::sqrt(static_cast<double>(n)) / (2.0 * static_cast<double>(n) + lambda);
}

double expected_nonlocal_fidelity(Amplitude alpha, int n, double lambda) {
    const double g = nonlocal_gain(n, lambda);
    const double s2 = g * g / 4.0;
    return gaussian_overlap_mean((g * std::sqrt(static_cast<double>(n)) - 1.0) * alpha, s2);
}

Amplitude local_estimate(std::span<const HeterodyneOutcome> outcomes, std::span<const bool> conjugated,
                         double lambda) {
    if (outcomes.empty()) {
        throw std::invalid_argument("local_estimate: no outcomes");
    }
    if (outcomes.size() != conjugated.size()) {
        throw std::invalid_argument("local_estimate: outcome and flag counts differ");
    }
    require_lambda(lambda);
    Amplitude sum;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        sum = sum + (conjugated[i] ? conjugate(outcomes[i].beta) : outcomes[i].beta);
    }
    return (1.0 / (static_cast<double>(outcomes.size()) + lambda)) * sum;
}

Amplitude nonlocal_estimate(JointOutcome out, int n, double lambda) {
    const double g = nonlocal_gain(n, lambda);
    return {g * 0.5 * out.u, g * 0.5 * out.v};
}

namespace {

// Fills dx/dy with estimate - alpha for every sample of one block.
template <class Sampler>
FidelityEstimate run_blocks(const McOptions& opts, Sampler&& make_sampler) {
    if (opts.samples < kMcMinSamples) {
        throw std::invalid_argument("Monte Carlo needs at least " + std::to_string(kMcMinSamples) + " samples");
    }
    if (opts.workers == 0) {
        throw std::invalid_argument("workers must be >= 1");
    }
    const std::uint64_t blocks = (opts.samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<kernels::OverlapSums> block_sums(blocks);

    auto work = [&](unsigned worker) {
        auto sample = make_sampler();
        std::vector<double> dx(kMcBlockSize);
        std::vector<double> dy(kMcBlockSize);
        for (std::uint64_t b = worker; b < blocks; b += opts.workers) {
            Rng rng = Rng::stream(opts.seed, b);
            const std::uint64_t begin = b * kMcBlockSize;
            const std::uint64_t count = std::min(kMcBlockSize, opts.samples - begin);
            for (std::uint64_t i = 0; i < count; ++i) {
                const auto [alpha, estimate] = sample(rng);
                dx[i] = estimate.re - alpha.re;
                dy[i] = estimate.im - alpha.im;
            }
            block_sums[b] = kernels::overlap_sums(std::span(dx).first(count), std::span(dy).first(count));
        }
    };

    if (opts.workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(opts.workers);
        for (unsigned w = 0; w < opts.workers; ++w) {
            pool.emplace_back(work, w);
        }
    }

    // Neumaier summation in block order.
    double sum = 0.0, sum_c = 0.0, sq = 0.0, sq_c = 0.0;
    auto add = [](double& s, double& c, double x) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    };
    for (const auto& bs : block_sums) {
        add(sum, sum_c, bs.sum);
        add(sq, sq_c, bs.sum_sq);
    }
    sum += sum_c;
    sq += sq_c;

    const double n = static_cast<double>(opts.samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), opts.samples, opts.seed};
}

struct Draw {
    Amplitude alpha;
    Amplitude estimate;
};

Amplitude draw_alpha(const ScenarioConfig& cfg, Rng& rng) {
    return cfg.mode == AlphaMode::Fixed ? *cfg.fixed_alpha : sample_prior(cfg.prior, rng);
}

}  // namespace

FidelityEstimate run_local_mc(const ScenarioConfig& cfg, const McOptions& opts) {
    cfg.validate(false);
    const auto n = static_cast<std::size_t>(cfg.n_states);
    const double lambda = cfg.prior.lambda();
    return run_blocks(opts, [&cfg, n, lambda] {
        auto conjugated = std::make_unique<bool[]>(n);
        for (std::size_t i = 0; i < n; ++i) {
            conjugated[i] = cfg.conjugate_pairs && i % 2 == 1;
        }
        return [&cfg, n, lambda, conjugated = std::move(conjugated),
                outcomes = std::vector<HeterodyneOutcome>(n)](Rng& rng) mutable {
            const Amplitude alpha = draw_alpha(cfg, rng);
            const Amplitude alpha_star = conjugate(alpha);
            for (std::size_t i = 0; i < n; ++i) {
                outcomes[i] = heterodyne(conjugated[i] ? alpha_star : alpha, rng);
            }
            return Draw{alpha, local_estimate(outcomes, std::span<const bool>(conjugated.get(), n), lambda)};
        };
    });
}

FidelityEstimate run_nonlocal_mc(const ScenarioConfig& cfg, const McOptions& opts) {
    cfg.validate(true);
    const int n = cfg.n_states;
    const auto pairs = static_cast<std::size_t>(n / 2);
    const double lambda = cfg.prior.lambda();
    return run_blocks(opts, [&cfg, n, pairs, lambda] {
        return [&cfg, n, lambda, side1 = std::vector<Amplitude>(pairs),
                side2 = std::vector<Amplitude>(pairs)](Rng& rng) mutable {
            const Amplitude alpha = draw_alpha(cfg, rng);
            std::fill(side1.begin(), side1.end(), alpha);
            std::fill(side2.begin(), side2.end(), conjugate(alpha));
            const JointOutcome out = joint_epr_measure(concentrate(side1), concentrate(side2), rng);
            return Draw{alpha, nonlocal_estimate(out, n, lambda)};
        };
    });
}

}  // namespace cvnl
