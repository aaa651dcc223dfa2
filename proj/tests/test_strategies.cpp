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
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace cvnl;

namespace {

ScenarioConfig scenario(int n, double lambda, AlphaMode mode, Amplitude alpha = {0.7, -0.4}) {
    ScenarioConfig c;
    c.n_states = n;
    c.prior = GaussianPrior(lambda);
    c.mode = mode;
    c.fixed_alpha = alpha;
    return c;
}

// E over an error e ~ N(mu, s2 per component) of exp(-|e|^2), by a plain
// Riemann sum over +-10 standard deviations.
double riemann_overlap_mean(Amplitude mu, double s2) {
    const double s = std::sqrt(s2);
    const int steps = 800;
    const double h = 20 * s / steps;
    double total = 0;
    for (int i = 0; i <= steps; i++) {
        double ex = -10 * s + i * h;
        for (int j = 0; j <= steps; j++) {
            double ey = -10 * s + j * h;
            double density = std::exp(-(ex * ex + ey * ey) / (2 * s2)) / (2 * std::numbers::pi * s2);
            double x = mu.re + ex, y = mu.im + ey;
            total += density * std::exp(-(x * x + y * y)) * h * h;
        }
    }
    return total;
}

// Straightforward reimplementation of both strategies on a different generator.
struct Reference {
    std::mt19937 gen;
    std::normal_distribution<double> z{0.0, 1.0};

    explicit Reference(unsigned seed) : gen(seed) {}

    Amplitude alpha(const ScenarioConfig& c) {
        if (c.mode == AlphaMode::Fixed) {
            return *c.fixed_alpha;
        }
        double sd = std::sqrt(1 / (2 * c.prior.lambda()));
        return {sd * z(gen), sd * z(gen)};
    }

    double local_sample(const ScenarioConfig& c) {
        Amplitude a = alpha(c);
        Amplitude sum{0, 0};
        for (int i = 0; i < c.n_states; i++) {
            bool conj = c.conjugate_pairs && i % 2 == 1;
            Amplitude src = conj ? Amplitude{a.re, -a.im} : a;
            Amplitude beta{src.re + std::sqrt(0.5) * z(gen), src.im + std::sqrt(0.5) * z(gen)};
            sum = sum + (conj ? Amplitude{beta.re, -beta.im} : beta);
        }
        Amplitude est = (1 / (c.n_states + c.prior.lambda())) * sum;
        return std::exp(-(est - a).norm2());
    }

    double nonlocal_sample(const ScenarioConfig& c) {
        Amplitude a = alpha(c);
        double n = c.n_states;
        // n/2 copies of alpha and of alpha* concentrated on each side.
        double amp = std::sqrt(n / 2);
        double u = std::sqrt(2.0) * (2 * amp * a.re) + z(gen);
        double v = std::sqrt(2.0) * (2 * amp * a.im) + z(gen);
        double g = 2 * std::sqrt(n) / (2 * n + c.prior.lambda());
        Amplitude est{g * u / 2, g * v / 2};
        return std::exp(-(est - a).norm2());
    }
};

template <class F>
std::pair<double, double> mean_se(int n, F&& f) {
    double s = 0, s2 = 0;
    for (int k = 0; k < n; k++) {
        double x = f();
        s += x;
        s2 += x * x;
    }
    double m = s / n;
    return {m, std::sqrt((s2 / n - m * m) / n)};
}

}  // namespace

TEST(strategies, local_bound) {
    EXPECT_DOUBLE_EQ(local_fidelity_bound(2, 0), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(local_fidelity_bound(1, 0), 0.5);
    EXPECT_DOUBLE_EQ(local_fidelity_bound(2, 1), 0.75);
    EXPECT_THROW(local_fidelity_bound(0, 1), std::invalid_argument);
    EXPECT_THROW(local_fidelity_bound(2, -1), std::invalid_argument);
}

TEST(strategies, nonlocal_bound) {
    EXPECT_DOUBLE_EQ(nonlocal_fidelity_bound(2, 0), 0.8);
    EXPECT_DOUBLE_EQ(nonlocal_fidelity_bound(2, 1), 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(nonlocal_fidelity_bound(4, 0), 8.0 / 9.0);
    EXPECT_THROW(nonlocal_fidelity_bound(3, 0), std::invalid_argument);
}

TEST(strategies, correspondence_gap_is_zero) {
    for (int n : {2, 4, 6, 8, 10, 100}) {
        for (double l : {0.0, 0.1, 0.7, 1.0, 3.0, 10.0}) {
            ASSERT_EQ(correspondence_gap(n, l), 0.0) << n << " " << l;
        }
    }
}

TEST(strategies, separation_and_monotonicity) {
    for (int n = 2; n <= 40; n += 2) {
        for (double l : {0.0, 0.01, 0.5, 1.0, 5.0, 50.0}) {
            ASSERT_GT(nonlocal_fidelity_bound(n, l), local_fidelity_bound(n, l));
            ASSERT_LT(nonlocal_fidelity_bound(n, l), 1.0);
            ASSERT_GT(local_fidelity_bound(n + 2, l), local_fidelity_bound(n, l));
            ASSERT_GT(nonlocal_fidelity_bound(n + 2, l), nonlocal_fidelity_bound(n, l));
            ASSERT_GT(local_fidelity_bound(n, l + 0.1), local_fidelity_bound(n, l));
            ASSERT_GT(nonlocal_fidelity_bound(n, l + 0.1), nonlocal_fidelity_bound(n, l));
        }
    }
}

TEST(strategies, local_estimate_examples) {
    std::vector<HeterodyneOutcome> same{{{0.3, 0.4}}, {{0.3, 0.4}}};
    bool none[] = {false, false};
    EXPECT_EQ(local_estimate(same, none, 0), Amplitude(0.3, 0.4));

    std::vector<HeterodyneOutcome> pair{{{0.3, 0.4}}, {{1.0, -2.0}}};
    bool second[] = {false, true};
    Amplitude e = local_estimate(pair, second, 0);
    EXPECT_NEAR(e.re, (0.3 + 1.0) / 2, 1e-15);
    EXPECT_NEAR(e.im, (0.4 + 2.0) / 2, 1e-15);

    std::vector<HeterodyneOutcome> one{{{2, 0}}};
    bool f[] = {false};
    EXPECT_EQ(local_estimate(one, f, 1), Amplitude(1, 0));

    EXPECT_THROW(local_estimate(std::vector<HeterodyneOutcome>{}, std::span<const bool>{}, 0), std::invalid_argument);
    EXPECT_THROW(local_estimate(one, second, 0), std::invalid_argument);
}

TEST(strategies, nonlocal_estimate_unity_gain) {
    Amplitude a{0.9, -0.35};
    QuadraturePair q = quadratures(a);
    Amplitude e = nonlocal_estimate({2 * q.x, 2 * q.p}, 2, 0);
    EXPECT_NEAR(e.re, a.re, 1e-15);
    EXPECT_NEAR(e.im, a.im, 1e-15);
    EXPECT_EQ(nonlocal_estimate({0, 0}, 2, 0), Amplitude(0, 0));
    EXPECT_DOUBLE_EQ(nonlocal_gain(2, 1), 2 * std::sqrt(2.0) / 5);
    EXPECT_THROW(nonlocal_estimate({1, 1}, 3, 0), std::invalid_argument);
    // Noiseless outcome of a concentrated n = 6 scenario: u = 2 sqrt(n/2) x_alpha.
    double amp = std::sqrt(3.0);
    e = nonlocal_estimate({2 * amp * q.x, 2 * amp * q.p}, 6, 0);
    EXPECT_NEAR(e.re, a.re, 1e-14);
    EXPECT_NEAR(e.im, a.im, 1e-14);
}

TEST(strategies, conditional_fidelity_matches_riemann_oracle) {
    for (auto [n, l] : std::vector<std::pair<int, double>>{{2, 0.0}, {2, 1.0}, {4, 0.3}}) {
        for (Amplitude a : {Amplitude{0, 0}, Amplitude{0.7, -0.4}, Amplitude{-1.5, 0.2}}) {
            double m = n + l;
            double local = riemann_overlap_mean((-l / m) * a, n / (2 * m * m));
            EXPECT_NEAR(expected_local_fidelity(a, n, l), local, 1e-9);
            double g = 2 * std::sqrt(double(n)) / (2 * n + l);
            double nonlocal = riemann_overlap_mean((g * std::sqrt(double(n)) - 1) * a, g * g / 4);
            EXPECT_NEAR(expected_nonlocal_fidelity(a, n, l), nonlocal, 1e-9);
        }
    }
}

TEST(strategies, conditional_fidelity_flat_limit_is_bound) {
    for (Amplitude a : {Amplitude{0, 0}, Amplitude{3, -2}}) {
        EXPECT_NEAR(expected_local_fidelity(a, 2, 0), 2.0 / 3.0, 1e-15);
        EXPECT_NEAR(expected_nonlocal_fidelity(a, 2, 0), 0.8, 1e-15);
    }
}

TEST(strategies, conditional_fidelity_prior_average_is_bound) {
    // Radial integral of (lambda/pi) e^{-lambda r^2} F(r) by Simpson's rule.
    for (auto [n, l] : std::vector<std::pair<int, double>>{{2, 0.01}, {2, 1.0}, {4, 2.5}, {8, 0.3}}) {
        double rmax = 12 / std::sqrt(l);
        int steps = 20000;
        double h = rmax / steps;
        double local = 0, nonlocal = 0;
        for (int k = 0; k <= steps; k++) {
            double r = k * h;
            double w = (k == 0 || k == steps) ? 1 : (k % 2 ? 4 : 2);
            double radial = 2 * l * r * std::exp(-l * r * r) * w * h / 3;
            local += radial * expected_local_fidelity({r, 0}, n, l);
            nonlocal += radial * expected_nonlocal_fidelity({r, 0}, n, l);
        }
        EXPECT_NEAR(local, local_fidelity_bound(n, l), 1e-8);
        EXPECT_NEAR(nonlocal, nonlocal_fidelity_bound(n, l), 1e-8);
    }
}

TEST(strategies, scenario_validation) {
    EXPECT_THROW(scenario(2, 0, AlphaMode::SamplePrior).validate(false), std::invalid_argument);
    EXPECT_THROW(scenario(3, 1, AlphaMode::SamplePrior).validate(true), std::invalid_argument);
    EXPECT_NO_THROW(scenario(3, 1, AlphaMode::SamplePrior).validate(false));
    EXPECT_THROW(scenario(0, 1, AlphaMode::SamplePrior).validate(false), std::invalid_argument);
    ScenarioConfig c = scenario(2, 0, AlphaMode::Fixed);
    c.fixed_alpha.reset();
    EXPECT_THROW(c.validate(false), std::invalid_argument);
    EXPECT_THROW(run_local_mc(scenario(2, 0, AlphaMode::SamplePrior), {}), std::invalid_argument);
    EXPECT_THROW(run_local_mc(scenario(2, 0, AlphaMode::Fixed), {999, 1, 1}), std::invalid_argument);
    EXPECT_THROW(run_nonlocal_mc(scenario(2, 0, AlphaMode::Fixed), {1000, 1, 0}), std::invalid_argument);
}

struct McCase {
    bool nonlocal;
    int n;
    double lambda;
    AlphaMode mode;
    double target;
};

class mc_bounds : public ::testing::TestWithParam<McCase> {};

TEST_P(mc_bounds, within_three_standard_errors) {
    McCase c = GetParam();
    ScenarioConfig sc = scenario(c.n, c.lambda, c.mode);
    FidelityEstimate e = c.nonlocal ? run_nonlocal_mc(sc, {1000000, 42, 1}) : run_local_mc(sc, {1000000, 42, 1});
    EXPECT_EQ(e.samples, 1000000u);
    EXPECT_EQ(e.seed, 42u);
    EXPECT_GT(e.std_error, 0);
    EXPECT_LT(e.std_error, 5e-4);
    EXPECT_NEAR(e.mean, c.target, 3 * e.std_error);
}

INSTANTIATE_TEST_SUITE_P(
    strategies, mc_bounds,
    ::testing::Values(McCase{false, 2, 0.01, AlphaMode::SamplePrior, 2.01 / 3.01},
                      McCase{false, 2, 0.0, AlphaMode::Fixed, 2.0 / 3.0},
                      McCase{false, 1, 1.0, AlphaMode::SamplePrior, 2.0 / 3.0},
                      McCase{true, 2, 0.0, AlphaMode::Fixed, 0.8},
                      McCase{true, 2, 0.01, AlphaMode::SamplePrior, 4.01 / 5.01},
                      McCase{true, 4, 0.0, AlphaMode::Fixed, 8.0 / 9.0}));

TEST(strategies, mc_matches_reference_implementation) {
    for (auto [n, l, mode] : std::vector<std::tuple<int, double, AlphaMode>>{
             {2, 0.0, AlphaMode::Fixed}, {2, 1.0, AlphaMode::SamplePrior}, {4, 0.5, AlphaMode::Fixed}}) {
        ScenarioConfig sc = scenario(n, l, mode);
        Reference ref(1234);
        auto [rl, rl_se] = mean_se(300000, [&] { return ref.local_sample(sc); });
        auto [rn, rn_se] = mean_se(300000, [&] { return ref.nonlocal_sample(sc); });
        FidelityEstimate el = run_local_mc(sc, {300000, 9, 1});
        FidelityEstimate en = run_nonlocal_mc(sc, {300000, 9, 1});
        EXPECT_NEAR(el.mean, rl, 4 * std::hypot(el.std_error, rl_se));
        EXPECT_NEAR(en.mean, rn, 4 * std::hypot(en.std_error, rn_se));
    }
}

TEST(strategies, locc_symmetry) {
    ScenarioConfig pairs = scenario(2, 1, AlphaMode::SamplePrior);
    ScenarioConfig copies = pairs;
    copies.conjugate_pairs = false;
    FidelityEstimate a = run_local_mc(pairs, {1000000, 5, 1});
    FidelityEstimate b = run_local_mc(copies, {1000000, 5, 1});
    EXPECT_NEAR(a.mean, b.mean, 3 * std::hypot(a.std_error, b.std_error));
}

TEST(strategies, mc_never_beats_bound) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        ScenarioConfig sc = scenario(2, 0.5, AlphaMode::SamplePrior);
        FidelityEstimate l = run_local_mc(sc, {200000, seed, 1});
        FidelityEstimate n = run_nonlocal_mc(sc, {200000, seed, 1});
        EXPECT_LE(l.mean, local_fidelity_bound(2, 0.5) + 3 * l.std_error);
        EXPECT_LE(n.mean, nonlocal_fidelity_bound(2, 0.5) + 3 * n.std_error);
    }
}

TEST(strategies, mc_independent_of_worker_count) {
    ScenarioConfig sc = scenario(2, 0.3, AlphaMode::SamplePrior);
    FidelityEstimate base = run_nonlocal_mc(sc, {100001, 17, 1});
    FidelityEstimate base_l = run_local_mc(sc, {100001, 17, 1});
    for (unsigned w : {2u, 3u, 4u, 7u}) {
        FidelityEstimate e = run_nonlocal_mc(sc, {100001, 17, w});
        EXPECT_EQ(e.mean, base.mean);
        EXPECT_EQ(e.std_error, base.std_error);
        FidelityEstimate l = run_local_mc(sc, {100001, 17, w});
        EXPECT_EQ(l.mean, base_l.mean);
    }
    FidelityEstimate other = run_nonlocal_mc(sc, {100001, 18, 1});
    EXPECT_NE(other.mean, base.mean);
}
