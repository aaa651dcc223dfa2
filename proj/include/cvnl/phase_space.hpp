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

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>

namespace cvnl {

class Rng;

// Conventions shared by every module:
//   x = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2)), vacuum variance 1/2,
//   alpha = (x_alpha + i p_alpha)/sqrt(2).
// Shot-noise units (SNU) put the vacuum at 1, so an added noise Delta in SNU is a
// quadrature variance of Delta/2 in these units.
namespace convention {
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
inline constexpr double kConcentrateTolerance = 1e-12;
}  // namespace convention

struct Amplitude {
    double re = 0.0;
    double im = 0.0;

    constexpr Amplitude() = default;
    constexpr Amplitude(double r, double i) : re(r), im(i) {}
    explicit Amplitude(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re, im}; }
    constexpr double norm2() const { return re * re + im * im; }
    bool finite() const;

    friend constexpr Amplitude operator+(Amplitude a, Amplitude b) { return {a.re + b.re, a.im + b.im}; }
    friend constexpr Amplitude operator-(Amplitude a, Amplitude b) { return {a.re - b.re, a.im - b.im}; }
    friend constexpr Amplitude operator*(double s, Amplitude a) { return {s * a.re, s * a.im}; }
    friend constexpr Amplitude operator*(Amplitude a, double s) { return {s * a.re, s * a.im}; }
    friend constexpr bool operator==(Amplitude, Amplitude) = default;
};

/// Prior P(alpha) = (lambda/pi) exp(-lambda |alpha|^2). lambda = 0 is the flat limit.
class GaussianPrior {
  public:
    GaussianPrior() = default;
    explicit GaussianPrior(double lambda);

    double lambda() const { return lambda_; }
    bool normalizable() const { return lambda_ > 0.0; }
    double density(Amplitude a) const;

  private:
    double lambda_ = 0.0;
};

struct QuadraturePair {
    double x = 0.0;
    double p = 0.0;
};

Amplitude conjugate(Amplitude a);
QuadraturePair quadratures(Amplitude a);
Amplitude amplitude_from_quadratures(QuadraturePair q);

/// Balanced real 50:50 splitter: ((a1+a2)/sqrt2, (a1-a2)/sqrt2).
std::pair<Amplitude, Amplitude> beamsplitter(Amplitude a1, Amplitude a2);

/// Real splitter with intensity transmissivity t in [0, 1]:
/// (sqrt(t) a1 + sqrt(1-t) a2, sqrt(1-t) a1 - sqrt(t) a2). t = 1/2 is `beamsplitter`.
std::pair<Amplitude, Amplitude> beamsplitter(Amplitude a1, Amplitude a2, double transmissivity);

/// Merges N equal coherent modes into one mode of amplitude sqrt(N) alpha via a
/// tree of pairwise splitters. Throws std::invalid_argument on N = 0 or unequal inputs.
Amplitude concentrate(std::span<const Amplitude> copies);

Amplitude sample_prior(const GaussianPrior& prior, Rng& rng);

/// |<a|b>|^2 = exp(-|a-b|^2).
double overlap2(Amplitude a, Amplitude b);

}  // namespace cvnl
