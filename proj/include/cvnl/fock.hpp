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
#include <span>
#include <vector>

#include "cvnl/phase_space.hpp"

namespace cvnl {

using Complex = std::complex<double>;

/// Coefficients on the Fock basis |0>, ..., |dim-1>.
class FockVector {
  public:
    explicit FockVector(std::size_t dim = 0) : coeffs_(dim) {}
    explicit FockVector(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

    static FockVector basis(std::size_t k, std::size_t dim);

    std::size_t dim() const { return coeffs_.size(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_[k]; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

    double norm2() const;
    FockVector normalized() const;
    FockVector conj() const;
    /// Zero-extends to `dim` (>= current dim).
    FockVector padded(std::size_t dim) const;

  private:
    std::vector<Complex> coeffs_;
};

/// <a|b>, conjugate-linear in the first argument. Dimensions must match.
Complex inner(const FockVector& a, const FockVector& b);

/// Dense row-major dim x dim complex matrix on the truncated Fock basis.
class FockOperator {
  public:
    explicit FockOperator(std::size_t dim = 0) : dim_(dim), data_(dim * dim) {}
    FockOperator(std::size_t dim, std::vector<Complex> data);

    static FockOperator identity(std::size_t dim);
    static FockOperator projector(const FockVector& v);

    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    /// max |M_ij - conj(M_ji)|
    double hermiticity_defect() const;
    Complex trace() const;
    /// <v|M|v>
    Complex expectation(const FockVector& v) const;
    FockVector apply(const FockVector& v) const;
    /// Entrywise complex conjugate in the Fock basis.
    FockOperator conj() const;
    /// Eigenvalues of a Hermitian operator, ascending.
    std::vector<double> eigenvalues() const;
    double max_abs_diff(const FockOperator& other) const;
    double frobenius_diff(const FockOperator& other) const;

    FockOperator& operator*=(double s);

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Kronecker product a (x) b; basis index (i, j) -> i * b.dim() + j.
FockOperator kron(const FockOperator& a, const FockOperator& b);
FockVector kron(const FockVector& a, const FockVector& b);

inline constexpr double kHermitianTolerance = 1e-10;
/// Maximum Poisson norm deficit accepted by `coherent_fock`.
inline constexpr double kCoherentTailBound = 1e-10;
inline constexpr std::size_t kDefaultFockDim = 40;

/// P(N >= dim) for N ~ Poisson(mean): the squared-norm lost by truncating a
/// coherent state with |alpha|^2 = mean at dimension dim.
double poisson_tail(double mean, std::size_t dim);

/// Smallest dimension whose truncation tail for |alpha|^2 = abs2 is below `tail`.
std::size_t fock_dim_for(double abs2, double tail = kCoherentTailBound);

/// c_n = exp(-|a|^2/2) a^n / sqrt(n!). Throws TruncationError when the tail
/// exceeds kCoherentTailBound, std::invalid_argument when dim < 2.
FockVector coherent_fock(Amplitude a, std::size_t dim);

/// Same expansion without the tail gate, for quadrature nodes whose tail is
/// controlled by the integration weight.
FockVector coherent_fock_unchecked(Amplitude a, std::size_t dim);

struct EigenPair {
    double value = 0.0;
    FockVector vector;
};

/// Largest eigenvalue and its unit eigenvector, phased so the largest
/// component is real and positive. Throws std::invalid_argument if the
/// operator is not Hermitian within kHermitianTolerance.
EigenPair top_eigenpair(const FockOperator& op);

/// x = (a + a^dagger)/sqrt2 truncated to dim.
FockOperator quadrature_x_operator(std::size_t dim);

}  // namespace cvnl
