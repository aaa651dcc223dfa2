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

#include "cvnl/fock.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cvnl/errors.hpp"

namespace cvnl {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> as_matrix(const FockOperator& op) {
    return {op.data().data(), static_cast<Eigen::Index>(op.dim()), static_cast<Eigen::Index>(op.dim())};
}

void require_hermitian(const FockOperator& op) {
    const double defect = op.hermiticity_defect();
    if (!(defect <= kHermitianTolerance)) {
        throw std::invalid_argument("operator is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

}  // namespace

FockVector FockVector::basis(std::size_t k, std::size_t dim) {
    if (k >= dim) {
        throw std::invalid_argument("basis index outside truncation");
    }
    FockVector v(dim);
    v[k] = 1.0;
    return v;
}

double FockVector::norm2() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) {
        s += std::norm(c);
    }
    return s;
}

FockVector FockVector::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalise the zero vector");
    }
    FockVector out(*this);
    for (Complex& c : out.coeffs_) {
        c /= n;
    }
    return out;
}

FockVector FockVector::conj() const {
    FockVector out(*this);
    for (Complex& c : out.coeffs_) {
        c = std::conj(c);
    }
    return out;
}

FockVector FockVector::padded(std::size_t dim) const {
    if (dim < coeffs_.size()) {
        throw std::invalid_argument("padded: target dimension smaller than vector");
    }
    FockVector out(dim);
    std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin());
    return out;
}

Complex inner(const FockVector& a, const FockVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

FockOperator::FockOperator(std::size_t dim, std::vector<Complex> data) : dim_(dim), data_(std::move(data)) {
    if (data_.size() != dim * dim) {
        throw std::invalid_argument("FockOperator: data size is not dim^2");
    }
}

FockOperator FockOperator::identity(std::size_t dim) {
    FockOperator op(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        op(i, i) = 1.0;
    }
    return op;
}

FockOperator FockOperator::projector(const FockVector& v) {
    FockOperator op(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
        for (std::size_t j = 0; j < v.dim(); ++j) {
            op(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return op;
}

double FockOperator::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

Complex FockOperator::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

FockVector FockOperator::apply(const FockVector& v) const {
    if (v.dim() != dim_) {
        throw std::invalid_argument("apply: dimension mismatch");
    }
    FockVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            s += (*this)(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Complex FockOperator::expectation(const FockVector& v) const { return inner(v, apply(v)); }

FockOperator FockOperator::conj() const {
    FockOperator out(*this);
    for (Complex& c : out.data_) {
        c = std::conj(c);
    }
    return out;
}

std::vector<double> FockOperator::eigenvalues() const {
    require_hermitian(*this);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(as_matrix(*this), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue solver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double FockOperator::max_abs_diff(const FockOperator& other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

double FockOperator::frobenius_diff(const FockOperator& other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("frobenius_diff: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        s += std::norm(data_[k] - other.data_[k]);
    }
    return std::sqrt(s);
}

FockOperator& FockOperator::operator*=(double s) {
    for (Complex& c : data_) {
        c *= s;
    }
    return *this;
}

FockOperator kron(const FockOperator& a, const FockOperator& b) {
    const std::size_t n = a.dim() * b.dim();
    FockOperator out(n);
    for (std::size_t i1 = 0; i1 < a.dim(); ++i1) {
        for (std::size_t j1 = 0; j1 < a.dim(); ++j1) {
            const Complex aij = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.dim(); ++i2) {
                for (std::size_t j2 = 0; j2 < b.dim(); ++j2) {
                    out(i1 * b.dim() + i2, j1 * b.dim() + j2) = aij * b(i2, j2);
                }
            }
        }
    }
    return out;
}

FockVector kron(const FockVector& a, const FockVector& b) {
    FockVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

double poisson_tail(double mean, std::size_t dim) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_tail: mean must be finite and >= 0");
    }
    if (dim == 0) {
        return 1.0;
    }
    if (mean == 0.0) {
        return 0.0;
    }
    const double d = static_cast<double>(dim);
    double term = std::exp(-mean + d * std::log(mean) - std::lgamma(d + 1.0));
    double sum = 0.0;
    for (std::size_t k = dim;; ++k) {
        sum += term;
        const double kk = static_cast<double>(k);
        if (kk > mean && term <= 1e-17 * sum) {
            break;
        }
        if (term == 0.0 && kk > mean) {
            break;
        }
        term *= mean / (kk + 1.0);
    }
    return std::min(sum, 1.0);
}

std::size_t fock_dim_for(double abs2, double tail) {
    std::size_t dim = 2;
    while (poisson_tail(abs2, dim) > tail) {
        ++dim;
    }
    return dim;
}

FockVector coherent_fock_unchecked(Amplitude a, std::size_t dim) {
    FockVector v(dim);
    if (dim == 0) {
        return v;
    }
    const Complex alpha = a.value();
    Complex c = std::exp(-0.5 * a.norm2());
    for (std::size_t n = 0; n < dim; ++n) {
        v[n] = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return v;
}

FockVector coherent_fock(Amplitude a, std::size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("coherent_fock: dimension must be >= 2");
    }
    if (!a.finite()) {
        throw std::invalid_argument("coherent_fock: non-finite amplitude");
    }
    const double tail = poisson_tail(a.norm2(), dim);
    if (tail > kCoherentTailBound) {
        throw TruncationError("coherent state with |alpha|^2 = " + std::to_string(a.norm2()) +
                              " needs more than " + std::to_string(dim) + " Fock levels (tail " +
                              std::to_string(tail) + ")");
    }
    return coherent_fock_unchecked(a, dim);
}

EigenPair top_eigenpair(const FockOperator& op) {
    require_hermitian(op);
    if (op.dim() == 0) {
        throw std::invalid_argument("top_eigenpair: empty operator");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(as_matrix(op));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigen solver did not converge");
    }
    const Eigen::Index top = solver.eigenvalues().size() - 1;
    Eigen::VectorXcd v = solver.eigenvectors().col(top);
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::conj(v(big)) / std::abs(v(big));

    EigenPair out;
    out.value = solver.eigenvalues()(top);
    out.vector = FockVector(std::vector<Complex>(v.data(), v.data() + v.size()));

    const Eigen::VectorXcd residual = as_matrix(op) * v - out.value * v;
    const double scale = std::max(1.0, std::abs(out.value));
    if (residual.norm() > 1e-8 * scale) {
        throw std::runtime_error("top_eigenpair: residual above tolerance");
    }
    return out;
}

FockOperator quadrature_x_operator(std::size_t dim) {
    FockOperator x(dim);
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        const double amp = std::sqrt(static_cast<double>(n + 1)) * convention::kInvSqrt2;
        x(n, n + 1) = amp;
        x(n + 1, n) = amp;
    }
    return x;
}

}  // namespace cvnl
