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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "cvnl/errors.hpp"
#include "cvnl/quadrature.hpp"
#include "cvnl/rng.hpp"

using namespace cvnl;

namespace {

FockOperator random_hermitian(std::size_t dim, Rng& rng) {
    FockOperator op(dim);
    for (std::size_t i = 0; i < dim; i++) {
        op(i, i) = rng.normal();
        for (std::size_t j = 0; j < i; j++) {
            Complex z(rng.normal(), rng.normal());
            op(i, j) = z;
            op(j, i) = std::conj(z);
        }
    }
    return op;
}

}  // namespace

TEST(fock, coherent_vacuum) {
    FockVector v = coherent_fock({0, 0}, 10);
    EXPECT_EQ(v.dim(), 10u);
    EXPECT_EQ(v[0], Complex(1, 0));
    for (std::size_t k = 1; k < 10; k++) {
        EXPECT_EQ(v[k], Complex(0, 0));
    }
}

TEST(fock, coherent_norm) { EXPECT_NEAR(coherent_fock({1, 0}, 40).norm2(), 1.0, 1e-12); }

TEST(fock, coherent_overlap_closed_form) {
    for (auto [a, b] : std::vector<std::pair<Amplitude, Amplitude>>{
             {{0.5, 0}, {1.2, 0}}, {{0.3, -0.7}, {-1.1, 0.4}}, {{1.5, 1.0}, {1.4, 1.1}}}) {
        Complex expect = std::exp(-(a.norm2() + b.norm2()) / 2 + std::conj(a.value()) * b.value());
        Complex got = inner(coherent_fock(a, 60), coherent_fock(b, 60));
        EXPECT_LT(std::abs(got - expect), 1e-10);
    }
}

TEST(fock, coherent_truncation_gate) {
    EXPECT_THROW(coherent_fock({3, 0}, 10), TruncationError);
    EXPECT_THROW(coherent_fock({0, 0}, 1), std::invalid_argument);
    EXPECT_NO_THROW(coherent_fock({2.5, 0}, 40));
    EXPECT_NO_THROW(coherent_fock_unchecked({3, 0}, 10));
}

TEST(fock, poisson_tail) {
    for (double mean : {0.0, 0.3, 1.0, 4.0, 6.25}) {
        for (std::size_t dim : {1u, 2u, 5u, 12u, 40u}) {
            double head = 0, term = std::exp(-mean);
            for (std::size_t k = 0; k < dim; k++) {
                head += term;
                term *= mean / double(k + 1);
            }
            // Direct tail summation avoids cancellation for small tails.
            double tail = 0;
            for (std::size_t k = dim; k < dim + 400; k++) {
                tail += term;
                term *= mean / double(k + 1);
            }
            double got = poisson_tail(mean, dim);
            EXPECT_NEAR(got, tail, 1e-13 + 1e-10 * tail) << mean << " " << dim;
            EXPECT_NEAR(got + head, 1.0, 1e-12);
        }
    }
    EXPECT_EQ(poisson_tail(2.0, 0), 1.0);
}

TEST(fock, fock_dim_for) {
    for (double abs2 : {0.0, 1.0, 4.0, 6.25}) {
        std::size_t d = fock_dim_for(abs2);
        EXPECT_LE(poisson_tail(abs2, d), kCoherentTailBound);
        if (d > 2) {
            EXPECT_GT(poisson_tail(abs2, d - 1), kCoherentTailBound);
        }
    }
    EXPECT_LE(fock_dim_for(6.25), kDefaultFockDim);
}

TEST(fock, vector_ops) {
    FockVector v(std::vector<Complex>{{1, 1}, {0, 2}});
    EXPECT_DOUBLE_EQ(v.norm2(), 6);
    EXPECT_NEAR(v.normalized().norm2(), 1, 1e-15);
    EXPECT_EQ(v.conj()[1], Complex(0, -2));
    FockVector p = v.padded(4);
    EXPECT_EQ(p.dim(), 4u);
    EXPECT_EQ(p[3], Complex(0, 0));
    EXPECT_EQ(inner(v, v), Complex(6, 0));
    EXPECT_EQ(FockVector::basis(2, 5)[2], Complex(1, 0));
}

TEST(fock, kron) {
    FockOperator a(2), b(3);
    a(0, 1) = {1, 2};
    b(2, 0) = {0, 3};
    FockOperator k = kron(a, b);
    EXPECT_EQ(k.dim(), 6u);
    EXPECT_EQ(k(0 * 3 + 2, 1 * 3 + 0), Complex(1, 2) * Complex(0, 3));
    FockVector u(std::vector<Complex>{{1, 0}, {0, 1}});
    FockVector w(std::vector<Complex>{{2, 0}, {3, 0}, {4, 0}});
    FockVector uw = kron(u, w);
    EXPECT_EQ(uw.dim(), 6u);
    EXPECT_EQ(uw[4], Complex(0, 3));
    Rng rng(1);
    FockOperator x = random_hermitian(3, rng), y = random_hermitian(2, rng);
    FockVector s = coherent_fock_unchecked({0.2, 0.1}, 3), t = coherent_fock_unchecked({-0.3, 0.5}, 2);
    Complex lhs = kron(x, y).expectation(kron(s, t));
    Complex rhs = x.expectation(s) * y.expectation(t);
    EXPECT_LT(std::abs(lhs - rhs), 1e-13);
}

TEST(fock, operator_basics) {
    Rng rng(2);
    FockOperator h = random_hermitian(7, rng);
    EXPECT_EQ(h.hermiticity_defect(), 0.0);
    FockOperator c = h.conj();
    EXPECT_EQ(c(3, 1), std::conj(h(3, 1)));
    FockOperator id = FockOperator::identity(4);
    EXPECT_EQ(id.trace(), Complex(4, 0));
    FockVector v = coherent_fock_unchecked({0.5, 0.5}, 4);
    FockOperator pr = FockOperator::projector(v);
    EXPECT_NEAR(pr.expectation(v).real(), v.norm2() * v.norm2(), 1e-15);
    EXPECT_EQ(h.max_abs_diff(h), 0.0);
    FockOperator h2 = h;
    h2 *= 2.0;
    EXPECT_NEAR(h2.frobenius_diff(h), h.frobenius_diff(FockOperator(7)), 1e-12);
    std::vector<double> ev = h.eigenvalues();
    double sum = 0;
    for (std::size_t k = 0; k < ev.size(); k++) {
        sum += ev[k];
        if (k > 0) {
            EXPECT_LE(ev[k - 1], ev[k]);
        }
    }
    EXPECT_NEAR(sum, h.trace().real(), 1e-12);
}

TEST(fock, top_eigenpair_examples) {
    FockOperator id = FockOperator::identity(5);
    id *= 1.0 / 5;
    EXPECT_NEAR(top_eigenpair(id).value, 0.2, 1e-15);

    FockOperator d(2);
    d(0, 0) = 0.1;
    d(1, 1) = 0.9;
    EigenPair e = top_eigenpair(d);
    EXPECT_NEAR(e.value, 0.9, 1e-15);
    EXPECT_NEAR(std::abs(e.vector[1]), 1, 1e-15);
    EXPECT_NEAR(std::abs(e.vector[0]), 0, 1e-15);

    FockOperator bad(2);
    bad(0, 1) = 1;
    EXPECT_THROW(top_eigenpair(bad), std::invalid_argument);
}

TEST(fock, top_eigenpair_residual) {
    Rng rng(3);
    for (int k = 0; k < 20; k++) {
        FockOperator h = random_hermitian(12, rng);
        EigenPair e = top_eigenpair(h);
        EXPECT_NEAR(e.vector.norm2(), 1, 1e-12);
        FockVector hv = h.apply(e.vector);
        double res = 0;
        for (std::size_t i = 0; i < 12; i++) {
            res += std::norm(hv[i] - e.value * e.vector[i]);
        }
        EXPECT_LE(std::sqrt(res), 1e-8);
        EXPECT_NEAR(e.value, h.eigenvalues().back(), 1e-12);
    }
}

TEST(fock, quadrature_x_expectation) {
    FockOperator x = quadrature_x_operator(40);
    EXPECT_EQ(x.hermiticity_defect(), 0.0);
    for (Amplitude a : {Amplitude{0, 0}, Amplitude{0.7, 0.7}, Amplitude{-1.2, 0.3}}) {
        EXPECT_NEAR(x.expectation(coherent_fock(a, 40)).real(), std::sqrt(2.0) * a.re, 1e-10);
    }
}

TEST(quadrature, gauss_hermite_moments) {
    for (std::size_t k : {1u, 2u, 5u, 16u, 40u}) {
        const GaussHermiteRule& r = gauss_hermite(k);
        ASSERT_EQ(r.nodes.size(), k);
        for (std::size_t j = 0; 2 * j <= 2 * k - 1; j++) {
            double s = 0;
            for (std::size_t i = 0; i < k; i++) {
                s += r.weights[i] * std::pow(r.nodes[i], 2.0 * j);
            }
            double exact = std::tgamma(j + 0.5);
            ASSERT_NEAR(s, exact, 1e-12 * exact) << k << " " << j;
        }
    }
    EXPECT_EQ(&gauss_hermite(7), &gauss_hermite(7));
}

TEST(quadrature, complex_grid) {
    // integral exp(-c |a - a0|^2) |a|^2 d^2a = (pi / c) (|a0|^2 + 1 / c)
    Amplitude a0{0.4, -1.3};
    double c = 2.5;
    QuadratureGrid g(a0, c, 3);
    EXPECT_EQ(g.size(), 9u);
    double s = 0;
    for (std::size_t k = 0; k < g.size(); k++) {
        s += g.weights()[k] * g.points()[k].norm2();
    }
    EXPECT_NEAR(s, std::numbers::pi / c * (a0.norm2() + 1 / c), 1e-13);
    EXPECT_GT(g.extent(), 0);
    EXPECT_EQ(g.refined().nodes_per_axis(), 6u);
    EXPECT_GT(g.refined().extent(), g.extent());
}
