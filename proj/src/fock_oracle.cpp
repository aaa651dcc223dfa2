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

#include "cvnl/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cvnl/errors.hpp"
#include "cvnl/format.hpp"
#include "cvnl/kernels/kernels.hpp"
#include "json.hpp"

namespace cvnl {

namespace {

using std::numbers::pi;
using convention::kInvSqrt2;

// out[m] = z^m / sqrt(m!): a coherent state without its exp(-|z|^2/2) factor.
// Quadrature grids carry the Gaussian, so the integrands stay polynomial.
void unnormalized_coherent(Complex z, std::span<Complex> out) {
    Complex c = 1.0;
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = c;
        c *= z / std::sqrt(static_cast<double>(m + 1));
    }
}

Complex scaled(Amplitude a, double s) { return {s * a.re, s * a.im}; }

// Batches weighted vectors and hands them to the outer-product kernel.
class OuterAccumulator {
  public:
    explicit OuterAccumulator(std::size_t dim) : dim_(dim), matrix_(dim * dim) {
        vecs_.reserve(kBatch * dim);
        weights_.reserve(kBatch);
    }

    void add(double weight, std::span<const Complex> v) {
        if (weight == 0.0) {
            return;
        }
        vecs_.insert(vecs_.end(), v.begin(), v.end());
        weights_.push_back(weight);
        if (weights_.size() == kBatch) {
            flush();
        }
    }

    FockOperator finish() {
        flush();
        kernels::mirror_lower(matrix_, dim_);
        return FockOperator(dim_, std::move(matrix_));
    }

  private:
    static constexpr std::size_t kBatch = 64;

    void flush() {
        if (!weights_.empty()) {
            kernels::accumulate_outer(matrix_, dim_, vecs_, weights_);
            vecs_.clear();
            weights_.clear();
        }
    }

    std::size_t dim_;
    std::vector<Complex> matrix_;
    std::vector<Complex> vecs_;
    std::vector<double> weights_;
};

template <class Build>
FockOperator gated(Build&& build, std::size_t nodes, bool verify, const char* what) {
    FockOperator op = build(nodes);
    if (verify) {
        const FockOperator fine = build(2 * nodes);
        const double df = op.frobenius_diff(fine);
        const double dt = std::abs(op.trace() - fine.trace());
        if (df > kGridTolerance || dt > kGridTolerance) {
            throw ConvergenceError(std::string(what) + ": doubling the grid from " + std::to_string(nodes) +
                                   " nodes per axis moved the operator by " + std::to_string(df));
        }
    }
    return op;
}

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be > 0 for a normalisable prior");
    }
}

void require_n(int n) {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
}

void require_even(int n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and >= 2");
    }
}

// <phi|u> for u given as a span.
Complex overlap(const FockVector& phi, std::span<const Complex> u) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < phi.dim(); ++k) {
        s += std::conj(phi[k]) * u[k];
    }
    return s;
}

// Visits the rotated product grid over (alpha1, alpha2):
// s = (a1 + a2)/sqrt2 with precision lambda + n, d = (a1 - a2)/sqrt2 with
// precision lambda + n + 2. The |<a1|a2>|^2 = exp(-2|d|^2) kernel and the
// coherent-state Gaussians are all carried by the grid weights.
template <class Visit>
void visit_two_mode_grid(int n, double lambda, std::size_t nodes, Visit&& visit) {
    const QuadratureGrid qs({0.0, 0.0}, lambda + n, nodes);
    const QuadratureGrid qd({0.0, 0.0}, lambda + n + 2.0, nodes);
    const double prior2 = (lambda / pi) * (lambda / pi);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const Amplitude s = qs.points()[i];
        for (std::size_t j = 0; j < qd.size(); ++j) {
            const Amplitude d = qd.points()[j];
            const double w = qs.weights()[i] * qd.weights()[j] * prior2;
            visit(w, kInvSqrt2 * (s + d), kInvSqrt2 * (s - d));
        }
    }
}

// Integral of P(alpha) |sqrt(n)alpha><sqrt(n)alpha| on `dim` levels.
FockOperator build_prior_mixture(int n, double lambda, std::size_t dim, std::size_t nodes) {
    const QuadratureGrid q({0.0, 0.0}, lambda + n, nodes);
    const double sn = std::sqrt(static_cast<double>(n));
    OuterAccumulator acc(dim);
    std::vector<Complex> u(dim);
    for (std::size_t j = 0; j < q.size(); ++j) {
        unnormalized_coherent(scaled(q.points()[j], sn), u);
        acc.add(q.weights()[j] * lambda / pi, u);
    }
    return acc.finish();
}

// <phi| integral P |sqrt(n)a><sqrt(n)a| |phi> as a direct scalar sum.
double prior_mixture_expectation(const FockVector& phi, int n, double lambda, std::size_t nodes) {
    const QuadratureGrid q({0.0, 0.0}, lambda + n, nodes);
    const double sn = std::sqrt(static_cast<double>(n));
    std::vector<Complex> u(phi.dim());
    double total = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        unnormalized_coherent(scaled(q.points()[j], sn), u);
        total += q.weights()[j] * lambda / pi * std::norm(overlap(phi, u));
    }
    return total;
}

double two_mode_expectation(const FockVector& phi, int n, double lambda, std::size_t nodes) {
    const double sn = std::sqrt(static_cast<double>(n));
    std::vector<Complex> u1(phi.dim()), u2(phi.dim());
    double total = 0.0;
    visit_two_mode_grid(n, lambda, nodes, [&](double w, Amplitude a1, Amplitude a2) {
        unnormalized_coherent(scaled(a1, sn), u1);
        unnormalized_coherent(scaled(a2, sn), u2);
        total += w * std::norm(overlap(phi, u1)) * std::norm(overlap(phi, u2));
    });
    return total;
}

}  // namespace

FockOperator build_A_phi(const FockVector& phi, int n, double lambda, std::size_t dim, const GridSpec& grid) {
    require_n(n);
    require_positive_lambda(lambda);
    if (dim == 0 || phi.dim() == 0) {
        throw std::invalid_argument("build_A_phi: empty dimension");
    }
    const double sn = std::sqrt(static_cast<double>(n));
    auto build = [&](std::size_t nodes) {
        const QuadratureGrid q({0.0, 0.0}, lambda + n + 1.0, nodes);
        OuterAccumulator acc(dim);
        std::vector<Complex> v(dim), u(phi.dim());
        for (std::size_t j = 0; j < q.size(); ++j) {
            const Amplitude a = q.points()[j];
            unnormalized_coherent(scaled(a, sn), u);
            const double w = q.weights()[j] * lambda / pi * std::norm(overlap(phi, u));
            unnormalized_coherent(a.value(), v);
            acc.add(w, v);
        }
        return acc.finish();
    };
    const std::size_t nodes = grid.nodes_per_axis ? grid.nodes_per_axis : dim + phi.dim() - 1;
    return gated(build, nodes, grid.verify, "A_phi");
}

double A_phi_exact_trace(const FockVector& phi, int n, double lambda) {
    require_n(n);
    require_positive_lambda(lambda);
    double t = 0.0;
    for (std::size_t k = 0; k < phi.dim(); ++k) {
        t += std::norm(phi[k]) * std::pow(static_cast<double>(n), static_cast<double>(k)) /
             std::pow(lambda + n, static_cast<double>(k + 1));
    }
    return lambda * t;
}

namespace {

// sum_{m >= dim} <m|A_phi|m>, using
// <m|A_phi|m> = lambda sum_k |phi_k|^2 n^k (m+k)! / (c^(m+k+1) k! m!), c = lambda + n + 1.
double A_phi_truncated_mass(const FockVector& phi, int n, double lambda, std::size_t dim) {
    const double c = lambda + n + 1.0;
    const double log_c = std::log(c);
    double mass = 0.0;
    for (std::size_t k = 0; k < phi.dim(); ++k) {
        const double pk = std::norm(phi[k]);
        if (pk == 0.0) {
            continue;
        }
        const double kk = static_cast<double>(k);
        const double base = std::log(lambda) + std::log(pk) + kk * std::log(static_cast<double>(n)) -
                            std::lgamma(kk + 1.0);
        double partial = 0.0;
        for (std::size_t m = dim;; ++m) {
            const double mm = static_cast<double>(m);
            const double term =
                std::exp(base + std::lgamma(mm + kk + 1.0) - std::lgamma(mm + 1.0) - (mm + kk + 1.0) * log_c);
            partial += term;
            // Terms decay geometrically with ratio -> 1/c once m >> k.
            if (mm > 4.0 * (kk + 1.0) && term < 1e-18 * std::max(partial, 1e-300)) {
                break;
            }
            if (m > dim + 100000) {
                break;
            }
        }
        mass += partial;
    }
    return mass;
}

}  // namespace

std::size_t A_phi_operator_dim(const FockVector& phi, int n, double lambda) {
    const double exact = A_phi_exact_trace(phi, n, lambda);
    std::size_t dim = std::max<std::size_t>(phi.dim(), 2);
    while (A_phi_truncated_mass(phi, n, lambda, dim) > kOperatorTailBound * exact) {
        ++dim;
    }
    return dim;
}

CheckReport pnorm_inequality_check(const FockVector& phi, int p, int n, double lambda, std::size_t dim,
                                   const GridSpec& grid) {
    if (p < 2) {
        throw std::invalid_argument("pnorm_inequality_check: p must be an integer >= 2");
    }
    require_n(n);
    require_positive_lambda(lambda);
    if (dim == 0) {
        dim = A_phi_operator_dim(phi, n, lambda);
    } else {
        const double exact = A_phi_exact_trace(phi, n, lambda);
        const double lost = A_phi_truncated_mass(phi, n, lambda, dim);
        if (lost > kOperatorTailBound * exact) {
            throw TruncationError("A_phi truncated at " + std::to_string(dim) + " levels drops " +
                                  std::to_string(lost / exact) + " of its trace");
        }
    }
    const FockOperator A = build_A_phi(phi, n, lambda, dim, grid);
    const std::vector<double> ev = A.eigenvalues();
    double sum_p = 0.0;
    double sum_1 = 0.0;
    for (double mu : ev) {
        sum_p += std::pow(std::abs(mu), p);
        sum_1 += std::abs(mu);
    }
    const double m = n + lambda;
    const double coef = m / std::pow(std::pow(m + 1.0, p) - 1.0, 1.0 / p);

    CheckReport r;
    r.check = "pnorm_inequality";
    r.lhs = std::pow(sum_p, 1.0 / p);
    r.rhs = coef * sum_1;
    r.holds = r.lhs <= r.rhs + kInequalitySlack;
    r.params = {{"p", p},
                {"n", n},
                {"lambda", lambda},
                {"phi_dim", static_cast<double>(phi.dim())},
                {"operator_dim", static_cast<double>(dim)},
                {"min_eigenvalue", ev.front()}};
    return r;
}

TraceOperators build_trace_operators(int n, double lambda, std::size_t dim, const GridSpec& grid) {
    require_n(n);
    require_positive_lambda(lambda);
    if (dim < 1 || dim > kMaxTwoModeDim) {
        throw std::invalid_argument("two-mode operators need 1 <= dim <= " + std::to_string(kMaxTwoModeDim));
    }
    // Per real axis the polynomial degree is at most 4(dim - 1).
    const std::size_t nodes = grid.nodes_per_axis ? grid.nodes_per_axis : 2 * dim - 1;
    const double sn = std::sqrt(static_cast<double>(n));

    OuterAccumulator acc(dim * dim);
    std::vector<Complex> u1(dim), u2(dim), u(dim * dim);
    visit_two_mode_grid(n, lambda, nodes, [&](double w, Amplitude a1, Amplitude a2) {
        unnormalized_coherent(scaled(a1, sn), u1);
        unnormalized_coherent(scaled(a2, sn), u2);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                u[i * dim + j] = u1[i] * u2[j];
            }
        }
        acc.add(w, u);
    });

    TraceOperators ops;
    ops.n = n;
    ops.lambda = lambda;
    ops.dim = dim;
    ops.B = acc.finish();
    const FockOperator mixture = build_prior_mixture(n, lambda, dim, nodes);
    ops.C = kron(mixture, mixture);

    if (grid.verify) {
        // Refined traces as direct sums: Tr B = iint w |u1|^2 |u2|^2, Tr C = (Tr mixture)^2.
        double trace_b = 0.0;
        visit_two_mode_grid(n, lambda, 2 * nodes, [&](double w, Amplitude a1, Amplitude a2) {
            unnormalized_coherent(scaled(a1, sn), u1);
            unnormalized_coherent(scaled(a2, sn), u2);
            double n1 = 0.0, n2 = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                n1 += std::norm(u1[i]);
                n2 += std::norm(u2[i]);
            }
            trace_b += w * n1 * n2;
        });
        const double trace_mix = build_prior_mixture(n, lambda, dim, 2 * nodes).trace().real();
        const double db = std::abs(trace_b - ops.B.trace().real());
        const double dc = std::abs(trace_mix * trace_mix - ops.C.trace().real());
        if (db > kGridTolerance || dc > kGridTolerance) {
            throw ConvergenceError("two-mode operators: grid refinement moved the traces by " +
                                   std::to_string(std::max(db, dc)));
        }
    }
    return ops;
}

CheckReport trace_inequality_check(const FockVector& phi, const TraceOperators& ops, const GridSpec& grid) {
    if (phi.dim() > ops.dim) {
        throw std::invalid_argument("trace_inequality_check: state dimension exceeds operator dimension");
    }
    const FockVector v = phi.padded(ops.dim);
    const FockVector vv = kron(v, v);
    const double lhs = ops.B.expectation(vv).real();
    const double c_part = ops.C.expectation(vv).real();
    const double m = ops.n + ops.lambda;
    const double coef = m * m / ((m + 1.0) * (m + 1.0) - 1.0);

    if (grid.verify) {
        const std::size_t nodes = grid.nodes_per_axis ? grid.nodes_per_axis : 2 * ops.dim - 1;
        const double fine_lhs = two_mode_expectation(v, ops.n, ops.lambda, 2 * nodes);
        const double fine_mix = prior_mixture_expectation(v, ops.n, ops.lambda, 2 * nodes);
        const double dl = std::abs(fine_lhs - lhs);
        const double dc = std::abs(fine_mix * fine_mix - c_part);
        if (dl > kGridTolerance || dc > kGridTolerance) {
            throw ConvergenceError("trace inequality: grid refinement moved a trace by " +
                                   std::to_string(std::max(dl, dc)));
        }
    }

    CheckReport r;
    r.check = "trace_inequality";
    r.lhs = lhs;
    r.rhs = coef * c_part;
    r.holds = lhs <= r.rhs + kInequalitySlack && lhs >= -kInequalitySlack;
    r.params = {{"p", 2}, {"n", ops.n}, {"lambda", ops.lambda}, {"dim", static_cast<double>(ops.dim)}};
    return r;
}

CheckReport trace_inequality_check(const FockVector& phi, int p, int n, double lambda, std::size_t dim,
                                   const GridSpec& grid) {
    if (p != 2) {
        throw std::invalid_argument("trace_inequality_check: only p = 2 is supported (operators grow as D^p)");
    }
    if (dim == 0) {
        dim = phi.dim();
    }
    return trace_inequality_check(phi, build_trace_operators(n, lambda, dim, grid), grid);
}

FockOperator build_O_beta(Amplitude beta, int n, double lambda, std::size_t dim, const GridSpec& grid) {
    require_even(n);
    require_positive_lambda(lambda);
    if (dim == 0) {
        throw std::invalid_argument("build_O_beta: empty dimension");
    }
    // P(alpha) g g exp(-|alpha|^2) = K0 exp(-c |alpha - alpha0|^2) with
    // c = lambda + 1 + 2n, alpha0 = 2 sqrt(n) beta / c,
    // K0 = (lambda / pi^2) exp(-2 |beta|^2 (lambda + 1) / c).
    const double c = lambda + 1.0 + 2.0 * n;
    const Amplitude center = (2.0 * std::sqrt(static_cast<double>(n)) / c) * beta;
    const double k0 = lambda / (pi * pi) * std::exp(-2.0 * beta.norm2() * (lambda + 1.0) / c);
    auto build = [&](std::size_t nodes) {
        const QuadratureGrid q(center, c, nodes);
        OuterAccumulator acc(dim);
        std::vector<Complex> v(dim);
        for (std::size_t j = 0; j < q.size(); ++j) {
            unnormalized_coherent(q.points()[j].value(), v);
            acc.add(q.weights()[j] * k0, v);
        }
        return acc.finish();
    };
    const std::size_t nodes = grid.nodes_per_axis ? grid.nodes_per_axis : dim;
    return gated(build, nodes, grid.verify, "O_beta");
}

double nonlocal_bound_via_oracle(int n, double lambda, std::size_t dim, const GridSpec& beta_grid,
                                 const GridSpec& grid) {
    require_even(n);
    require_positive_lambda(lambda);
    if (dim < 2) {
        throw std::invalid_argument("nonlocal_bound_via_oracle: dimension must be >= 2");
    }
    // beta = sqrt(n) alpha + noise with per-component variance 1/4, so its
    // marginal is Gaussian with precision kappa = 2 lambda / (2n + lambda).
    const double kappa = 2.0 * lambda / (2.0 * n + lambda);
    const double gain = 2.0 * std::sqrt(static_cast<double>(n)) / (2.0 * n + lambda);

    auto integrate = [&](std::size_t nodes) {
        const QuadratureGrid q({0.0, 0.0}, kappa, nodes);
        double fidelity = 0.0;
        double tail = 0.0;
        double weight_sum = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const Amplitude beta = q.points()[j];
            const Amplitude f_amp = gain * beta;
            const double w = q.weights()[j];
            tail += w * poisson_tail(f_amp.norm2(), dim);
            weight_sum += w;
            const FockVector f = coherent_fock_unchecked(f_amp, dim);
            const FockOperator op = build_O_beta(beta, n, lambda, dim, grid);
            // dx dp = 2 d^2beta
            fidelity += w * std::exp(kappa * beta.norm2()) * 2.0 * op.expectation(f).real();
        }
        if (tail / weight_sum > kBetaGridTailBound) {
            throw TruncationError("nonlocal bound: " + std::to_string(dim) +
                                  " Fock levels truncate the reconstructed states (weighted tail " +
                                  format_sig(tail / weight_sum) + ")");
        }
        return fidelity;
    };

    const std::size_t nodes = beta_grid.nodes_per_axis ? beta_grid.nodes_per_axis : 4;
    const double coarse = integrate(nodes);
    if (beta_grid.verify) {
        const double fine = integrate(2 * nodes);
        if (std::abs(fine - coarse) > kGridTolerance) {
            throw ConvergenceError("nonlocal bound: refining the beta grid moved the fidelity by " +
                                   std::to_string(std::abs(fine - coarse)));
        }
    }
    return coarse;
}

CheckReport locc_conjugation_check(const FockOperator& op, Amplitude a) {
    if (op.hermiticity_defect() > kHermitianTolerance) {
        throw std::invalid_argument("locc_conjugation_check: operator is not Hermitian");
    }
    if (op.dim() < 2) {
        throw std::invalid_argument("locc_conjugation_check: dimension must be >= 2");
    }
    const double tail = poisson_tail(a.norm2(), op.dim());
    if (tail > kConjugationTailBound) {
        throw TruncationError("conjugation check: |alpha|^2 = " + std::to_string(a.norm2()) + " needs more than " +
                              std::to_string(op.dim()) + " levels");
    }
    const FockVector v = coherent_fock_unchecked(a, op.dim());
    const FockVector v_star = coherent_fock_unchecked(conjugate(a), op.dim());

    CheckReport r;
    r.check = "locc_conjugation";
    r.lhs = op.expectation(v_star).real();
    r.rhs = op.conj().expectation(v).real();
    r.holds = std::abs(r.lhs - r.rhs) <= kIdentityTolerance;
    r.params = {{"dim", static_cast<double>(op.dim())}, {"alpha_re", a.re}, {"alpha_im", a.im}};
    return r;
}

void write_reports_json(std::ostream& out, std::span<const CheckReport> reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) {
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [key, value] : r.params) {
            params[key] = round_sig(value);
        }
        nlohmann::ordered_json rec = {{"check", r.check},
                                      {"params", params},
                                      {"lhs", round_sig(r.lhs)},
                                      {"rhs", round_sig(r.rhs)},
                                      {"holds", r.holds}};
        if (!r.failure.empty()) {
            rec["failure"] = r.failure;
        }
        arr.push_back(std::move(rec));
    }
    std::size_t violations = 0;
    std::size_t failures = 0;
    for (const CheckReport& r : reports) {
        violations += (!r.holds && r.failure.empty()) ? 1 : 0;
        failures += r.failure.empty() ? 0 : 1;
    }
    nlohmann::ordered_json doc = {{"checks", std::move(arr)}, {"violations", violations}, {"failures", failures}};
    out << doc.dump(2) << '\n';
}

}  // namespace cvnl
