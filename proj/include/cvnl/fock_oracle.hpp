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

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvnl/fock.hpp"
#include "cvnl/quadrature.hpp"

namespace cvnl {

/// One numeric certification: `holds` is lhs <= rhs + slack (inequalities) or
/// |lhs - rhs| <= tolerance (identities).
struct CheckReport {
    std::string check;
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    // Non-empty when the check could not produce a number ("convergence",
    // "truncation"); lhs and rhs are then NaN.
    std::string failure;
};

inline constexpr double kInequalitySlack = 1e-9;
inline constexpr double kIdentityTolerance = 1e-10;
/// Relative trace mass an operator truncation may drop before the p-norm check
/// refuses to run.
inline constexpr double kOperatorTailBound = 1e-12;
/// Prior-weighted Poisson tail tolerated over the beta grid of the bound integral.
inline constexpr double kBetaGridTailBound = 1e-8;
/// The conjugation identity holds exactly on the truncated space, so a looser
/// truncation tolerance applies there.
inline constexpr double kConjugationTailBound = 1e-6;
/// Two-mode operators grow as D^2 x D^2.
inline constexpr std::size_t kMaxTwoModeDim = 16;

/// A_phi = integral d^2alpha P(alpha) |<sqrt(n) alpha|phi>|^2 |alpha><alpha| on `dim`
/// Fock levels. phi may have any dimension; it only enters through the weight.
FockOperator build_A_phi(const FockVector& phi, int n, double lambda, std::size_t dim, const GridSpec& grid = {});

/// Exact (untruncated) trace of A_phi: lambda sum_k |phi_k|^2 n^k / (lambda + n)^(k+1).
double A_phi_exact_trace(const FockVector& phi, int n, double lambda);

/// Smallest operator dimension >= phi.dim() whose truncated trace of A_phi is
/// within kOperatorTailBound (relative) of the exact trace.
std::size_t A_phi_operator_dim(const FockVector& phi, int n, double lambda);

/// ||A_phi||_p against (n+lambda)/[(n+lambda+1)^p - 1]^(1/p) ||A_phi||_1.
/// dim = 0 picks A_phi_operator_dim; an explicit dim that fails the
/// truncation gate throws TruncationError.
CheckReport pnorm_inequality_check(const FockVector& phi, int p, int n, double lambda, std::size_t dim = 0,
                                   const GridSpec& grid = {});

/// B and C on the two-mode space (dimension dim^2, index i * dim + j).
///   B = iint P(a1) P(a2) |<a1|a2>|^2 |sqrt(n)a1><sqrt(n)a1| (x) |sqrt(n)a2><sqrt(n)a2|
///   C = (integral P(a) |sqrt(n)a><sqrt(n)a|)^(x)2
struct TraceOperators {
    int n = 1;
    double lambda = 1.0;
    std::size_t dim = 0;
    FockOperator B;
    FockOperator C;
};

TraceOperators build_trace_operators(int n, double lambda, std::size_t dim, const GridSpec& grid = {});

/// Tr{(|phi><phi|)^(x)2 B} <= (n+lambda)^2 / ((n+lambda+1)^2 - 1) Tr{(|phi><phi|)^(x)2 C}.
/// Only p = 2 is supported; other p throw std::invalid_argument.
CheckReport trace_inequality_check(const FockVector& phi, int p, int n, double lambda, std::size_t dim = 0,
                                   const GridSpec& grid = {});
CheckReport trace_inequality_check(const FockVector& phi, const TraceOperators& ops, const GridSpec& grid = {});

/// O_beta = integral d^2alpha P(alpha) g(x - sqrt(n) x_alpha) g(p - sqrt(n) p_alpha) |alpha><alpha|,
/// g the variance-1/2 Gaussian density and (x, p) = sqrt2 (Re beta, Im beta).
/// Normalised so that 2 integral d^2beta <f_beta|O_beta|f_beta> is the fidelity.
FockOperator build_O_beta(Amplitude beta, int n, double lambda, std::size_t dim, const GridSpec& grid = {});

/// Fidelity of the beam-splitter strategy by integrating <f_beta|O_beta|f_beta>
/// over beta with f_beta = coherent(2 sqrt(n) beta / (2n + lambda)).
/// `beta_grid` controls the outer rule, `grid` each O_beta build.
double nonlocal_bound_via_oracle(int n, double lambda, std::size_t dim = kDefaultFockDim,
                                 const GridSpec& beta_grid = {}, const GridSpec& grid = {});

/// Tr{op |a*><a*|} against Tr{conj(op) |a><a|}.
CheckReport locc_conjugation_check(const FockOperator& op, Amplitude a);

/// {"checks": [{check, params, lhs, rhs, holds[, failure]}], "violations": k, "failures": m}.
/// Violations count checks that ran and did not hold; failures count checks that could not run.
void write_reports_json(std::ostream& out, std::span<const CheckReport> reports);

}  // namespace cvnl
