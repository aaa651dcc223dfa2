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
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference and, where the
// build and CPU allow, an AVX2+FMA variant chosen at runtime. Variants agree to
// rounding (summation order differs), not bit-for-bit.
namespace cvnl::kernels {

using Complex = std::complex<double>;

struct OverlapSums {
    double sum = 0.0;     // sum of exp(-(dx^2 + dy^2))
    double sum_sq = 0.0;  // sum of exp(-(dx^2 + dy^2))^2
};

// Adds sum_k w[k] v_k v_k^dagger into the lower triangle (j <= i) of the
// row-major dim x dim matrix m. v_k = vecs[k*dim .. k*dim + dim).
using AccumulateOuterFn = void (*)(Complex* m, std::size_t dim, const Complex* vecs, const double* weights,
                                   std::size_t count);
using OverlapSumsFn = OverlapSums (*)(const double* dx, const double* dy, std::size_t n);

struct KernelSet {
    std::string_view name;
    AccumulateOuterFn accumulate_outer;
    OverlapSumsFn overlap_sums;
};

const KernelSet& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

/// Best available set. CVNL_KERNELS=scalar in the environment forces the reference.
const KernelSet& active_kernels();

void accumulate_outer(std::span<Complex> m, std::size_t dim, std::span<const Complex> vecs,
                      std::span<const double> weights);

OverlapSums overlap_sums(std::span<const double> dx, std::span<const double> dy);

/// Copies the conjugate of the lower triangle into the upper triangle.
void mirror_lower(std::span<Complex> m, std::size_t dim);

namespace detail {
const KernelSet& avx2_set();
}

}  // namespace cvnl::kernels
