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

#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "cvnl/kernels/kernels.hpp"

namespace cvnl::kernels {

const KernelSet* avx2_kernels() {
#if defined(CVNL_BUILD_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::avx2_set() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelSet& select() {
    const char* forced = std::getenv("CVNL_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
        return scalar_kernels();
    }
    if (const KernelSet* simd = avx2_kernels()) {
        return *simd;
    }
    return scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() {
    static const KernelSet& set = select();
    return set;
}

void accumulate_outer(std::span<Complex> m, std::size_t dim, std::span<const Complex> vecs,
                      std::span<const double> weights) {
    if (m.size() != dim * dim || vecs.size() != weights.size() * dim) {
        throw std::invalid_argument("accumulate_outer: inconsistent buffer sizes");
    }
    active_kernels().accumulate_outer(m.data(), dim, vecs.data(), weights.data(), weights.size());
}

OverlapSums overlap_sums(std::span<const double> dx, std::span<const double> dy) {
    if (dx.size() != dy.size()) {
        throw std::invalid_argument("overlap_sums: length mismatch");
    }
    return active_kernels().overlap_sums(dx.data(), dy.data(), dx.size());
}

void mirror_lower(std::span<Complex> m, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        m[i * dim + i] = Complex(m[i * dim + i].real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            m[j * dim + i] = std::conj(m[i * dim + j]);
        }
    }
}

}  // namespace cvnl::kernels
