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

#include <cmath>

#include "cvnl/kernels/kernels.hpp"

namespace cvnl::kernels {

namespace {

void accumulate_outer_scalar(Complex* m, std::size_t dim, const Complex* vecs, const double* weights,
                             std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
        const Complex* v = vecs + k * dim;
        const double w = weights[k];
        for (std::size_t i = 0; i < dim; ++i) {
            const double ar = w * v[i].real();
            const double ai = w * v[i].imag();
            Complex* row = m + i * dim;
            for (std::size_t j = 0; j <= i; ++j) {
                const double vr = v[j].real();
                const double vi = v[j].imag();
                row[j] += Complex(ar * vr + ai * vi, ai * vr - ar * vi);
            }
        }
    }
}

OverlapSums overlap_sums_scalar(const double* dx, const double* dy, std::size_t n) {
    OverlapSums out;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::exp(-(dx[i] * dx[i] + dy[i] * dy[i]));
        out.sum += f;
        out.sum_sq += f * f;
    }
    return out;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", &accumulate_outer_scalar, &overlap_sums_scalar};
    return set;
}

}  // namespace cvnl::kernels
