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

#include <immintrin.h>

#include <cmath>

#include "cvnl/kernels/kernels.hpp"

namespace cvnl::kernels {

namespace {

// exp(x) for x <= 0. Range reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-13 Taylor polynomial (truncation < 5e-18 relative). Inputs below
// -708 flush to 0.
inline __m256d exp_nonpositive(__m256d x) {
    const __m256d lo_limit = _mm256_set1_pd(-708.0);
    const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
    x = _mm256_max_pd(x, lo_limit);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

    static constexpr double kInvFact[] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
        1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
        1.0 / 6.0,          0.5,               1.0,              1.0,
    };
    __m256d p = _mm256_set1_pd(kInvFact[0]);
    for (int k = 1; k < 14; ++k) {
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[k]));
    }

    // 2^n through the exponent field; n + 1023 stays in [1, 2046] after the clamp.
    const __m256d shifted = _mm256_add_pd(n, _mm256_set1_pd(0x1.8p52));
    __m256i bits = _mm256_castpd_si256(shifted);
    bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
    bits = _mm256_slli_epi64(bits, 52);
    const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, result);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

OverlapSums overlap_sums_avx2(const double* dx, const double* dy, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    __m256d acc_sq = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(dx + i);
        const __m256d y = _mm256_loadu_pd(dy + i);
        const __m256d d2 = _mm256_fmadd_pd(x, x, _mm256_mul_pd(y, y));
        const __m256d f = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), d2));
        acc = _mm256_add_pd(acc, f);
        acc_sq = _mm256_fmadd_pd(f, f, acc_sq);
    }
    OverlapSums out{hsum(acc), hsum(acc_sq)};
    for (; i < n; ++i) {
        const double f = std::exp(-(dx[i] * dx[i] + dy[i] * dy[i]));
        out.sum += f;
        out.sum_sq += f * f;
    }
    return out;
}

// One complex element of row i: m += a * conj(v) with a = w v_i.
// Packed as [re, im, re, im]: a*conj(v) = A1*v + A2*swap(v),
// A1 = [ar, -ar, ar, -ar], A2 = [ai, ai, ai, ai].
struct NodeCoeffs {
    __m256d a1;
    __m256d a2;
};

inline NodeCoeffs coeffs(const Complex& vi, double w) {
    const double ar = w * vi.real();
    const double ai = w * vi.imag();
    return {_mm256_setr_pd(ar, -ar, ar, -ar), _mm256_set1_pd(ai)};
}

inline __m256d update(__m256d m, const NodeCoeffs& c, const double* v) {
    const __m256d x = _mm256_loadu_pd(v);
    const __m256d xs = _mm256_permute_pd(x, 0b0101);
    m = _mm256_fmadd_pd(c.a1, x, m);
    return _mm256_fmadd_pd(c.a2, xs, m);
}

inline void update_tail(Complex& m, const Complex& vi, double w, const Complex& vj) {
    const double ar = w * vi.real();
    const double ai = w * vi.imag();
    m += Complex(ar * vj.real() + ai * vj.imag(), ai * vj.real() - ar * vj.imag());
}

void accumulate_outer_avx2(Complex* m, std::size_t dim, const Complex* vecs, const double* weights,
                           std::size_t count) {
    std::size_t k = 0;
    // Four nodes per pass over the matrix so each row chunk is loaded and stored once.
    for (; k + 4 <= count; k += 4) {
        const Complex* v0 = vecs + (k + 0) * dim;
        const Complex* v1 = vecs + (k + 1) * dim;
        const Complex* v2 = vecs + (k + 2) * dim;
        const Complex* v3 = vecs + (k + 3) * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            const NodeCoeffs c0 = coeffs(v0[i], weights[k + 0]);
            const NodeCoeffs c1 = coeffs(v1[i], weights[k + 1]);
            const NodeCoeffs c2 = coeffs(v2[i], weights[k + 2]);
            const NodeCoeffs c3 = coeffs(v3[i], weights[k + 3]);
            double* row = reinterpret_cast<double*>(m + i * dim);
            const std::size_t len = i + 1;
            std::size_t j = 0;
            for (; j + 2 <= len; j += 2) {
                __m256d acc = _mm256_loadu_pd(row + 2 * j);
                acc = update(acc, c0, reinterpret_cast<const double*>(v0 + j));
                acc = update(acc, c1, reinterpret_cast<const double*>(v1 + j));
                acc = update(acc, c2, reinterpret_cast<const double*>(v2 + j));
                acc = update(acc, c3, reinterpret_cast<const double*>(v3 + j));
                _mm256_storeu_pd(row + 2 * j, acc);
            }
            if (j < len) {
                Complex& target = m[i * dim + j];
                update_tail(target, v0[i], weights[k + 0], v0[j]);
                update_tail(target, v1[i], weights[k + 1], v1[j]);
                update_tail(target, v2[i], weights[k + 2], v2[j]);
                update_tail(target, v3[i], weights[k + 3], v3[j]);
            }
        }
    }
    for (; k < count; ++k) {
        const Complex* v = vecs + k * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            const NodeCoeffs c = coeffs(v[i], weights[k]);
            double* row = reinterpret_cast<double*>(m + i * dim);
            const std::size_t len = i + 1;
            std::size_t j = 0;
            for (; j + 2 <= len; j += 2) {
                __m256d acc = _mm256_loadu_pd(row + 2 * j);
                acc = update(acc, c, reinterpret_cast<const double*>(v + j));
                _mm256_storeu_pd(row + 2 * j, acc);
            }
            if (j < len) {
                update_tail(m[i * dim + j], v[i], weights[k], v[j]);
            }
        }
    }
}

}  // namespace

namespace detail {
const KernelSet& avx2_set() {
    static const KernelSet set{"avx2", &accumulate_outer_avx2, &overlap_sums_avx2};
    return set;
}
}  // namespace detail

}  // namespace cvnl::kernels
