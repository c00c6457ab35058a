#include "qnogo/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace qnogo::kernels::avx2 {
namespace {

// Two interleaved complex values per register: [re0 im0 re1 im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Even lanes minus odd lanes, summed.
inline double hsum_even_minus_odd(__m256d v) {
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    return hsum(_mm256_mul_pd(v, sign));
}

}  // namespace

Complex inner(const Complex* a, const Complex* b, std::size_t n) {
    __m256d p = _mm256_setzero_pd();  // [ar br, ai bi, ...]
    __m256d q = _mm256_setzero_pd();  // [ar bi, ai br, ...]
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = load2(a + k);
        const __m256d vb = load2(b + k);
        p = _mm256_add_pd(p, _mm256_mul_pd(va, vb));
        q = _mm256_add_pd(q, _mm256_mul_pd(va, swap_pairs(vb)));
    }
    double re = hsum(p);
    double im = hsum_even_minus_odd(q);
    for (; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

namespace {

inline Complex row_times(const Complex* row, const Complex* x, std::size_t cols) {
    __m256d p = _mm256_setzero_pd();  // [mr xr, mi xi]
    __m256d q = _mm256_setzero_pd();  // [mr xi, mi xr]
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
        const __m256d vm = load2(row + c);
        const __m256d vx = load2(x + c);
        p = _mm256_add_pd(p, _mm256_mul_pd(vm, vx));
        q = _mm256_add_pd(q, _mm256_mul_pd(vm, swap_pairs(vx)));
    }
    double re = hsum_even_minus_odd(p);
    double im = hsum(q);
    for (; c < cols; ++c) {
        re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
        im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    return {re, im};
}

}  // namespace

void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = row_times(m + r * cols, x, cols);
}

double hermitian_form(const Complex* m, const Complex* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const Complex mv = row_times(m + r * n, v, n);
        acc += v[r].real() * mv.real() + v[r].imag() * mv.imag();
    }
    return acc;
}

RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin) {
    const std::size_t n = in_b.count;
    __m256d best_v = _mm256_set1_pd(-1.0);
    __m256d best_i = _mm256_setzero_pd();
    std::size_t j = j_begin;
    for (; j + 4 <= n; j += 4) {
        __m256d re = _mm256_setzero_pd();
        __m256d im = _mm256_setzero_pd();
        for (std::size_t k = 0; k < in_a.dim; ++k) {
            const __m256d ar = _mm256_set1_pd(in_a.re[k * in_a.count + i]);
            const __m256d ai = _mm256_set1_pd(in_a.im[k * in_a.count + i]);
            const __m256d br = _mm256_loadu_pd(in_b.re + k * n + j);
            const __m256d bi = _mm256_loadu_pd(in_b.im + k * n + j);
            re = _mm256_add_pd(re, _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi)));
            im = _mm256_add_pd(im, _mm256_sub_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br)));
        }
        for (std::size_t k = 0; k < out_a.dim; ++k) {
            const __m256d ar = _mm256_set1_pd(out_a.re[k * out_a.count + i]);
            const __m256d ai = _mm256_set1_pd(out_a.im[k * out_a.count + i]);
            const __m256d br = _mm256_loadu_pd(out_b.re + k * n + j);
            const __m256d bi = _mm256_loadu_pd(out_b.im + k * n + j);
            re = _mm256_sub_pd(re, _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi)));
            im = _mm256_sub_pd(im, _mm256_sub_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br)));
        }
        const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
        const __m256d idx = _mm256_set_pd(double(j + 3), double(j + 2), double(j + 1), double(j));
        const __m256d better = _mm256_cmp_pd(d, best_v, _CMP_GT_OQ);
        best_v = _mm256_blendv_pd(best_v, d, better);
        best_i = _mm256_blendv_pd(best_i, idx, better);
    }

    alignas(32) double lane_v[4];
    alignas(32) double lane_i[4];
    _mm256_store_pd(lane_v, best_v);
    _mm256_store_pd(lane_i, best_i);
    RowMax best;
    for (int l = 0; l < 4; ++l) {
        const auto li = static_cast<std::size_t>(lane_i[l]);
        if (lane_v[l] > best.value || (lane_v[l] == best.value && lane_v[l] >= 0.0 && li < best.index)) {
            best.value = lane_v[l];
            best.index = li;
        }
    }

    if (j < n) {
        const RowMax tail = scalar::discrepancy_row(in_a, out_a, i, in_b, out_b, j);
        if (tail.value > best.value) best = tail;
    }
    return best;
}

}  // namespace qnogo::kernels::avx2
