#include "qnogo/kernels.hpp"

#include <cmath>

namespace qnogo::kernels::scalar {

Complex inner(const Complex* a, const Complex* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[k].real(), ai = a[k].imag();
        const double br = b[k].real(), bi = b[k].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        double re = 0.0;
        double im = 0.0;
        const Complex* row = m + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            const double mr = row[c].real(), mi = row[c].imag();
            const double xr = x[c].real(), xi = x[c].imag();
            re += mr * xr - mi * xi;
            im += mr * xi + mi * xr;
        }
        y[r] = {re, im};
    }
}

double hermitian_form(const Complex* m, const Complex* v, std::size_t n) {
    // Re(v^dagger M v) = sum_r Re(conj(v_r) (M v)_r)
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double re = 0.0;
        double im = 0.0;
        const Complex* row = m + r * n;
        for (std::size_t c = 0; c < n; ++c) {
            const double mr = row[c].real(), mi = row[c].imag();
            const double xr = v[c].real(), xi = v[c].imag();
            re += mr * xr - mi * xi;
            im += mr * xi + mi * xr;
        }
        acc += v[r].real() * re + v[r].imag() * im;
    }
    return acc;
}

RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin) {
    RowMax best;
    const std::size_t n = in_b.count;
    for (std::size_t j = j_begin; j < n; ++j) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < in_a.dim; ++k) {
            const double ar = in_a.re[k * in_a.count + i];
            const double ai = in_a.im[k * in_a.count + i];
            const double br = in_b.re[k * n + j];
            const double bi = in_b.im[k * n + j];
            re += ar * br + ai * bi;
            im += ar * bi - ai * br;
        }
        for (std::size_t k = 0; k < out_a.dim; ++k) {
            const double ar = out_a.re[k * out_a.count + i];
            const double ai = out_a.im[k * out_a.count + i];
            const double br = out_b.re[k * n + j];
            const double bi = out_b.im[k * n + j];
            re -= ar * br + ai * bi;
            im -= ar * bi - ai * br;
        }
        const double d = std::sqrt(re * re + im * im);
        if (d > best.value) {
            best.value = d;
            best.index = j;
        }
    }
    return best;
}

}  // namespace qnogo::kernels::scalar
