#pragma once

// Data-parallel complex arithmetic used by the verifier and the fidelity
// optimizer. Every kernel has a portable scalar reference in
// qnogo::kernels::scalar and, on x86-64 builds, an AVX2 variant in
// qnogo::kernels::avx2. The unqualified entry points dispatch to the best
// backend the running CPU supports; QNOGO_KERNELS=scalar forces the reference.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qnogo::kernels {

using Complex = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend backend);

/// Structure-of-arrays view over `count` states of dimension `dim`.
/// Component k of state j lives at re[k * count + j], im[k * count + j].
struct BatchView {
    std::size_t dim = 0;
    std::size_t count = 0;
    const double* re = nullptr;
    const double* im = nullptr;
};

/// Maximum of a row scan together with the first index attaining it.
struct RowMax {
    double value = -1.0;
    std::size_t index = 0;
};

namespace scalar {
Complex inner(const Complex* a, const Complex* b, std::size_t n);
void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t rows, std::size_t cols);
double hermitian_form(const Complex* m, const Complex* v, std::size_t n);
RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin);
}  // namespace scalar

#if QNOGO_HAVE_AVX2
namespace avx2 {
Complex inner(const Complex* a, const Complex* b, std::size_t n);
void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t rows, std::size_t cols);
double hermitian_form(const Complex* m, const Complex* v, std::size_t n);
RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin);
}  // namespace avx2
#endif

/// True when this build contains the AVX2 kernels and the CPU can run them.
bool avx2_available();

Backend active_backend();

/// Pins the dispatch target. Requesting Avx2 where it is unavailable throws
/// std::invalid_argument.
void set_backend(Backend backend);

/// sum_k conj(a_k) * b_k
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

/// y = m x with m row-major (rows x cols).
void matvec(std::span<const Complex> m, std::span<const Complex> x, std::span<Complex> y,
            std::size_t rows, std::size_t cols);

/// Re(v^dagger m v) for a row-major n x n matrix.
double hermitian_form(std::span<const Complex> m, std::span<const Complex> v);

/// For j in [j_begin, count): |<in_a_i|in_b_j> - <out_a_i|out_b_j>|, returning the
/// largest value and the first j that attains it.
RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin);

}  // namespace qnogo::kernels
