#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qnogo/kernels.hpp"

namespace qnogo::kernels {
namespace {

Backend detect() {
    if (const char* env = std::getenv("QNOGO_KERNELS"); env && std::string(env) == "scalar") {
        return Backend::Scalar;
    }
    return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

void check_dims(std::size_t got, std::size_t want, const char* what) {
    if (got != want) throw std::invalid_argument(std::string("kernel size mismatch: ") + what);
}

}  // namespace

std::string_view backend_name(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if QNOGO_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
    if (backend == Backend::Avx2 && !avx2_available()) {
        throw std::invalid_argument("AVX2 kernels are not available on this build or CPU");
    }
    current().store(backend, std::memory_order_relaxed);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    check_dims(a.size(), b.size(), "inner");
#if QNOGO_HAVE_AVX2
    if (active_backend() == Backend::Avx2) return avx2::inner(a.data(), b.data(), a.size());
#endif
    return scalar::inner(a.data(), b.data(), a.size());
}

void matvec(std::span<const Complex> m, std::span<const Complex> x, std::span<Complex> y,
            std::size_t rows, std::size_t cols) {
    check_dims(m.size(), rows * cols, "matvec matrix");
    check_dims(x.size(), cols, "matvec input");
    check_dims(y.size(), rows, "matvec output");
#if QNOGO_HAVE_AVX2
    if (active_backend() == Backend::Avx2) return avx2::matvec(m.data(), x.data(), y.data(), rows, cols);
#endif
    scalar::matvec(m.data(), x.data(), y.data(), rows, cols);
}

double hermitian_form(std::span<const Complex> m, std::span<const Complex> v) {
    check_dims(m.size(), v.size() * v.size(), "hermitian_form");
#if QNOGO_HAVE_AVX2
    if (active_backend() == Backend::Avx2) return avx2::hermitian_form(m.data(), v.data(), v.size());
#endif
    return scalar::hermitian_form(m.data(), v.data(), v.size());
}

RowMax discrepancy_row(const BatchView& in_a, const BatchView& out_a, std::size_t i,
                       const BatchView& in_b, const BatchView& out_b, std::size_t j_begin) {
    if (in_a.dim != in_b.dim || out_a.dim != out_b.dim || in_b.count != out_b.count ||
        in_a.count != out_a.count || i >= in_a.count) {
        throw std::invalid_argument("discrepancy_row: inconsistent batches");
    }
#if QNOGO_HAVE_AVX2
    if (active_backend() == Backend::Avx2) return avx2::discrepancy_row(in_a, out_a, i, in_b, out_b, j_begin);
#endif
    return scalar::discrepancy_row(in_a, out_a, i, in_b, out_b, j_begin);
}

}  // namespace qnogo::kernels
