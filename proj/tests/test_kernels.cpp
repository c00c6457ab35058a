#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qnogo/kernels.hpp"
#include "qnogo/random.hpp"

using namespace qnogo;
namespace k = qnogo::kernels;

namespace {
std::vector<Complex> random_vec(Rng& rng, std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& x : v) x = rng.complex_gaussian();
    return v;
}

struct Batch {
    std::size_t dim, count;
    std::vector<double> re, im;
    k::BatchView view() const { return {dim, count, re.data(), im.data()}; }
    Complex at(std::size_t c, std::size_t j) const { return {re[c * count + j], im[c * count + j]}; }
};

Batch random_batch(Rng& rng, std::size_t dim, std::size_t count) {
    Batch b{dim, count, std::vector<double>(dim * count), std::vector<double>(dim * count)};
    for (std::size_t i = 0; i < dim * count; ++i) {
        b.re[i] = rng.gaussian();
        b.im[i] = rng.gaussian();
    }
    return b;
}

/// Reference row scan written from the contract.
k::RowMax naive_row(const Batch& ia, const Batch& oa, std::size_t i, const Batch& ib, const Batch& ob,
                    std::size_t j0) {
    k::RowMax r;
    for (std::size_t j = j0; j < ib.count; ++j) {
        Complex in = 0, out = 0;
        for (std::size_t c = 0; c < ia.dim; ++c) in += std::conj(ia.at(c, i)) * ib.at(c, j);
        for (std::size_t c = 0; c < oa.dim; ++c) out += std::conj(oa.at(c, i)) * ob.at(c, j);
        double v = std::abs(in - out);
        if (v > r.value) r = {v, j};
    }
    return r;
}
}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("scalar kernels match the naive definitions") {
        Rng rng(5);
        for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 64u}) {
            auto a = random_vec(rng, n), b = random_vec(rng, n);
            CHECK(std::abs(k::scalar::inner(a.data(), b.data(), n) - oracle::dot(a, b)) < 1e-12);
            auto m = random_vec(rng, n * n);
            std::vector<Complex> y(n);
            k::scalar::matvec(m.data(), a.data(), y.data(), n, n);
            Complex form = 0;
            for (std::size_t r = 0; r < n; ++r) {
                Complex s = 0;
                for (std::size_t c = 0; c < n; ++c) s += m[r * n + c] * a[c];
                CHECK(std::abs(y[r] - s) < 1e-12);
                form += std::conj(a[r]) * s;
            }
            CHECK(k::scalar::hermitian_form(m.data(), a.data(), n) == doctest::Approx(form.real()).epsilon(1e-12));
        }
    }

    TEST_CASE("scalar row scan matches the naive row scan") {
        Rng rng(8);
        auto ia = random_batch(rng, 2, 37), oa = random_batch(rng, 4, 37);
        auto ib = random_batch(rng, 2, 37), ob = random_batch(rng, 4, 37);
        for (std::size_t i : {0u, 5u, 36u})
            for (std::size_t j0 : {0u, 3u, 36u}) {
                auto want = naive_row(ia, oa, i, ib, ob, j0);
                auto got = k::scalar::discrepancy_row(ia.view(), oa.view(), i, ib.view(), ob.view(), j0);
                CHECK(got.index == want.index);
                CHECK(got.value == doctest::Approx(want.value).epsilon(1e-12));
            }
    }

#if QNOGO_HAVE_AVX2
    TEST_CASE("avx2 kernels agree with the scalar reference") {
        if (!k::avx2_available()) return;
        Rng rng(13);
        for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 33u, 64u}) {
            auto a = random_vec(rng, n), b = random_vec(rng, n), m = random_vec(rng, n * n);
            CHECK(std::abs(k::avx2::inner(a.data(), b.data(), n) - k::scalar::inner(a.data(), b.data(), n)) <
                  1e-12);
            std::vector<Complex> ys(n), yv(n);
            k::scalar::matvec(m.data(), a.data(), ys.data(), n, n);
            k::avx2::matvec(m.data(), a.data(), yv.data(), n, n);
            for (std::size_t r = 0; r < n; ++r) CHECK(std::abs(ys[r] - yv[r]) < 1e-12);
            CHECK(k::avx2::hermitian_form(m.data(), a.data(), n) ==
                  doctest::Approx(k::scalar::hermitian_form(m.data(), a.data(), n)).epsilon(1e-12));
        }
        for (std::size_t count : {1u, 3u, 4u, 5u, 64u, 101u})
            for (std::size_t od : {2u, 4u, 8u}) {
                auto ia = random_batch(rng, 2, count), oa = random_batch(rng, od, count);
                auto ib = random_batch(rng, 2, count), ob = random_batch(rng, od, count);
                for (std::size_t i = 0; i < count; i += 7) {
                    for (std::size_t j0 : {std::size_t{0}, count / 2, count - 1}) {
                        auto s = k::scalar::discrepancy_row(ia.view(), oa.view(), i, ib.view(), ob.view(), j0);
                        auto v = k::avx2::discrepancy_row(ia.view(), oa.view(), i, ib.view(), ob.view(), j0);
                        CHECK(v.index == s.index);
                        CHECK(std::abs(v.value - s.value) < 1e-12);
                    }
                }
            }
    }

    TEST_CASE("avx2 row scan keeps the first index on ties") {
        if (!k::avx2_available()) return;
        Batch in{2, 9, std::vector<double>(18, 0.0), std::vector<double>(18, 0.0)};
        Batch out{2, 9, std::vector<double>(18, 0.0), std::vector<double>(18, 0.0)};
        for (std::size_t j = 0; j < 9; ++j) in.re[j] = 1.0;  // every <in_i|in_j> = 1, outputs 0
        auto s = k::avx2::discrepancy_row(in.view(), out.view(), 0, in.view(), out.view(), 2);
        CHECK(s.index == 2);
        CHECK(s.value == 1.0);
    }
#endif

    TEST_CASE("dispatch can be pinned to the scalar backend") {
        auto before = k::active_backend();
        k::set_backend(k::Backend::Scalar);
        CHECK(k::active_backend() == k::Backend::Scalar);
        CHECK(k::backend_name(k::Backend::Scalar) == "scalar");
        if (!k::avx2_available()) CHECK_THROWS_AS(k::set_backend(k::Backend::Avx2), std::invalid_argument);
        k::set_backend(before);
    }
}
