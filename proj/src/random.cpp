#include "qnogo/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qnogo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return Rng(h);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

DenseOperator random_unitary(std::size_t dim, Rng& rng) {
    // Columns are orthonormalized in order; entries stored row-major.
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) cols[c][r] = rng.complex_gaussian();
        for (std::size_t p = 0; p < c; ++p) {
            Complex proj = 0.0;
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(cols[p][r]) * cols[c][r];
            for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= proj * cols[p][r];
        }
        double n = 0.0;
        for (const Complex& x : cols[c]) n += std::norm(x);
        n = std::sqrt(n);
        for (Complex& x : cols[c]) x /= n;
    }
    std::vector<Complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) e[r * dim + c] = cols[c][r];
    return DenseOperator(dim, std::move(e));
}

}  // namespace qnogo
