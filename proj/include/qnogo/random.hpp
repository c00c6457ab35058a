#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qnogo/algebra.hpp"

namespace qnogo {

/// Seeded generator with platform-independent derived distributions
/// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Stream derived from a base seed and a list of stream keys.
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double gaussian();
    Complex complex_gaussian();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-like random unitary: Gram-Schmidt on a complex Gaussian matrix.
DenseOperator random_unitary(std::size_t dim, Rng& rng);

}  // namespace qnogo
