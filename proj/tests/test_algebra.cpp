#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"
#include "qnogo/algebra.hpp"
#include "qnogo/gates.hpp"
#include "qnogo/random.hpp"

using namespace qnogo;

TEST_SUITE("algebra") {
    TEST_CASE("state vectors reject unsupported dimensions and non-finite amplitudes") {
        CHECK_THROWS_AS(StateVector({1.0, 0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(StateVector({Complex(NAN, 0), 0.0}), std::invalid_argument);
        CHECK_NOTHROW(StateVector({1.0}));
        CHECK(is_supported_dim(16));
        CHECK_FALSE(is_supported_dim(32));
    }

    TEST_CASE("inner product is conjugate-linear in its first argument") {
        StateVector u{Complex(0, 1), 0.0};
        StateVector v{1.0, 0.0};
        CHECK(std::abs(inner_product(u, v) - Complex(0, -1)) < 1e-15);
        CHECK(std::abs(inner_product(v, u) - Complex(0, 1)) < 1e-15);
    }

    TEST_CASE("tensor product puts the left factor in the most significant position") {
        StateVector u{0.0, 1.0};
        StateVector v{1.0, 0.0};
        auto w = tensor(u, v);  // |10>
        CHECK(w == StateVector::basis(4, 2));
        auto x = tensor(gates::pauli_x(), gates::identity());
        CHECK(apply(x, StateVector::basis(4, 0)) == StateVector::basis(4, 2));
    }

    TEST_CASE("tensor products agree with the oracle kron") {
        Rng rng(7);
        std::vector<Complex> a{rng.complex_gaussian(), rng.complex_gaussian()};
        std::vector<Complex> b{rng.complex_gaussian(), rng.complex_gaussian(), rng.complex_gaussian(),
                               rng.complex_gaussian()};
        auto t = tensor(StateVector(a), StateVector(b));
        auto o = oracle::kron(a, b);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(t[i] - o[i]) < 1e-15);
    }

    TEST_CASE("apply does not renormalize") {
        auto two = 2.0 * DenseOperator::identity(2);
        CHECK(apply(two, StateVector{1.0, 0.0}).squared_norm() == doctest::Approx(4.0));
    }

    TEST_CASE("random unitaries are unitary") {
        Rng rng(1);
        for (std::size_t d : {2u, 4u, 8u}) CHECK(is_unitary(random_unitary(d, rng), 1e-12));
    }

    TEST_CASE("antiunitary maps reject non-unitary parts") {
        CHECK_THROWS_AS(AntiUnitaryMap(2.0 * DenseOperator::identity(2)), std::invalid_argument);
        auto a = AntiUnitaryMap::conjugation(2);
        auto out = apply_antiunitary(a, StateVector{Complex(0, 1) / std::sqrt(2.0), 1 / std::sqrt(2.0)});
        CHECK(std::abs(out[0] - Complex(0, -1) / std::sqrt(2.0)) < 1e-15);
    }

    TEST_CASE("general K map at the endpoints is its unitary or antiunitary part") {
        Qubit q(0.6, Complex(0, 0.8));
        auto ku = GeneralKMap::unitary(gates::identity());
        CHECK(ku.apply(q.state()) == q.state());
        auto ka = GeneralKMap::antiunitary(gates::complementing());
        auto qb = complement(q);
        auto got = ka.apply(q.state());
        CHECK(std::abs(got[0] - qb.alpha()) < 1e-15);
        CHECK(std::abs(got[1] - qb.beta()) < 1e-15);
    }

    TEST_CASE("density operators validate trace and positivity") {
        CHECK_THROWS_AS(DensityOperator(2, {1.0, 0.0, 0.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(DensityOperator(2, {1.5, 0.0, 0.0, -0.5}), std::invalid_argument);
        CHECK_THROWS_AS(DensityOperator(2, {0.5, 1.0, 0.0, 0.5}), std::invalid_argument);
        CHECK_NOTHROW(DensityOperator(2, {0.5, 0.0, 0.0, 0.5}));
    }

    TEST_CASE("partial trace of a Bell state is maximally mixed") {
        StateVector bell{1 / std::sqrt(2.0), 0.0, 0.0, 1 / std::sqrt(2.0)};
        auto rho = DensityOperator::pure(bell);
        std::size_t dims[] = {2, 2};
        std::size_t keep[] = {1};
        auto r = partial_trace(rho, keep, dims);
        CHECK(r.max_abs_diff(DensityOperator(2, {0.5, 0.0, 0.0, 0.5})) < 1e-15);
    }

    TEST_CASE("partial trace keeps a product factor") {
        Qubit a(0.6, 0.8), b(Complex(0, 1), 0.0);
        StateVector c{1.0, 0.0};
        auto rho = DensityOperator::pure(tensor(tensor(a.state(), b.state()), c));
        std::size_t dims[] = {2, 2, 2};
        std::size_t keep[] = {0};
        auto r = partial_trace(rho, keep, dims);
        CHECK(r.max_abs_diff(DensityOperator::pure(a.state())) < 1e-15);
        CHECK(fidelity_pure_mixed(a.state(), r) == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("phase mismatch ignores global phase") {
        Qubit q(0.6, Complex(0, 0.8));
        auto p = Complex(std::cos(1.1), std::sin(1.1)) * q.state();
        CHECK(phase_mismatch(q.state(), p) < 1e-15);
        CHECK(same_up_to_phase(q.state(), p));
        CHECK(phase_mismatch(Qubit::zero().state(), Qubit::plus().state()) == doctest::Approx(0.5));
    }
}
