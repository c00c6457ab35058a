#include <cmath>

#include "doctest.h"
#include "qnogo/gates.hpp"
#include "qnogo/random.hpp"

using namespace qnogo;

TEST_SUITE("gates") {
    TEST_CASE("named gates are unitary") {
        for (const auto& g : {gates::hadamard(), gates::hadamard_polar(), gates::hadamard_equatorial(),
                              gates::pauli_x(), gates::pauli_y(), gates::pauli_z(), gates::minus_i_sigma_y()})
            CHECK(is_unitary(g));
        CHECK(is_unitary(gates::cnot_computational()));
    }

    TEST_CASE("hadamard polar sends |0> to (|0> + |1>)/sqrt2 and |1> to (|1> - |0>)/sqrt2") {
        auto h = gates::hadamard_polar();
        auto a = apply(h, Qubit::zero().state());
        CHECK(std::abs(a[0] - 1 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(a[1] - 1 / std::sqrt(2.0)) < 1e-15);
        auto b = apply(h, Qubit::one().state());
        CHECK(std::abs(b[0] + 1 / std::sqrt(2.0)) < 1e-15);
    }

    TEST_CASE("complementing map produces the complement") {
        auto s = sample_bloch(10, 2);
        for (const auto& q : s) {
            auto c = apply_antiunitary(gates::complementing(), q.state());
            CHECK(c == complement(q).state());
        }
    }

    TEST_CASE("unequal gate rejects complex amplitudes and is unitary for real ones") {
        CHECK_THROWS_AS(gates::unequal_gate({0.6, Complex(0, 0.8)}), std::invalid_argument);
        CHECK_THROWS_AS(gates::UnequalAmplitudes(1.0, 1.0), std::invalid_argument);
        CHECK(is_unitary(gates::unequal_gate({0.6, 0.8})));
    }

    TEST_CASE("paulis in a rotated basis reduce to the usual ones at |0>") {
        CHECK(gates::pauli_in_basis(Qubit::zero(), gates::PauliAxis::Z).max_abs_diff(gates::pauli_z()) < 1e-15);
        CHECK(gates::pauli_in_basis(Qubit::zero(), gates::PauliAxis::X).max_abs_diff(gates::pauli_x()) < 1e-15);
        CHECK(gates::pauli_in_basis(Qubit::zero(), gates::PauliAxis::Y).max_abs_diff(gates::pauli_y()) < 1e-15);
        CHECK(gates::cnot_in_basis(Qubit::zero()).max_abs_diff(gates::cnot_computational()) < 1e-15);
    }

    TEST_CASE("cnot in basis is unitary for random q") {
        for (const auto& q : sample_bloch(10, 4)) CHECK(is_unitary(gates::cnot_in_basis(q)));
    }
}
