#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "qnogo/gates.hpp"
#include "qnogo/kernels.hpp"
#include "qnogo/random.hpp"
#include "qnogo/verifier.hpp"

using namespace qnogo;
using namespace qnogo::verify;

namespace {
const StateVector k0 = StateVector::basis(2, 0);
const StateVector k1 = StateVector::basis(2, 1);

MachineSpec basis_cloner() { return MachineSpec::from_basis_action(k0, k1, k0, k0, LinearExtension{}); }
}  // namespace

TEST_SUITE("verifier") {
    TEST_CASE("machine specs report whether their basis outputs are orthogonal") {
        CHECK_FALSE(MachineSpec(tensor(k0, k0), tensor(k0, k0), LinearExtension{}).is_isometric());
        CHECK(basis_cloner().is_isometric());
        CHECK_THROWS_AS(MachineSpec(tensor(k0, k0), k1, LinearExtension{}), std::invalid_argument);
    }

    TEST_CASE("linear cloner deviation matches the naive oracle") {
        auto m = basis_cloner();
        auto t = TargetTransform::clone();
        for (const auto& q : sample_bloch(200, 17))
            CHECK(machine_deviation(m, t, q) ==
                  doctest::Approx(oracle::clone_deviation({q.alpha(), q.beta()})).epsilon(1e-12));
    }

    TEST_CASE("cloner is exact on the basis and off by one half at |+>") {
        auto m = basis_cloner();
        auto t = TargetTransform::clone();
        CHECK(machine_deviation(m, t, Qubit::zero()) < 1e-15);
        CHECK(machine_deviation(m, t, Qubit::one()) < 1e-15);
        CHECK(machine_deviation(m, t, Qubit::plus()) == doctest::Approx(0.5).epsilon(1e-15));
        auto v = check_machine(m, t, state_set(StateSet::Bloch, 64, 1));
        CHECK_FALSE(v.realizable);
        CHECK(v.condition == Condition::LinearExtensionVsIdeal);
        CHECK(v.witness.has_value());
        CHECK(check_machine(m, t, {Qubit::zero(), Qubit::one()}).realizable);
    }

    TEST_CASE("complementing machine fails under antilinear extension") {
        auto mcs = gates::minus_i_sigma_y();
        auto m = MachineSpec::from_basis_action(apply(mcs, k0), apply(mcs, k1), k0, k0, AntilinearExtension{});
        auto v = check_machine(m, TargetTransform::complement(), state_set(StateSet::Bloch, 64, 1));
        CHECK_FALSE(v.realizable);
        CHECK(v.condition == Condition::AntilinearExtensionVsIdeal);
    }

    TEST_CASE("hybrid machines are impossible for every lambda") {
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            auto m = MachineSpec::hybrid(lambda, gates::identity(), gates::complementing(), k0, k0);
            auto v = check_machine(m, TargetTransform::clone_complement(lambda), state_set(StateSet::Bloch, 64, 1));
            CHECK_FALSE(v.realizable);
            CHECK(v.violation > 0.1);
        }
    }

    TEST_CASE("aligned ancilla mode never exceeds the fixed mode") {
        auto m = basis_cloner();
        auto t = TargetTransform::clone();
        for (const auto& q : sample_bloch(50, 2))
            CHECK(machine_deviation(m, t, q, AncillaMode::Aligned) <= machine_deviation(m, t, q) + 1e-15);
    }

    TEST_CASE("restricted hadamards hold on their own circles only") {
        auto polar = state_set(StateSet::Polar, 64, 0);
        auto eq = state_set(StateSet::Equatorial, 64, 0);
        auto hs = TargetTransform::hadamard_sum();
        auto hp = TargetTransform::hadamard_phase();
        CHECK(check_universal_gate(gates::hadamard_polar(), hs, polar).realizable);
        CHECK(check_universal_gate(gates::hadamard_equatorial(), hp, eq).realizable);
        auto cross1 = check_universal_gate(gates::hadamard_polar(), hs, eq);
        auto cross2 = check_universal_gate(gates::hadamard_equatorial(), hp, polar);
        CHECK_FALSE(cross1.realizable);
        CHECK_FALSE(cross2.realizable);
        CHECK(cross1.condition == Condition::HadamardSumRule);
        CHECK(cross2.violation > 0.05);
    }

    TEST_CASE("gate verdicts match the naive rule oracle") {
        const std::array<std::array<Complex, 2>, 2> hp{{{1 / std::sqrt(2.0), -1 / std::sqrt(2.0)},
                                                         {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}}};
        const double r = 1 / std::sqrt(2.0);
        const Complex i(0, 1);
        const std::array<std::array<Complex, 2>, 2> sum{{{r, r}, {r, -r}}};
        const std::array<std::array<Complex, 2>, 2> phase{{{r, i * r}, {i * r, r}}};
        auto states = state_set(StateSet::Bloch, 40, 6);
        double w_sum = 0, w_phase = 0;
        for (const auto& q : states) {
            w_sum = std::max(w_sum, oracle::rule_violation(hp, {q.alpha(), q.beta()}, sum));
            w_phase = std::max(w_phase, oracle::rule_violation(hp, {q.alpha(), q.beta()}, phase));
        }
        auto v = check_universal_gate(gates::hadamard_polar(), TargetTransform::hadamard_sum(), states);
        CHECK(v.violation == doctest::Approx(w_sum).epsilon(1e-12));
        auto w = check_universal_gate(gates::hadamard_polar(), TargetTransform::hadamard_phase(), states);
        CHECK(w.violation == doctest::Approx(w_phase).epsilon(1e-12));
    }

    TEST_CASE("required rules validate the complement sign") {
        CHECK_THROWS_AS(required_rules(TargetTransform::hadamard_sum(), Qubit::zero(), 0.5), std::invalid_argument);
        CHECK(required_rules(TargetTransform::cnot(), Qubit::zero()).size() == 4);
    }

    TEST_CASE("cnot in the computational basis fails at |+>") {
        auto v = check_cnot_universal(gates::cnot_computational(), {Qubit::plus()});
        CHECK_FALSE(v.realizable);
        CHECK(v.violation == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.condition == Condition::CnotRule);
        for (const auto& q : sample_bloch(20, 5)) CHECK(check_cnot_universal(gates::cnot_in_basis(q), {q}).realizable);
    }

    TEST_CASE("unequal audit matches the closed form") {
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            double t1 = rng.uniform(0, std::numbers::pi), t2 = rng.uniform(0, std::numbers::pi);
            double ang = rng.uniform(0, 2 * std::numbers::pi), ph = rng.uniform(0, 2 * std::numbers::pi);
            Complex a = std::cos(ang), b = std::polar(std::sin(ang), ph);
            CHECK(audit_unequal(a, b, t1, t2) ==
                  doctest::Approx(oracle::unequal_closed_form(a, b, t1, t2)).epsilon(1e-12));
            CHECK(audit_unequal(std::cos(ang), std::sin(ang), t1, t2) < 1e-14);
        }
    }

    TEST_CASE("inner-product audits vanish exactly where the gates exist") {
        auto hs = TargetTransform::hadamard_sum();
        CHECK(audit_inner_product(hs, {qubit_from_bloch({0.3, 0}), qubit_from_bloch({2.0, 0})}) < 1e-14);
        CHECK(audit_inner_product(hs, {Qubit::zero(), Qubit::plus()}) < 1e-14);
        CHECK(audit_inner_product(hs, {Qubit(1 / std::sqrt(2.0), Complex(0, 1 / std::sqrt(2.0))), Qubit::zero()}) >
              0.1);
    }

    TEST_CASE("witness search is deterministic and finds a violation on the sphere") {
        auto a = witness_search(TargetTransform::hadamard_sum(), 200, 9);
        auto b = witness_search(TargetTransform::hadamard_sum(), 200, 9);
        CHECK(a.violation == b.violation);
        CHECK(a.first_index == b.first_index);
        CHECK(a.second_index == b.second_index);
        CHECK(a.violation > 1.0);
        CHECK(witness_search(TargetTransform::hadamard_sum(), 64, 9, StateSet::Polar).violation < 1e-12);
        CHECK(witness_search(TargetTransform::hadamard_phase(), 64, 9, StateSet::Equatorial).violation < 1e-12);
    }

    TEST_CASE("witness search gives the same answer on every kernel backend") {
        auto before = kernels::active_backend();
        kernels::set_backend(kernels::Backend::Scalar);
        auto s = witness_search(TargetTransform::cnot(), 150, 21);
        if (kernels::avx2_available()) {
            kernels::set_backend(kernels::Backend::Avx2);
            auto v = witness_search(TargetTransform::cnot(), 150, 21);
            CHECK(v.first_index == s.first_index);
            CHECK(v.second_index == s.second_index);
            CHECK(std::abs(v.violation - s.violation) < 1e-12);
        }
        kernels::set_backend(before);
    }

    TEST_CASE("gram identities hold on their circles and fail across them") {
        CHECK(gram_residual(GramIdentity::SameOverlap, StateSet::Polar, 50) < 1e-14);
        CHECK(gram_residual(GramIdentity::PolarCross, StateSet::Polar, 50) < 1e-14);
        CHECK(gram_residual(GramIdentity::SameOverlap, StateSet::Equatorial, 50) < 1e-14);
        CHECK(gram_residual(GramIdentity::EquatorialCross, StateSet::Equatorial, 50) < 1e-14);
        CHECK(gram_residual(GramIdentity::EquatorialCross, StateSet::Polar, 50) > 0.1);
        CHECK(gram_residual(GramIdentity::PolarCross, StateSet::Equatorial, 50) > 0.1);
        CHECK_THROWS_AS(gram_residual(GramIdentity::SameOverlap, StateSet::Bloch, 50), std::invalid_argument);
        auto checks = circle_check(20);
        CHECK(checks.size() == 6);
        for (const auto& c : checks) CHECK(c.passed(1e-12));
    }

    TEST_CASE("state sets start with the six axis states") {
        auto s = state_set(StateSet::Bloch, 4, 1);
        CHECK(s.size() == 10);
        CHECK(s[0] == Qubit::zero());
        CHECK(state_set(StateSet::Bloch, 4, 1, false).size() == 4);
        auto p = state_set(StateSet::Polar, 5, 0);
        CHECK(same_up_to_phase(p.back().state(), Qubit::one().state()));
    }
}
