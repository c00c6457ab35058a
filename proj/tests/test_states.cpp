#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "qnogo/states.hpp"

using namespace qnogo;

namespace {
bool same(const Qubit& a, const oracle::Q& b, double tol = 1e-14) {
    return std::abs(a.alpha() - b[0]) < tol && std::abs(a.beta() - b[1]) < tol;
}
}  // namespace

TEST_SUITE("states") {
    TEST_CASE("complement is orthogonal and matches alpha*|1> - beta*|0>") {
        Qubit q(0.6, Complex(0, 0.8));
        auto b = complement(q);
        CHECK(std::abs(inner_product(q.state(), b.state())) < 1e-15);
        CHECK(same(b, oracle::bar({q.alpha(), q.beta()})));
    }

    TEST_CASE("double complement is minus the identity") {
        Qubit q(Complex(0.6, 0.0), Complex(0.0, 0.8));
        auto bb = complement(complement(q));
        CHECK(same(bb, {-q.alpha(), -q.beta()}));
    }

    TEST_CASE("complement is antilinear: overlaps are conjugated") {
        auto s = sample_bloch(20, 3);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            auto a = inner_product(complement(s[i]).state(), complement(s[i + 1]).state());
            auto b = std::conj(inner_product(s[i].state(), s[i + 1].state()));
            CHECK(std::abs(a - b) < 1e-14);
        }
    }

    TEST_CASE("complement sends the Bloch vector to its antipode") {
        auto s = sample_bloch(10, 11);
        for (const auto& q : s) {
            auto v = q.bloch_vector();
            auto w = complement(q).bloch_vector();
            for (int k = 0; k < 3; ++k) CHECK(v[k] + w[k] == doctest::Approx(0.0).epsilon(1e-14));
        }
    }

    TEST_CASE("conjugate conjugates amplitudes") {
        Qubit q(0.6, Complex(0, 0.8));
        auto c = conjugate(q);
        CHECK(std::abs(c.beta() - Complex(0, -0.8)) < 1e-15);
    }

    TEST_CASE("qubit construction rejects unnormalized amplitudes") {
        CHECK_THROWS_AS(Qubit(1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(qubit_from_bloch({4.0, 0.0}), std::invalid_argument);
    }

    TEST_CASE("bloch angles match the oracle convention") {
        for (double t : {0.0, 0.3, 1.7, std::numbers::pi})
            for (double p : {0.0, 1.0, 4.0}) CHECK(same(qubit_from_bloch({t, p}), oracle::bloch(t, p)));
    }

    TEST_CASE("minus branches of the great circles are complements") {
        for (double t : {0.0, 0.4, 2.0, std::numbers::pi}) {
            auto p = circle_state({CircleKind::PolarPlus, t});
            auto m = circle_state({CircleKind::PolarMinus, t});
            CHECK(m == complement(p));
        }
        for (double f : {0.0, 0.4, 2.0, 6.0}) {
            auto p = circle_state({CircleKind::EquatorialPlus, f});
            auto m = circle_state({CircleKind::EquatorialMinus, f});
            CHECK(same(m, oracle::bar({p.alpha(), p.beta()})));
        }
    }

    TEST_CASE("great-circle parameters are validated") {
        CHECK_THROWS_AS(GreatCircleFamily(CircleKind::PolarPlus, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(GreatCircleFamily(CircleKind::EquatorialPlus, 7.0), std::invalid_argument);
        CHECK_THROWS_AS(equatorial_representative(-1.0), std::invalid_argument);
    }

    TEST_CASE("equatorial representative is a phase of the plus branch") {
        for (double f : {0.0, 1.0, 3.0, 5.5}) {
            auto r = equatorial_representative(f);
            auto p = circle_state({CircleKind::EquatorialPlus, f});
            CHECK(same_up_to_phase(r.state(), p.state()));
            CHECK(same(r, oracle::equatorial(f)));
        }
    }

    TEST_CASE("polar gram entries follow the polar sign pattern") {
        for (double t1 : {0.1, 1.0, 2.5})
            for (double t2 : {0.0, 0.7, 3.0}) {
                auto g = polar_gram(t1, t2);
                CHECK(std::abs(g[0] - g[3]) < 1e-15);
                CHECK(std::abs(g[1] + g[2]) < 1e-15);
                auto p1 = oracle::polar(t1), p2 = oracle::polar(t2);
                CHECK(std::abs(g[1] - oracle::dot(oracle::vec(p1), oracle::vec(oracle::bar(p2)))) < 1e-15);
            }
    }

    TEST_CASE("equatorial gram entries follow the equatorial sign pattern") {
        for (double f1 : {0.1, 1.0, 2.5})
            for (double f2 : {0.0, 0.7, 6.0}) {
                auto g = equatorial_gram(f1, f2);
                CHECK(std::abs(g[0] - g[3]) < 1e-15);
                CHECK(std::abs(g[1] - g[2]) < 1e-15);
            }
    }

    TEST_CASE("bloch samples are deterministic and normalized") {
        auto a = sample_bloch(50, 9), b = sample_bloch(50, 9), c = sample_bloch(50, 10);
        CHECK(a == b);
        CHECK_FALSE(a == c);
        for (const auto& q : a) CHECK(q.state().is_normalized());
        CHECK_THROWS_AS(sample_bloch(0, 1), std::invalid_argument);
    }

    TEST_CASE("hemisphere roles assign the complement to the far side") {
        std::array<double, 3> z{0, 0, 1};
        auto r = hemisphere_roles(Qubit::zero(), z);
        CHECK(r.psi == Qubit::zero());
        auto s = hemisphere_roles(Qubit::one(), z);
        CHECK(same_up_to_phase(s.psi.state(), Qubit::zero().state()));
        CHECK(same_up_to_phase(s.psi_bar.state(), Qubit::one().state()));
    }
}
