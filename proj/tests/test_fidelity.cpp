#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qnogo/fidelity.hpp"
#include "qnogo/random.hpp"

using namespace qnogo;
using namespace qnogo::fidelity;
using oracle::C;

namespace {
/// Column for |r1 r2> (x) |a> in a (4 d)-dimensional output.
std::vector<Complex> ket(std::size_t d, std::initializer_list<std::pair<std::size_t, Complex>> terms) {
    std::vector<Complex> v(4 * d, 0.0);
    for (auto [i, c] : terms) v[i] += c;
    return v;
}

/// Symmetric universal cloner with a two-level ancilla:
/// |0> -> sqrt(2/3)|00>|0> + sqrt(1/6)(|01> + |10>)|1>, and the mirror image for |1>.
Isometry symmetric_cloner() {
    const double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 6.0);
    // index = r1 * 4 + r2 * 2 + anc
    return Isometry(2, ket(2, {{0, a}, {3, b}, {5, b}}), ket(2, {{7, a}, {2, b}, {4, b}}));
}

/// |i> -> |i>|0>|0>
Isometry keep_original() { return Isometry(1, ket(1, {{0, 1.0}}), ket(1, {{2, 1.0}})); }

/// Measure in the computational basis, prepare |i> and its complement, record i.
Isometry measure_and_prepare() { return Isometry(2, ket(2, {{2, 1.0}}), ket(2, {{5, 1.0}})); }

std::vector<C> col(const Isometry& v, std::size_t i) { return {v.column(i).begin(), v.column(i).end()}; }

double naive_average(const Isometry& v, double lambda, const QuadratureGrid& g) {
    double s = 0;
    for (const auto& n : g.nodes()) {
        s += n.weight * oracle::register_fidelity(col(v, 0), col(v, 1), v.ancilla_dim(),
                                                  {n.state.alpha(), n.state.beta()}, lambda);
    }
    return s;
}

Isometry random_isometry(std::size_t d, Rng& rng) {
    std::vector<double> p(16 * d);
    for (auto& x : p) x = rng.gaussian();
    return Isometry::from_unconstrained(d, p);
}
}  // namespace

TEST_SUITE("fidelity") {
    TEST_CASE("isometries are validated") {
        CHECK_THROWS_AS(Isometry(1, ket(1, {{0, 1.0}}), ket(1, {{0, 1.0}})), std::invalid_argument);
        CHECK(symmetric_cloner().isometry_error() < 1e-15);
        Rng rng(1);
        for (std::size_t d : {1u, 2u, 4u}) CHECK(random_isometry(d, rng).isometry_error() < 1e-12);
    }

    TEST_CASE("quadrature weights sum to one") {
        for (const auto& g : {QuadratureGrid::equal_area(256), QuadratureGrid::monte_carlo(100, 3),
                              QuadratureGrid::single(Qubit::plus())}) {
            double s = 0;
            for (const auto& n : g.nodes()) s += n.weight;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK_THROWS_AS(QuadratureGrid({{Qubit::zero(), 0.5}}), std::invalid_argument);
    }

    TEST_CASE("equal-area grid integrates low-degree polynomials") {
        auto g = QuadratureGrid::equal_area(256);
        double m = 0;
        for (const auto& n : g.nodes()) m += n.weight * (std::pow(std::abs(n.state.alpha()), 4) +
                                                        std::pow(std::abs(n.state.beta()), 4));
        CHECK(m == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    }

    TEST_CASE("direct average agrees with the naive evaluator") {
        Rng rng(4);
        auto g = QuadratureGrid::equal_area(64);
        for (double lambda : {0.0, 0.3, 1.0})
            for (std::size_t d : {1u, 2u}) {
                auto v = random_isometry(d, rng);
                CHECK(average_fidelity(v, lambda, g, Mode::SecondRegister) ==
                      doctest::Approx(naive_average(v, lambda, g)).epsilon(1e-12));
            }
    }

    TEST_CASE("quadratic form agrees with the direct average in both modes") {
        Rng rng(6);
        auto g = QuadratureGrid::equal_area(50);
        for (Mode mode : {Mode::SecondRegister, Mode::Joint})
            for (double lambda : {0.0, 0.5, 1.0})
                for (std::size_t d : {1u, 2u, 4u}) {
                    FidelityObjective obj(lambda, g, mode, d);
                    for (int k = 0; k < 3; ++k) {
                        auto v = random_isometry(d, rng);
                        CHECK(obj(v) == doctest::Approx(average_fidelity(v, lambda, g, mode)).epsilon(1e-12));
                    }
                }
    }

    TEST_CASE("symmetric cloner reaches five sixths at every input") {
        auto v = symmetric_cloner();
        for (const auto& q : sample_bloch(30, 2)) {
            CHECK(oracle::register_fidelity(col(v, 0), col(v, 1), 2, {q.alpha(), q.beta()}, 1.0) ==
                  doctest::Approx(5.0 / 6.0).epsilon(1e-12));
            CHECK(average_fidelity(v, 1.0, QuadratureGrid::single(q), Mode::SecondRegister) ==
                  doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        }
    }

    TEST_CASE("anti-cloning baselines at lambda zero") {
        auto g = QuadratureGrid::equal_area(256);
        CHECK(average_fidelity(keep_original(), 0.0, g, Mode::SecondRegister) == doctest::Approx(0.75).epsilon(1e-3));
        CHECK(average_fidelity(measure_and_prepare(), 0.0, g, Mode::SecondRegister) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    }

    TEST_CASE("joint mode never exceeds second-register mode") {
        auto g = QuadratureGrid::equal_area(64);
        Rng rng(2);
        for (int k = 0; k < 5; ++k) {
            auto v = random_isometry(2, rng);
            CHECK(average_fidelity(v, 0.5, g, Mode::Joint) <=
                  average_fidelity(v, 0.5, g, Mode::SecondRegister) + 1e-12);
        }
    }

    TEST_CASE("lambda and isometry inputs are validated") {
        auto g = QuadratureGrid::equal_area(16);
        CHECK_THROWS_AS(average_fidelity(keep_original(), 1.5, g, Mode::Joint), std::invalid_argument);
        CHECK_THROWS_AS(FidelityObjective(-0.1, g, Mode::Joint, 2), std::invalid_argument);
    }

    TEST_CASE("optimizer matches the symmetric cloner and beats the lambda-zero baselines") {
        auto g = QuadratureGrid::equal_area(100);
        OptimizerConfig cfg;
        cfg.restarts = 4;
        cfg.max_evaluations = 3000;
        auto r1 = optimize_fidelity(1.0, g, cfg);
        CHECK(r1.record.f_opt == doctest::Approx(5.0 / 6.0).epsilon(0.01));
        CHECK(r1.record.f_opt < 5.0 / 6.0 + 1e-3);
        CHECK(r1.max_isometry_error < 1e-9);
        auto r0 = optimize_fidelity(0.0, g, cfg);
        CHECK(r0.record.f_opt > 0.75);
        CHECK(r0.best.isometry_error() < 1e-9);
        CHECK(average_fidelity(r0.best, 0.0, g, Mode::SecondRegister) ==
              doctest::Approx(r0.record.f_opt).epsilon(1e-12));
    }

    TEST_CASE("optimizer is deterministic and its trace is monotone") {
        auto g = QuadratureGrid::equal_area(40);
        OptimizerConfig cfg;
        cfg.restarts = 2;
        cfg.max_evaluations = 800;
        auto a = optimize_fidelity(0.5, g, cfg);
        auto b = optimize_fidelity(0.5, g, cfg);
        CHECK(a.record.f_opt == b.record.f_opt);
        CHECK(a.trace == b.trace);
        for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] >= a.trace[i - 1]);
    }

    TEST_CASE("gradient method reaches the cloner optimum") {
        auto g = QuadratureGrid::equal_area(60);
        OptimizerConfig cfg;
        cfg.restarts = 3;
        cfg.max_evaluations = 3000;
        cfg.method = Method::Gradient;
        auto r = optimize_fidelity(1.0, g, cfg);
        CHECK(r.record.f_opt == doctest::Approx(5.0 / 6.0).epsilon(0.01));
    }

    TEST_CASE("sweep returns one record per lambda in order") {
        auto g = QuadratureGrid::equal_area(30);
        OptimizerConfig cfg;
        cfg.restarts = 1;
        cfg.max_evaluations = 300;
        std::vector<double> ls{0.0, 0.5, 1.0};
        auto rec = sweep_lambda(ls, g, cfg);
        REQUIRE(rec.size() == 3);
        CHECK(rec[1].lambda == 0.5);
        CHECK(rec[2].mode == Mode::SecondRegister);
    }
}
