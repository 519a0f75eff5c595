#include <catch2/catch_amalgamated.hpp>

#include "polymoment/roots.hpp"
#include "test_support.hpp"

using namespace polymoment;
using pmtest::C;
using pmtest::Poly;

TEST_CASE("eval") {
    Poly z2({C(0), C(0), C(1)});
    CHECK(pmtest::close(eval(z2, C(1, 1)), C(0, 2)));

    // oracle: T6(cos phi) = cos(6 phi) at phi = pi/6
    const double x = std::sqrt(3.0) / 2;
    CHECK(pmtest::close(eval(chebyshev<double>(6), C(x)), C(std::cos(6 * std::acos(x))), 1e-12));
    CHECK(pmtest::close(eval(chebyshev<double>(6), C(x)), C(-1.0), 1e-12));

    CHECK(eval(Poly::zero(), C(3, 4)) == C(0));
}

TEST_CASE("degree bookkeeping") {
    CHECK(Poly::zero().degree() == Poly::none);
    CHECK(Poly({C(5)}).degree() == 0);
    CHECK(Poly({C(1), C(0), C(0)}).degree() == 0); // trailing zeros trimmed
    CHECK(Poly({C(1), C(1e-20), C(1e-20)}).degree() == 0);
    CHECK_THROWS_AS(Poly({C(std::nan(""), 0)}), Error);
}

TEST_CASE("derivative") {
    Poly z3({C(0), C(0), C(0), C(1)});
    CHECK(max_coeff_dist(derivative(z3), Poly({C(0), C(0), C(3)})) == 0.0);
    CHECK(max_coeff_dist(derivative(chebyshev<double>(2)), Poly({C(0), C(4)})) == 0.0);
    CHECK(derivative(Poly({C(7)})).is_zero());
}

TEST_CASE("antiderivative") {
    CHECK(max_coeff_dist(antiderivative(Poly({C(0), C(2)}), C(0)), Poly({C(0), C(0), C(1)})) == 0.0);
    CHECK(antiderivative(Poly::zero(), C(2, 1)).is_zero());

    // T2' + T3' integrated from -sqrt(3)/2: T2 + T3 - 1/2
    const C a(-std::sqrt(3.0) / 2);
    auto q = derivative(chebyshev<double>(2)) + derivative(chebyshev<double>(3));
    auto Q = antiderivative(q, a);
    auto expected = chebyshev<double>(2) + chebyshev<double>(3) - Poly({C(0.5)});
    CHECK(max_coeff_dist(Q, expected) < 1e-14);
    CHECK(std::abs(eval(Q, a)) < 1e-15);
}

TEST_CASE("compose") {
    CHECK(max_coeff_dist(compose(chebyshev<double>(2), chebyshev<double>(3)), chebyshev<double>(6)) < 1e-12);
    std::mt19937 rng(11);
    auto p = pmtest::rand_poly(rng, 5);
    CHECK(max_coeff_dist(compose(p, Poly::identity()), p) == 0.0);
    CHECK(max_coeff_dist(compose(Poly({C(0), C(0), C(1)}), Poly({C(1), C(0), C(1)})),
                         Poly({C(1), C(0), C(2), C(0), C(1)})) == 0.0);
    // degree multiplies
    CHECK(compose(pmtest::rand_poly(rng, 3), pmtest::rand_poly(rng, 4)).degree() == 12);
}

TEST_CASE("chebyshev generator") {
    CHECK(max_coeff_dist(chebyshev<double>(0), Poly({C(1)})) == 0.0);
    CHECK(max_coeff_dist(chebyshev<double>(1), Poly::identity()) == 0.0);
    CHECK(max_coeff_dist(chebyshev<double>(2), Poly({C(-1), C(0), C(2)})) == 0.0);
    CHECK(max_coeff_dist(chebyshev<double>(6), Poly({C(-1), C(0), C(18), C(0), C(-48), C(0), C(32)})) == 0.0);
    CHECK_THROWS_AS(chebyshev<double>(-1), DegreeError);
}

TEST_CASE("roots basic") {
    auto r = roots(Poly({C(-1), C(0), C(1)}));
    REQUIRE(r.size() == 2);
    CHECK(pmtest::close(r[0], C(-1)));
    CHECK(pmtest::close(r[1], C(1)));

    auto r3 = roots(Poly({C(0), C(0), C(0), C(1)}));
    REQUIRE(r3.size() == 3);
    for (const auto& z : r3) CHECK(z == C(0));

    CHECK_THROWS_AS(roots(Poly({C(5)})), DegreeError);
}

TEST_CASE("roots of T6 + 1: three double points") {
    // oracle: cos(6 phi) = -1 at phi = pi/6, pi/2, 5 pi/6
    auto p = chebyshev<double>(6) + Poly({C(1)});
    auto r = roots(p);
    REQUIRE(r.size() == 6);
    const double s = std::sqrt(3.0) / 2;
    const C expect[6] = {C(-s), C(-s), C(0), C(0), C(s), C(s)};
    for (int i = 0; i < 6; ++i) CHECK(pmtest::close(r[i], expect[i], 1e-7));
}

TEST_CASE("critical data") {
    auto cd = critical_data(Poly({C(0), C(0), C(1)}));
    REQUIRE(cd.points.size() == 1);
    CHECK(pmtest::close(cd.points[0].z, C(0)));
    REQUIRE(cd.values.size() == 1);
    CHECK(pmtest::close(cd.values[0], C(0)));

    auto cd6 = critical_data(chebyshev<double>(6));
    REQUIRE(cd6.values.size() == 2);
    CHECK(pmtest::close(cd6.values[0], C(-1), 1e-9));
    CHECK(pmtest::close(cd6.values[1], C(1), 1e-9));
    REQUIRE(cd6.points.size() == 5);
    for (const auto& cp : cd6.points) {
        CHECK(cp.order == 1); // all critical points simple
        bool found = false;
        for (int k = 1; k <= 5; ++k)
            if (pmtest::close(cp.z, C(std::cos(k * M_PI / 6)), 1e-8)) found = true;
        CHECK(found);
    }

    auto cdc = critical_data(Poly({C(0), C(-3), C(0), C(1)}));
    REQUIRE(cdc.values.size() == 2);
    CHECK(pmtest::close(cdc.values[0], C(-2)));
    CHECK(pmtest::close(cdc.values[1], C(2)));
    CHECK_THROWS_AS(critical_data(Poly::identity()), DegreeError);
}

TEST_CASE("divmod") {
    std::mt19937 rng(21);
    auto a = pmtest::rand_poly(rng, 7), b = pmtest::rand_poly(rng, 3);
    auto [q, r] = divmod(a, b);
    CHECK(r.degree() < b.degree());
    CHECK(max_coeff_dist(q * b + r, a) < 1e-12);
    CHECK_THROWS_AS(divmod(a, Poly::zero()), DegreeError);
}

TEST_CASE("property: monic recomposition from roots") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        int d = 2 + trial % 7;
        auto p = pmtest::rand_poly(rng, d);
        auto rts = roots(p);
        Poly rebuilt = Poly::one();
        for (const auto& z : rts) rebuilt = rebuilt * Poly({-z, C(1)});
        Poly monic = p * (C(1) / p.lead());
        CHECK(max_coeff_dist(rebuilt, monic) < 1e-8);
    }
}

TEST_CASE("property: compose associativity") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = pmtest::rand_poly(rng, 2 + trial % 3);
        auto b = pmtest::rand_poly(rng, 2 + (trial + 1) % 3);
        auto c = pmtest::rand_poly(rng, 2 + (trial + 2) % 3);
        auto lhs = compose(compose(a, b), c);
        auto rhs = compose(a, compose(b, c));
        CHECK(max_coeff_dist(lhs, rhs) <= 1e-9 * std::max(1.0, lhs.max_abs_coeff()));
    }
}

TEST_CASE("property: derivative of antiderivative") {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 8; ++trial) {
        auto p = pmtest::rand_poly(rng, 1 + trial % 6);
        auto x0 = pmtest::rand_complex(rng, 2.0);
        CHECK(max_coeff_dist(derivative(antiderivative(p, x0)), p) < 1e-15);
    }
}

TEST_CASE("property: chebyshev semigroup") {
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            if (i * j > 12) continue;
            CHECK(max_coeff_dist(compose(chebyshev<double>(i), chebyshev<double>(j)),
                                 chebyshev<double>(i * j)) <=
                  1e-9 * chebyshev<double>(i * j).max_abs_coeff());
        }
    }
}

TEST_CASE("property: chebyshev critical values are -1, 1") {
    // n = 2 has the single critical value -1 (the value 1 is never critical)
    {
        auto cd = critical_data(chebyshev<double>(2));
        REQUIRE(cd.values.size() == 1);
        CHECK(pmtest::close(cd.values[0], C(-1), 1e-9));
    }
    for (int n = 3; n <= 9; ++n) {
        auto cd = critical_data(chebyshev<double>(n));
        REQUIRE(cd.values.size() == 2);
        CHECK(pmtest::close(cd.values[0], C(-1), 1e-9));
        CHECK(pmtest::close(cd.values[1], C(1), 1e-9));
    }
}
