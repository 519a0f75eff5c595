#include <catch2/catch_amalgamated.hpp>

#include "polymoment/classify.hpp"
#include "polymoment/io.hpp"
#include "test_support.hpp"

using namespace polymoment;
using pmtest::C;
using pmtest::Poly;

namespace {

struct Pipeline {
    MonodromyData<double> md;
    Cactus<double> cx;
    PathAB<double> path;
};

Pipeline run_pipeline(const Poly& P, const C& a, const C& b) {
    auto md = monodromy_avoiding(P, {eval(P, a), eval(P, b)});
    auto [cx, ext] = extend(P, md, a, b);
    auto path = path_ab(cx);
    return {ext, cx, path};
}

} // namespace

TEST_CASE("right divisors of T6") {
    auto T6 = chebyshev<double>(6);
    auto divs = right_divisors(T6);
    REQUIRE(divs.size() == 3);
    CHECK(divs[0].first.degree() == 2);
    CHECK(divs[1].first.degree() == 3);
    CHECK(divs[2].first.degree() == 6);
    CHECK(max_coeff_dist(divs[0].first, Poly({C(0), C(0), C(1)})) < 1e-10);            // z^2
    CHECK(max_coeff_dist(divs[1].first, Poly({C(0), C(-0.75), C(0), C(1)})) < 1e-10);  // T3/4 shifted
    for (const auto& [W, outer] : divs) {
        CHECK(std::abs(eval(W, C(0))) < 1e-12);
        CHECK(std::abs(W.lead() - C(1)) < 1e-12);
        CHECK(max_coeff_dist(compose(outer, W), T6) <= 1e-8 * T6.max_abs_coeff());
    }
}

TEST_CASE("right divisors of pure powers and of generic polynomials") {
    Poly z6({C(0), C(0), C(0), C(0), C(0), C(0), C(1)});
    auto divs = right_divisors(z6);
    REQUIRE(divs.size() == 3);
    for (const auto& [W, outer] : divs) {
        std::vector<C> mono(W.degree() + 1, C(0));
        mono.back() = C(1);
        CHECK(max_coeff_dist(W, Poly(std::move(mono))) < 1e-10);
    }

    std::mt19937 rng(71);
    auto generic = pmtest::rand_poly(rng, 6);
    auto gd = right_divisors(generic);
    REQUIRE(gd.size() == 1);
    CHECK(gd[0].first.degree() == 6);
}

TEST_CASE("w_adic digits") {
    std::mt19937 rng(73);
    auto W = pmtest::rand_poly(rng, 3);
    auto Q = compose(Poly({C(1), C(3), C(1)}), W); // W^2 + 3W + 1
    auto digits = w_adic(Q, W);
    REQUIRE(digits.size() == 3);
    CHECK(pmtest::close(digits[0].coeff(0), C(1)));
    CHECK(pmtest::close(digits[1].coeff(0), C(3)));
    CHECK(pmtest::close(digits[2].coeff(0), C(1)));
    for (const auto& d : digits) CHECK(detail::nonconstant_part(d) < 1e-9);

    // T2 + T3 is not a polynomial in T2
    auto mixed = w_adic(chebyshev<double>(2) + chebyshev<double>(3), chebyshev<double>(2));
    bool nonconst = false;
    for (const auto& d : mixed)
        if (detail::nonconstant_part(d) > 1e-6) nonconst = true;
    CHECK(nonconst);

    CHECK(w_adic(Poly::zero(), W).empty());
}

TEST_CASE("common right divisor") {
    auto T6 = chebyshev<double>(6);
    auto T3 = chebyshev<double>(3);

    // T3^2 = (T6 + 1)/2 is a polynomial in the maximal divisor, which the
    // decreasing-degree scan reports first
    auto crd = common_right_divisor(T6, T3 * T3);
    REQUIRE(crd.has_value());
    auto& [W, Pt, Qt] = *crd;
    CHECK(W.degree() > 1);
    CHECK(max_coeff_dist(compose(Pt, W), T6) < 1e-8 * T6.max_abs_coeff());
    CHECK(max_coeff_dist(compose(Qt, W), T3 * T3) < 1e-8 * (T3 * T3).max_abs_coeff());

    CHECK_FALSE(common_right_divisor(T6, chebyshev<double>(2) + T3).has_value());

    std::mt19937 rng(79);
    auto P = pmtest::rand_poly(rng, 6);
    auto self = common_right_divisor(P, P);
    REQUIRE(self.has_value());
    CHECK(std::get<0>(*self).degree() == 6);
}

TEST_CASE("condition (2) certificates") {
    std::mt19937 rng(83);
    const C a(0.3, 0.1);

    SECTION("constructed instance") {
        auto W = pmtest::rand_poly(rng, 3);
        auto v = eval(W, a);
        auto pre = roots(W - Poly({v}));
        C b = pre[0];
        for (const auto& z : pre)
            if (std::abs(z - a) > 1e-3) b = z;
        auto P = compose(pmtest::rand_poly(rng, 2), W);
        auto Q0 = compose(pmtest::rand_poly(rng, 2), W);
        auto Q = Q0 - Poly({eval(Q0, a)});
        auto cert = condition_2(P, Q, a, b);
        REQUIRE(cert.kind == CertificateKind::CONDITION_2);
        REQUIRE(!cert.witnesses.empty());
        const auto& wit = cert.witnesses.front();
        CHECK(wit.endpoints_match);
        CHECK(max_coeff_dist(compose(wit.P_outer, wit.W), P) <= 1e-8 * std::max(1.0, P.max_abs_coeff()));
        CHECK(max_coeff_dist(compose(wit.Q_outer, wit.W), Q) <= 1e-7 * std::max(1.0, Q.max_abs_coeff()));
    }

    SECTION("the counterexample defeats the single-divisor condition") {
        auto T6 = chebyshev<double>(6);
        const C aa(-std::sqrt(3.0) / 2), bb(std::sqrt(3.0) / 2);
        auto q = derivative(chebyshev<double>(2)) + derivative(chebyshev<double>(3));
        auto Q = antiderivative(q, aa);
        CHECK(condition_2(T6, Q, aa, bb).kind == CertificateKind::NONE);
    }

    SECTION("zero integrand is degenerate") {
        auto T6 = chebyshev<double>(6);
        const C aa(-std::sqrt(3.0) / 2), bb(std::sqrt(3.0) / 2);
        auto cert = condition_2(T6, Poly::zero(), aa, bb);
        CHECK(cert.degenerate);
        CHECK(cert.kind == CertificateKind::CONDITION_2); // P(a) = P(b) allows W = P
    }
}

TEST_CASE("condition (3) certificates") {
    auto T6 = chebyshev<double>(6);
    const C a(-std::sqrt(3.0) / 2), b(std::sqrt(3.0) / 2);

    SECTION("counterexample is certified") {
        auto q = derivative(chebyshev<double>(2)) + derivative(chebyshev<double>(3));
        auto Q = antiderivative(q, a);
        auto cert = condition_3(T6, Q, a, b);
        REQUIRE(cert.kind == CertificateKind::CONDITION_3);
        CHECK(cert.residual <= 1e-8);
        Poly sum;
        for (const auto& w : cert.witnesses) {
            CHECK(w.endpoints_match);
            CHECK(max_coeff_dist(compose(w.P_outer, w.W), T6) <= 1e-7 * T6.max_abs_coeff());
            sum += compose(w.Q_outer, w.W);
        }
        CHECK(max_coeff_dist(sum, Q) <= 1e-7 * std::max(1.0, Q.max_abs_coeff()));
    }

    SECTION("single-divisor instances are subsumed") {
        std::mt19937 rng(89);
        Poly W({C(0), C(0), C(1)});
        const C aa(1.3), bb(-1.3);
        auto P = compose(pmtest::rand_poly(rng, 3), W);
        auto Q0 = compose(pmtest::rand_poly(rng, 2), W);
        auto Q = Q0 - Poly({eval(Q0, aa)});
        CHECK(condition_2(P, Q, aa, bb).kind == CertificateKind::CONDITION_2);
        CHECK(condition_3(P, Q, aa, bb).kind == CertificateKind::CONDITION_3);
    }

    SECTION("no qualifying divisor") {
        Poly z2({C(0), C(0), C(1)});
        auto Q = Poly({C(0), C(1)}); // z, normalized at a = 0
        auto cert = condition_3(z2, Q, C(0), C(1));
        CHECK(cert.kind == CertificateKind::NONE);
    }
}

TEST_CASE("soundness: a sum certificate forces vanishing moments") {
    auto T6 = chebyshev<double>(6);
    const C a(-std::sqrt(3.0) / 2), b(std::sqrt(3.0) / 2);
    std::mt19937 rng(97);
    for (int trial = 0; trial < 3; ++trial) {
        auto A = pmtest::rand_poly(rng, 1 + trial % 2);
        auto B = pmtest::rand_poly(rng, 2);
        auto Qr = compose(A, chebyshev<double>(3)) + compose(B, chebyshev<double>(2));
        auto q = derivative(Qr);
        auto Q = antiderivative(q, a);
        auto cert = condition_3(T6, Q, a, b);
        REQUIRE(cert.kind == CertificateKind::CONDITION_3);
        auto rep = moment_sequence(T6, q, a, b, 2 * (6 + Q.degree()) + 8);
        CHECK(rep.verdict == MomentVerdict::VANISHES);
    }
}

TEST_CASE("decompose-recompose fuzz") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        auto A = pmtest::rand_poly(rng, 2 + trial % 3);
        auto B = pmtest::rand_poly(rng, 2 + (trial / 2) % 3);
        auto P = compose(A, B);
        auto divs = right_divisors(P);
        // with the monic W(0) = 0 normalization the divisor at each degree is unique
        for (size_t i = 0; i + 1 < divs.size(); ++i)
            CHECK(divs[i].first.degree() < divs[i + 1].first.degree());
        bool found = false;
        for (const auto& [W, outer] : divs) {
            if (W.degree() != B.degree()) continue;
            // W must be a linear map applied to B
            C alpha = C(1) / B.lead();
            Poly cand = B * alpha;
            cand -= Poly({cand.coeff(0)});
            if (max_coeff_dist(cand, W) <= 1e-6 * std::max(1.0, W.max_abs_coeff())) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("reduction trails") {
    std::mt19937 rng(103);

    SECTION("one substitution step") {
        Poly W({C(0), C(0), C(1)});
        auto Pt = pmtest::rand_poly(rng, 3);
        auto Qt = pmtest::rand_poly(rng, 2);
        auto trail = reduce(compose(Pt, W), compose(Qt, W), C(1), C(2));
        REQUIRE(trail.steps.size() >= 1);
        CHECK_FALSE(trail.steps.front().endpoints_matched);
        CHECK(trail.steps.front().W.degree() == 2);
        CHECK_FALSE(trail.condition2_achieved);
    }

    SECTION("terminates with matched endpoints") {
        Poly W({C(0), C(0), C(1)});
        auto Pt = pmtest::rand_poly(rng, 2);
        auto Qt = pmtest::rand_poly(rng, 2);
        auto trail = reduce(compose(Pt, W), compose(Qt, W), C(1.5), C(-1.5)); // W(a) = W(b)
        REQUIRE(!trail.steps.empty());
        CHECK(trail.steps.back().endpoints_matched);
        CHECK(trail.condition2_achieved);
    }

    SECTION("compositionally coprime pair") {
        auto trail = reduce(chebyshev<double>(6), chebyshev<double>(2) + chebyshev<double>(3),
                            C(-std::sqrt(3.0) / 2), C(std::sqrt(3.0) / 2));
        CHECK(trail.steps.empty());
    }
}

TEST_CASE("classification") {
    SECTION("T6 with the standard endpoints is the exceptional case") {
        auto T6 = chebyshev<double>(6);
        const C a(-std::sqrt(3.0) / 2), b(std::sqrt(3.0) / 2);
        auto pipe = run_pipeline(T6, a, b);
        auto v = classify(T6, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::EXCEPTIONAL_T6);
        REQUIRE(v.normalization.has_value());
        auto [L1, L2] = *v.normalization;
        CHECK(max_coeff_dist(compose(L2, compose(T6, L1)), T6) <= 1e-7);
        CHECK(pmtest::close(eval(L1, C(-std::sqrt(3.0) / 2)), a, 1e-9));
    }

    SECTION("prime degree with critical endpoints") {
        auto T7 = chebyshev<double>(7);
        const C a(std::cos(6 * M_PI / 7)), b(std::cos(M_PI / 7));
        auto pipe = run_pipeline(T7, a, b);
        auto v = classify(T7, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::DEFINITE);
        REQUIRE(!v.reasons.empty());
        CHECK(v.reasons.front() == "prime-power-degree(7^1)");
    }

    SECTION("prime power degree") {
        auto T8 = chebyshev<double>(8);
        const C a(std::cos(M_PI / 8)), b(std::cos(3 * M_PI / 8));
        auto pipe = run_pipeline(T8, a, b);
        auto v = classify(T8, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::DEFINITE);
        CHECK(v.reasons.front() == "prime-power-degree(2^3)");
    }

    SECTION("regular endpoint") {
        Poly P({C(0), C(1), C(0), C(0), C(0), C(0), C(0), C(0), C(1)}); // z^8 + z
        const C a(0.15), b(0.6);
        auto pipe = run_pipeline(P, a, b);
        auto v = classify(P, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::DEFINITE);
        CHECK(v.reasons.front().rfind("noncritical-endpoint", 0) == 0);
    }

    SECTION("linearly transported exceptional instances are recognized") {
        const C alpha(1.3, 0.2), beta(-0.4, 0.1);
        Poly lambda({beta, alpha});
        auto P = compose(chebyshev<double>(6), lambda);
        const double s3 = std::sqrt(3.0) / 2;
        const C a = (C(-s3) - beta) / alpha, b = (C(s3) - beta) / alpha;
        auto pipe = run_pipeline(P, a, b);
        auto v = classify(P, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::EXCEPTIONAL_T6);
        REQUIRE(v.normalization.has_value());
        auto [L1, L2] = *v.normalization;
        CHECK(max_coeff_dist(compose(L2, compose(P, L1)), chebyshev<double>(6)) <= 1e-7);
    }

    SECTION("same polynomial, different marked points: definite") {
        // endpoints -sqrt(3)/2 and 0 sit two stars apart; the collection is
        // not equivalent to the exceptional one
        auto T6 = chebyshev<double>(6);
        const C a(-std::sqrt(3.0) / 2), b(0);
        auto pipe = run_pipeline(T6, a, b);
        CHECK(skeleton(pipe.path).length == 2);
        auto v = classify(T6, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::DEFINITE);
    }

    SECTION("degree 12 with critical endpoints and heavy weights is open") {
        auto T12 = chebyshev<double>(12);
        const C a(-std::sqrt(3.0) / 2), b(std::sqrt(3.0) / 2);
        auto pipe = run_pipeline(T12, a, b);
        auto w = weights(pipe.path);
        for (double x : w) CHECK(x >= 1.5);
        auto v = classify(T12, a, b, pipe.md, pipe.cx, pipe.path);
        CHECK(v.kind == DefinitenessKind::UNKNOWN);
    }
}
