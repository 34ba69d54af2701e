#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "diminv/algebraic.hpp"

using namespace diminv;

TEST_CASE("construction validates the irreducibility screen") {
    CHECK_NOTHROW(AlgebraicNumber(IntPoly{-2, 0, 1}, Rational(1), Rational(2)));
    // 2t^2 - 5t + 2 = (2t - 1)(t - 2) has rational roots.
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{2, -5, 2}, Rational(1, 4), Rational(1)),
                    HypothesisError);
    // t^4 - 5t^2 + 6 = (t^2 - 2)(t^2 - 3): quadratic factor, no rational root.
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{6, 0, -5, 0, 1}, Rational(1), Rational(3, 2)),
                    HypothesisError);
    // t^4 - 10t^2 + 1 is irreducible (minimal polynomial of sqrt2 + sqrt3).
    CHECK_NOTHROW(AlgebraicNumber(IntPoly{1, 0, -10, 0, 1}, Rational(3), Rational(4)));
    // squarefree check
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{1, 2, 1}, Rational(-2), Rational(0)),
                    HypothesisError);
    // interval with two roots of t^2 - 2
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{-2, 0, 1}, Rational(-2), Rational(2)),
                    HypothesisError);
    // degree >= 5 needs the assertion
    IntPoly quint{-2, 0, 0, 0, 0, 1};
    CHECK_THROWS_AS(AlgebraicNumber(quint, Rational(1), Rational(2)), HypothesisError);
    CHECK_NOTHROW(AlgebraicNumber(quint, Rational(1), Rational(2), true));
}

TEST_CASE("sign refinement at sqrt 2") {
    AlgebraicNumber sqrt2(IntPoly{-2, 0, 1}, Rational(1), Rational(2));
    CHECK(sqrt2.sign_of(RatPoly{Rational(-1), Rational(1)}) == 1);  // t - 1 > 0
    CHECK(sqrt2.sign_of(RatPoly{Rational(-2), Rational(0), Rational(1)}) == 0);
    CHECK(sqrt2.sign_of(RatPoly{Rational(-2), Rational(1)}) == -1); // t - 2 < 0
    CHECK(sqrt2.sign() == 1);
}

TEST_CASE("rational algebraic numbers evaluate exactly") {
    AlgebraicNumber half = AlgebraicNumber::from_rational(Rational(1, 2));
    CHECK(half.is_rational());
    CHECK(half.rational_value() == Rational(1, 2));
    CHECK(half.sign_of(RatPoly{Rational(-1, 2), Rational(1)}) == 0);
    CHECK(half.is_one() == false);
    CHECK(AlgebraicNumber::from_rational(Rational(1)).is_one());
}

TEST_CASE("equality by interval refinement") {
    AlgebraicNumber a(IntPoly{-2, 0, 1}, Rational(1), Rational(2));
    AlgebraicNumber b(IntPoly{-2, 0, 1}, Rational(5, 4), Rational(3));
    AlgebraicNumber c(IntPoly{-2, 0, 1}, Rational(-2), Rational(0)); // -sqrt2
    CHECK(a.equals(b));
    CHECK_FALSE(a.equals(c));
    AlgebraicNumber d(IntPoly{-3, 0, 1}, Rational(1), Rational(2));
    CHECK_FALSE(a.equals(d));
}

TEST_CASE("sign refinement agrees with doubles away from zero") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> coeff(-8, 8);
    AlgebraicNumber sqrt2(IntPoly{-2, 0, 1}, Rational(1), Rational(2));
    double x = std::sqrt(2.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rational> c;
        for (int j = 0; j < 4; ++j) c.emplace_back(coeff(rng));
        RatPoly f(c);
        double fd = 0;
        for (int j = 3; j >= 0; --j) fd = fd * x + f.coeff((size_t)j).to_double();
        if (std::abs(fd) <= 1e-6) continue;
        CHECK(sqrt2.sign_of(f) == (fd > 0 ? 1 : -1));
    }
}

TEST_CASE("positive root isolation") {
    IntPoly p{2, -4, 1}; // roots 2 +- sqrt 2
    auto roots = isolate_positive_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].hi <= roots[1].lo); // may share a (non-root) bisection endpoint
    IntPoly q{-6, 11, -6, 1}; // (t-1)(t-2)(t-3)
    CHECK(isolate_positive_roots(q).size() == 3);
}
