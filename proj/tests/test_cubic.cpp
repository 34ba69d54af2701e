#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "diminv/cubic.hpp"

using namespace diminv;

namespace {

std::mt19937_64 rng(31);

RatFunction random_ratfunc(int max_deg) {
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    auto poly = [&](bool nonzero) {
        while (true) {
            std::vector<Rational> c;
            for (int j = 0; j <= deg(rng); ++j) c.emplace_back(coeff(rng));
            RatPoly p(c);
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return RatFunction(poly(false), poly(true));
}

CubicExt random_elem(int max_deg) {
    return CubicExt(random_ratfunc(max_deg), random_ratfunc(max_deg), random_ratfunc(max_deg));
}

} // namespace

TEST_CASE("cubic norm worked examples") {
    CHECK(cubic_norm(CubicExt::from_rational(Rational(1))) == RatFunction(Rational(1)));
    CHECK(cubic_norm(CubicExt::cbrt2()) == RatFunction(Rational(2)));
    CubicExt one_plus(RatFunction(Rational(1)), RatFunction(Rational(1)), RatFunction());
    CHECK(cubic_norm(one_plus) == RatFunction(Rational(3)));
}

TEST_CASE("cubic inverse worked examples") {
    CubicExt half_cbrt4(RatFunction(), RatFunction(), RatFunction(Rational(1, 2)));
    CHECK(cubic_invert(CubicExt::cbrt2()) == half_cbrt4);
    CHECK(cubic_invert(CubicExt::from_rational(Rational(1))) ==
          CubicExt::from_rational(Rational(1)));
    CubicExt one_plus(RatFunction(Rational(1)), RatFunction(Rational(1)), RatFunction());
    CubicExt want(RatFunction(Rational(1, 3)), RatFunction(Rational(-1, 3)),
                  RatFunction(Rational(1, 3)));
    CHECK(cubic_invert(one_plus) == want);
    CHECK_THROWS_AS(cubic_invert(CubicExt()), HypothesisError);
}

TEST_CASE("field axioms and norm multiplicativity on random elements") {
    for (int i = 0; i < 40; ++i) {
        CubicExt x = random_elem(2), y = random_elem(2), z = random_elem(2);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(cubic_norm(x * y) == cubic_norm(x) * cubic_norm(y));
        if (!x.is_zero()) {
            CHECK(x * cubic_invert(x) == CubicExt::from_rational(Rational(1)));
        }
    }
}

TEST_CASE("norm vanishes only at zero") {
    CHECK(cubic_norm(CubicExt()).is_zero());
    for (int i = 0; i < 60; ++i) {
        CubicExt x = random_elem(2);
        if (x.is_zero()) continue;
        CHECK_FALSE(cubic_norm(x).is_zero());
    }
}
