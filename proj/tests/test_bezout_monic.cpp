#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "diminv/bezout.hpp"

using namespace diminv;

namespace {

// Independent identity checker: naive convolution, no library multiply.
bool naive_bezout_check(const IntPoly& a, const IntPoly& psi1, const IntPoly& b,
                        const IntPoly& psi2, const Integer& m) {
    std::map<int, Integer> acc;
    auto mul_into = [&](const IntPoly& p, const IntPoly& q) {
        for (int i = 0; i <= p.degree(); ++i)
            for (int j = 0; j <= q.degree(); ++j)
                acc[i + j] += p.coeff((size_t)i) * q.coeff((size_t)j);
    };
    mul_into(a, psi1);
    mul_into(b, psi2);
    acc[0] -= m;
    for (const auto& [e, c] : acc)
        if (c != 0) return false;
    return true;
}

bool naive_monic_check(const MonicLemmaResult& res, const IntPoly& psi, const Integer& m) {
    std::map<long long, Rational> acc;
    for (const auto& [e, c] : res.phi1.terms()) acc[e] += c * Rational(m);
    for (const auto& [e, c] : res.phi2.terms())
        for (int j = 0; j <= psi.degree(); ++j) acc[e + j] += c * Rational(psi.coeff((size_t)j));
    acc[res.n] += Rational(1);
    acc[0] -= Rational(1);
    for (const auto& [e, c] : acc)
        if (!c.is_zero()) return false;
    return res.n != 0;
}

} // namespace

TEST_CASE("bezout worked examples") {
    SECTION("t-2 and t-3") {
        auto r = bezout_integerized(IntPoly{-2, 1}, IntPoly{-3, 1});
        CHECK(r.m == 1);
        CHECK(r.a_poly == IntPoly{1});
        CHECK(r.b_poly == IntPoly{-1});
        CHECK(naive_bezout_check(r.a_poly, IntPoly{-2, 1}, r.b_poly, IntPoly{-3, 1}, r.m));
    }
    SECTION("t^2-2 and t") {
        auto r = bezout_integerized(IntPoly{-2, 0, 1}, IntPoly{0, 1});
        CHECK(r.m == 2);
        CHECK(r.a_poly == IntPoly{-1});
        CHECK(r.b_poly == IntPoly{0, 1});
    }
    SECTION("shared factor is reported") {
        CHECK_THROWS_WITH(bezout_integerized(IntPoly{-1, 1}, IntPoly{-1, 0, 1}),
                          Catch::Matchers::ContainsSubstring("t - 1"));
    }
}

TEST_CASE("bezout identity on random coprime pairs") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> coeff(-20, 20);
    std::uniform_int_distribution<int> deg(1, 4);
    int done = 0;
    while (done < 60) {
        std::vector<Integer> ca, cb;
        for (int j = 0; j <= deg(rng); ++j) ca.emplace_back(coeff(rng));
        for (int j = 0; j <= deg(rng); ++j) cb.emplace_back(coeff(rng));
        IntPoly p1(ca), p2(cb);
        if (p1.is_zero() || p2.is_zero()) continue;
        if (RatPoly::gcd(RatPoly(p1), RatPoly(p2)).degree() > 0) continue;
        auto r = bezout_integerized(p1, p2);
        CHECK(r.m > 0);
        CHECK(naive_bezout_check(r.a_poly, p1, r.b_poly, p2, r.m));
        ++done;
    }
}

TEST_CASE("monic lemma worked examples") {
    SECTION("psi = t, m = 2") {
        auto r = monic_lemma(IntPoly{0, 1}, 2);
        CHECK(r.n == -1);
        CHECK(r.phi1.is_zero());
        LaurentPoly want = LaurentPoly::term(-1, Rational(1)) + LaurentPoly::term(-2, Rational(-1));
        CHECK(r.phi2 == want);
        CHECK(naive_monic_check(r, IntPoly{0, 1}, 2));
    }
    SECTION("psi = t - 1, m = 2") {
        auto r = monic_lemma(IntPoly{-1, 1}, 2);
        CHECK(r.n != 0);
        CHECK(naive_monic_check(r, IntPoly{-1, 1}, 2));
    }
    SECTION("psi = t^2 + t + 1, m = 3") {
        IntPoly psi{1, 1, 1};
        auto r = monic_lemma(psi, 3);
        CHECK(naive_monic_check(r, psi, 3));
        CHECK(r.steps <= 9 + 1);
    }
    SECTION("hypothesis violations") {
        CHECK_THROWS_AS(monic_lemma(IntPoly{1, 2}, 2), HypothesisError); // non-monic
        CHECK_THROWS_AS(monic_lemma(IntPoly{0, 1}, 1), HypothesisError); // m <= 1
    }
}

TEST_CASE("monic lemma pigeonhole bound") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<int> deg(1, 3);
    std::uniform_int_distribution<long> mm(2, 10);
    for (int i = 0; i < 80; ++i) {
        int d = deg(rng);
        std::vector<Integer> c;
        for (int j = 0; j < d; ++j) c.emplace_back(coeff(rng));
        c.emplace_back(1);
        IntPoly psi(c);
        Integer m(mm(rng));
        auto r = monic_lemma(psi, m);
        Integer bound = int_pow(m, (unsigned long)d) + 1;
        CHECK(Integer((long)r.steps) <= bound);
        CHECK(naive_monic_check(r, psi, m));
    }
}
