#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "diminv/action.hpp"
#include "diminv/certificates.hpp"

using namespace diminv;

namespace {

AlgebraicNumber sqrt2() { return AlgebraicNumber(IntPoly{-2, 0, 1}, Rational(1), Rational(2)); }

// Single-field corruptions that change the mathematical content of the
// certificate: identity coefficients/exponents, target data, minimal
// polynomial coefficients, the rational b.
Certificate corrupt(const Certificate& c, std::mt19937_64& rng) {
    Certificate out = c;
    std::uniform_int_distribution<int> which(0, 4);
    for (int attempt = 0; attempt < 32; ++attempt) {
        switch (which(rng)) {
            case 0: { // bump one identity coefficient
                auto terms = out.identity.terms();
                if (terms.empty()) continue;
                std::uniform_int_distribution<size_t> pick(0, terms.size() - 1);
                auto it = terms.begin();
                std::advance(it, (long)pick(rng));
                out.identity.add_term(it->first, Rational(1));
                return out;
            }
            case 1: { // move one identity term to a fresh exponent
                auto terms = out.identity.terms();
                if (terms.empty()) continue;
                std::uniform_int_distribution<size_t> pick(0, terms.size() - 1);
                auto it = terms.begin();
                std::advance(it, (long)pick(rng));
                long long e = it->first;
                Rational v = it->second;
                out.identity.add_term(e, -v);
                out.identity.add_term(e + 1, v);
                if (out.identity == c.identity) continue;
                return out;
            }
            case 2: // shift the target exponent
                out.target.exp += 1;
                return out;
            case 3: { // perturb the minimal polynomial of a
                IntPoly p = out.a.minpoly();
                std::vector<Integer> cs = p.coeffs();
                cs[0] += 1;
                try {
                    IntPoly cand(cs);
                    auto roots = isolate_positive_roots(cand);
                    if (roots.empty()) continue;
                    out.a = AlgebraicNumber(cand, roots[0].lo, roots[0].hi);
                } catch (const Error&) {
                    continue;
                }
                return out;
            }
            default: { // perturb rational b
                if (!out.b_is_rational()) continue;
                out.b = out.b_rational() + Rational(1, 3);
                return out;
            }
        }
    }
    out.target.exp += 1;
    return out;
}

} // namespace

TEST_CASE("rational-b certificates for a = sqrt2, b = 1/2") {
    auto [plus, minus] = certify_rational_b(sqrt2(), Rational(1, 2));

    // Hand-derived pipeline: S = -7, amp = 1, r = -7, N = 3, s = 1, K = 1.
    CHECK(minus.target.rational_value() == Rational(1, 8));
    CHECK(plus.target.rational_value() == Rational(8));
    CHECK(minus.constants.at("N") == "3");
    // diag(1, 1/8) comes from t(t^2 - 2) + 1 = t^3 - 2t + 1.
    LaurentPoly want_minus = LaurentPoly::term(3, Rational(1)) +
                             LaurentPoly::term(1, Rational(-2)) + LaurentPoly::one();
    CHECK(minus.identity == want_minus);
    // diag(1, 8): the solver picks (x', y') = (0, -4), giving -4(t^2-2) + 1,
    // which is -4t^2 + 9: equal to 1 at sqrt2 and to 8 at 1/2.
    LaurentPoly want_plus = LaurentPoly::term(2, Rational(-4)) + LaurentPoly(Rational(9));
    CHECK(plus.identity == want_plus);

    CHECK(verify_certificate(plus).accepted);
    CHECK(verify_certificate(minus).accepted);
    CHECK(target_nontrivial(plus));
    CHECK(target_nontrivial(minus));
}

TEST_CASE("rational-b hypothesis violations") {
    CHECK_THROWS_AS(certify_rational_b(sqrt2(), Rational(1)), HypothesisError);
    CHECK_THROWS_AS(
        certify_rational_b(AlgebraicNumber::from_rational(Rational(1, 2)), Rational(1, 2)),
        HypothesisError);
    CHECK_THROWS_AS(certify_rational_b(sqrt2(), Rational(-2)), HypothesisError);
    CHECK_THROWS_AS(
        certify_rational_b(AlgebraicNumber::from_rational(Rational(1)), Rational(1, 2)),
        HypothesisError);
}

TEST_CASE("integer b routes through the one-term identities") {
    auto [plus, minus] = certify_rational_b(sqrt2(), Rational(3));
    // Hand-derived: psi(3) = 7, ord_7(3) = 6, s = -104.
    CHECK(plus.target == CertTarget{CertTarget::Kind::BasePower, 3, 6});
    CHECK(minus.target == CertTarget{CertTarget::Kind::BasePower, 3, -6});
    LaurentPoly want_plus = LaurentPoly::term(2, Rational(104)) + LaurentPoly(Rational(-207));
    CHECK(plus.identity == want_plus);
    CHECK(verify_certificate(plus).accepted);
    CHECK(verify_certificate(minus).accepted);
}

TEST_CASE("laurent-unit certificates for the reciprocal-sum witness") {
    // b a root of 2t^2 - 7t + 2, so b + 1/b = 7/2.
    AlgebraicNumber b(IntPoly{2, -7, 2}, Rational(3), Rational(4));
    LaurentPoly phi = LaurentPoly::term(1, Rational(1)) + LaurentPoly::term(-1, Rational(1));
    auto [plus, minus] = certify_laurent_unit(sqrt2(), b, 7, 2, phi);
    CHECK(plus.target.base == 2);
    CHECK(plus.target.exp > 0);
    CHECK(minus.target.exp == -plus.target.exp);
    CHECK(verify_certificate(plus).accepted);
    CHECK(verify_certificate(minus).accepted);
    CHECK(target_nontrivial(plus));

    SECTION("witness mismatch is rejected") {
        CHECK_THROWS_WITH(certify_laurent_unit(sqrt2(), b, 5, 2, phi),
                          Catch::Matchers::ContainsSubstring("witness mismatch"));
    }
    SECTION("p = 0 violates the hypotheses") {
        LaurentPoly zero;
        CHECK_THROWS_AS(certify_laurent_unit(sqrt2(), b, 0, 2, zero), HypothesisError);
    }
    SECTION("rational b is accepted by the laurent regime too") {
        AlgebraicNumber two = AlgebraicNumber::from_rational(Rational(2));
        auto [pl, mi] = certify_laurent_unit(sqrt2(), two, 5, 2, phi);
        CHECK(verify_certificate(pl).accepted);
        CHECK(verify_certificate(mi).accepted);
    }
}

TEST_CASE("monic certificates: short form at m = 1") {
    AlgebraicNumber a = AlgebraicNumber::from_rational(Rational(2));
    AlgebraicNumber b = AlgebraicNumber::from_rational(Rational(3));
    auto [plus, minus] = certify_monic(a, b);
    CHECK(plus.constants.at("form") == "short");
    CHECK(plus.target == CertTarget{CertTarget::Kind::BPower, 0, 1});
    // (A - I) * 1 * (t - 2) + I = t^2 - 3t + 3 at the second coordinate.
    CHECK(plus.identity.eval(Rational(3)) == Rational(3));
    CHECK(verify_certificate(plus).accepted);
    CHECK(verify_certificate(minus).accepted);
}

TEST_CASE("monic certificates: lemma path at m > 1") {
    AlgebraicNumber a = sqrt2();
    AlgebraicNumber b(IntPoly{2, -4, 1}, Rational(3), Rational(4)); // 2 + sqrt2
    auto [plus, minus] = certify_monic(a, b);
    CHECK(plus.constants.at("form") == "lemma");
    CHECK(plus.constants.at("m") == "4");
    CHECK(plus.target.kind == CertTarget::Kind::BPower);
    CHECK(plus.target.exp > 0);
    CHECK(verify_certificate(plus).accepted);
    CHECK(verify_certificate(minus).accepted);
    CHECK(target_nontrivial(plus));

    SECTION("equal minimal polynomials are refused") {
        AlgebraicNumber b2(IntPoly{-2, 0, 1}, Rational(-2), Rational(0));
        CHECK_THROWS_AS(certify_monic(a, b2), HypothesisError);
    }
    SECTION("non-monic psi2 is refused") {
        AlgebraicNumber b3(IntPoly{2, -7, 2}, Rational(3), Rational(4));
        CHECK_THROWS_AS(certify_monic(a, b3), HypothesisError);
    }
}

TEST_CASE("verifier accepts the trivial identity certificate") {
    Certificate c;
    c.regime = "rational_b";
    c.a = sqrt2();
    c.b = Rational(1, 2);
    c.identity = LaurentPoly::one();
    c.target = {CertTarget::Kind::BasePower, 2, 0}; // identity matrix
    CHECK(verify_certificate(c).accepted);
    CHECK_FALSE(target_nontrivial(c));
}

TEST_CASE("fuzzed single-field corruption is rejected") {
    std::mt19937_64 rng(53);
    auto [plus, minus] = certify_rational_b(sqrt2(), Rational(1, 2));
    AlgebraicNumber b(IntPoly{2, -4, 1}, Rational(3), Rational(4));
    auto [mp, mm] = certify_monic(sqrt2(), b);
    std::vector<Certificate> base{plus, minus, mp, mm};
    int rejected = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        const Certificate& c = base[(size_t)(i % 4)];
        Certificate bad = corrupt(c, rng);
        ++total;
        if (!verify_certificate(bad).accepted) ++rejected;
    }
    CHECK(rejected == total);
}

TEST_CASE("certified matrices act invariantly on rational-ring presentations") {
    // Coordinate-separated rational-ring slots model an invariant group
    // whose second coordinate is a rational line: any positive rational
    // diagonal scaling, in particular the certified diag(1, q^{+-N}),
    // preserves it.
    using namespace builders;
    std::vector<SlotClass> cls{
        parametric("c1-even", Ring::Q, 0, {power_of(2, 0, 2, 0), CoordTemplate::make_zero()}),
        parametric("c1-odd", Ring::Q, 1, {power_of(2, 0, 2, 1), CoordTemplate::make_zero()}),
        parametric("c2-even", Ring::Q, 0, {CoordTemplate::make_zero(), power_of(2, 1, 2, 0)}),
        parametric("c2-odd", Ring::Q, 1, {CoordTemplate::make_zero(), power_of(2, 1, 2, 1)}),
    };
    for (auto& c : cls) c.channel = c.id;
    Presentation p("rational-rings",
                   {SymbolDecl(SymbolicReal("alpha", 2.5)), SymbolDecl(SymbolicReal("beta", 0.3))},
                   cls);

    auto [plus, minus] = certify_rational_b(sqrt2(), Rational(1, 2));
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 8);
    std::uniform_int_distribution<long long> uu(-3, 3);
    std::uniform_int_distribution<int> ci(0, 1);
    for (const Certificate& c : {plus, minus}) {
        MonomialMatrix m = MonomialMatrix::diagonal(
            MatEntry(Rational(1), Mono(2)),
            MatEntry(c.target.rational_value(), Mono(2)));
        REQUIRE(check_invariance(p, m).invariant);
        for (int i = 0; i < 100; ++i) {
            GroupElement g;
            g.add(SlotKey{ci(rng), uu(rng)}, Rational(num(rng), den(rng)));
            CHECK(p.membership(apply_monomial(p, g, m)).is_member());
            CHECK(p.membership(apply_monomial(p, g, m.inverse())).is_member());
        }
    }
}

TEST_CASE("soundness holds on randomized invariant presentations") {
    // Random coordinate-separated presentations: coordinate 1 carries Q- or
    // Z-ring slot families untouched by diag(1, c); coordinate 2 must be a
    // rational ring to absorb the scaling.
    using namespace builders;
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> ring_pick(0, 1);
    auto [plus, minus] = certify_rational_b(
        AlgebraicNumber(IntPoly{-2, 0, 1}, Rational(1), Rational(2)), Rational(1, 2));
    for (int trial = 0; trial < 5; ++trial) {
        Ring c1_ring = ring_pick(rng) == 0 ? Ring::Q : Ring::Z;
        std::vector<SlotClass> cls{
            parametric("c1-even", c1_ring, 0,
                       {power_of(2, 0, 2, 0), CoordTemplate::make_zero()}),
            parametric("c1-odd", c1_ring, 1,
                       {power_of(2, 0, 2, 1), CoordTemplate::make_zero()}),
            parametric("c2-even", Ring::Q, 0,
                       {CoordTemplate::make_zero(), power_of(2, 1, 2, 0)}),
            parametric("c2-odd", Ring::Q, 1,
                       {CoordTemplate::make_zero(), power_of(2, 1, 2, 1)}),
        };
        for (auto& c : cls) c.channel = c.id;
        Presentation p("trial",
                       {SymbolDecl(SymbolicReal("alpha", 2.5)),
                        SymbolDecl(SymbolicReal("beta", 0.3))},
                       cls);
        std::uniform_int_distribution<long> num(-9, 9), den(1, 8);
        std::uniform_int_distribution<long long> uu(-3, 3);
        std::uniform_int_distribution<int> ci(0, 3);
        for (const Certificate& c : {plus, minus}) {
            MonomialMatrix m = MonomialMatrix::diagonal(
                MatEntry(Rational(1), Mono(2)),
                MatEntry(c.target.rational_value(), Mono(2)));
            REQUIRE(check_invariance(p, m).invariant);
            for (int i = 0; i < 100; ++i) {
                int which = ci(rng);
                Rational coeff = p.classes()[(size_t)which].ring == Ring::Z
                                     ? Rational(num(rng))
                                     : Rational(num(rng), den(rng));
                GroupElement g;
                g.add(SlotKey{which, uu(rng)}, coeff);
                CHECK(p.membership(apply_monomial(p, g, m)).is_member());
                CHECK(p.membership(apply_monomial(p, g, m.inverse())).is_member());
            }
        }
    }
}

TEST_CASE("constructors are deterministic") {
    auto p1 = certify_rational_b(sqrt2(), Rational(1, 2));
    auto p2 = certify_rational_b(sqrt2(), Rational(1, 2));
    CHECK(p1.first.identity == p2.first.identity);
    CHECK(p1.first.constants == p2.first.constants);
    CHECK(p1.second.identity == p2.second.identity);
}
