#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "diminv/action.hpp"

using namespace diminv;

namespace {

Presentation t1() {
    return build_t1(SymbolicReal("alpha", 2.5), SymbolicReal("beta", 0.3));
}
Presentation t3() { return build_t3(SymbolicReal("alpha", 2.5)); }
Presentation t6() {
    return build_t6(SymbolicReal("alpha", 2.5), SymbolicReal("beta", 0.3));
}

MatEntry entry(size_t nsyms, const Rational& c, std::initializer_list<std::pair<size_t, int>> pw,
               int rad = 0) {
    Mono m(nsyms);
    m.radical = rad;
    for (auto [i, e] : pw) m.exps[i] = e;
    return MatEntry(c, std::move(m));
}

GroupElement random_member(const Presentation& p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nslots(1, 4), cls(0, (int)p.classes().size() - 1);
    std::uniform_int_distribution<long long> uu(-3, 3);
    std::uniform_int_distribution<long> zc(-9, 9), den(1, 8);
    GroupElement g;
    for (int i = 0; i < nslots(rng); ++i) {
        int ci = cls(rng);
        const auto& c = p.classes()[(size_t)ci];
        if (c.ring == Ring::Zero) continue;
        long long u = c.fixed ? 0 : uu(rng);
        Rational coeff = c.ring == Ring::Z ? Rational(zc(rng)) : Rational(zc(rng), den(rng));
        g.add(SlotKey{ci, u}, coeff);
    }
    return g;
}

} // namespace

TEST_CASE("apply_monomial shifts slots") {
    Presentation p = t1();
    MonomialMatrix m = MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 2}}),
                                                entry(2, Rational(1), {{1, 2}}));
    VecExpr img = apply_monomial(p, p.unit(), m);
    auto res = p.membership(img);
    REQUIRE(res.is_member());
    CHECK(res.decomposition.coeffs.size() == 1);
    CHECK(res.decomposition.coeffs.begin()->first == *p.slot_at("main", 0, 2));

    CHECK(apply_monomial(p, p.unit(), MonomialMatrix::identity(2)) == p.expand(p.unit()));

    // Shift by one degree turns an even rational coefficient into an odd-slot
    // coefficient, which fails the integer ring check.
    MonomialMatrix shift1 = MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 1}}),
                                                     entry(2, Rational(1), {{1, 1}}));
    GroupElement half;
    half.add(*p.slot_at("main", 0, 0), Rational(1, 2));
    CHECK_FALSE(p.membership(apply_monomial(p, half, shift1)).is_member());
}

TEST_CASE("T1 invariance of the even diagonal powers") {
    Presentation p = t1();
    MonomialMatrix gen = MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 2}}),
                                                  entry(2, Rational(1), {{1, 2}}));
    for (long long n = -5; n <= 5; ++n) {
        auto r = check_invariance(p, gen.pow(n));
        INFO("n = " << n);
        CHECK(r.invariant);
    }
}

TEST_CASE("T1 rejects a rationally scaled even matrix with witness") {
    Presentation p = t1();
    MonomialMatrix m = MonomialMatrix::diagonal(entry(2, Rational(2), {{0, 2}}),
                                                entry(2, Rational(1), {{1, 2}}));
    auto r = check_invariance(p, m);
    REQUIRE_FALSE(r.invariant);
    // The witness replays: it is a member whose image fails membership.
    CHECK(is_member(p, r.witness));
    MonomialMatrix dir = r.witness_backward ? m.inverse() : m;
    CHECK_FALSE(p.membership(apply_monomial(p, r.witness, dir)).is_member());
}

TEST_CASE("uniform integer scaling fails only in the inverse direction") {
    Presentation p = t1();
    MonomialMatrix two = MonomialMatrix::diagonal(entry(2, Rational(2), {}),
                                                  entry(2, Rational(2), {}));
    auto r = check_invariance(p, two);
    REQUIRE_FALSE(r.invariant);
    CHECK(r.witness_backward);
    CHECK(is_member(p, r.witness));
    CHECK_FALSE(p.membership(apply_monomial(p, r.witness, two.inverse())).is_member());
}

TEST_CASE("T3 coordinate swap is refuted from the radical family") {
    Presentation p = t3();
    MonomialMatrix swap = MonomialMatrix::antidiagonal(entry(1, Rational(1), {}),
                                                       entry(1, Rational(1), {}));
    auto r = check_invariance(p, swap);
    REQUIRE_FALSE(r.invariant);
    CHECK(r.reason.find("z-rad-odd") != std::string::npos);
    CHECK(is_member(p, r.witness));
    MonomialMatrix dir = r.witness_backward ? swap.inverse() : swap;
    auto img = p.membership(apply_monomial(p, r.witness, dir));
    CHECK_FALSE(img.is_member());
    CHECK(img.status == MembershipResult::Status::UnknownMonomial);
}

TEST_CASE("T3 inverse-paired diagonal powers are invariant") {
    Presentation p = t3();
    MonomialMatrix gen = MonomialMatrix::diagonal(entry(1, Rational(1), {{0, 2}}),
                                                  entry(1, Rational(1), {{0, -2}}));
    for (long long n = -5; n <= 5; ++n) CHECK(check_invariance(p, gen.pow(n)).invariant);
    // Same power on both coordinates is not invariant for T3.
    MonomialMatrix bad = MonomialMatrix::diagonal(entry(1, Rational(1), {{0, 2}}),
                                                  entry(1, Rational(1), {{0, 2}}));
    CHECK_FALSE(check_invariance(p, bad).invariant);
}

TEST_CASE("T6 admits diag(alpha^n, 1) for every n") {
    Presentation p = t6();
    MonomialMatrix gen = MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 1}}),
                                                  entry(2, Rational(1), {}));
    for (long long n = -5; n <= 5; ++n) CHECK(check_invariance(p, gen.pow(n)).invariant);
    MonomialMatrix bad = MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 1}}),
                                                  entry(2, Rational(1), {{1, 1}}));
    CHECK_FALSE(check_invariance(p, bad).invariant);
}

TEST_CASE("invariant matrices preserve membership bidirectionally") {
    std::mt19937_64 rng(43);
    Presentation p1 = t1(), p3 = t3(), p6 = t6();
    struct Case {
        const Presentation* p;
        MonomialMatrix m;
    };
    std::vector<Case> cases;
    cases.push_back({&p1, MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 2}}),
                                                   entry(2, Rational(1), {{1, 2}}))});
    cases.push_back({&p3, MonomialMatrix::diagonal(entry(1, Rational(1), {{0, 4}}),
                                                   entry(1, Rational(1), {{0, -4}}))});
    cases.push_back({&p6, MonomialMatrix::diagonal(entry(2, Rational(1), {{0, 3}}),
                                                   entry(2, Rational(1), {}))});
    for (auto& [pp, m] : cases) {
        REQUIRE(check_invariance(*pp, m).invariant);
        for (int i = 0; i < 100; ++i) {
            GroupElement g = random_member(*pp, rng);
            CHECK(pp->membership(apply_monomial(*pp, g, m)).is_member());
            CHECK(pp->membership(apply_monomial(*pp, g, m.inverse())).is_member());
        }
    }
}

TEST_CASE("matrix algebra: inverse and powers") {
    MatEntry a = entry(1, Rational(3, 2), {{0, 2}}, 1);
    MatEntry ai = a.inverse();
    auto [carry, m] = mono_mul(a.mono, ai.mono);
    CHECK(a.coeff * ai.coeff * carry == Rational(1));
    CHECK(m.is_trivial());

    MonomialMatrix anti = MonomialMatrix::antidiagonal(entry(1, Rational(2), {{0, 1}}),
                                                       entry(1, Rational(3), {{0, -1}}));
    CHECK((anti * anti.inverse()).is_identity());
    CHECK(anti.pow(2).shape == MonomialMatrix::Shape::Diagonal);
    CHECK(anti.pow(-3).shape == MonomialMatrix::Shape::Antidiagonal);
    CHECK((anti.pow(3) == anti * anti * anti));

    // Mismatched symbol tables are rejected.
    Presentation p = t3();
    CHECK_THROWS_AS(check_invariance(p, MonomialMatrix::identity(2)), HypothesisError);
}
