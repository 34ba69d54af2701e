#pragma once

#include <variant>

#include "diminv/algebraic.hpp"
#include "diminv/bezout.hpp"
#include "diminv/laurent.hpp"
#include "diminv/qadic.hpp"

namespace diminv {

// The certified matrix is diag(1, value): either an exact rational power of
// an integer base, or a power of the algebraic number b.
struct CertTarget {
    enum class Kind { BasePower, BPower };
    Kind kind = Kind::BasePower;
    Integer base = 0;  // meaningful for BasePower
    long long exp = 0;

    Rational rational_value() const {
        if (kind != Kind::BasePower) throw Error("internal: target is a power of b");
        return Rational(base).pow(exp);
    }
    bool operator==(const CertTarget&) const = default;
};

// A replayable witness that diag(1, target) lies in I(G) for every
// A-invariant G: a one-variable Laurent polynomial P with integer
// coefficients whose evaluation gives P(a) = 1 (through the minimal
// polynomial of a) and P(b) = target exactly.
struct Certificate {
    std::string regime; // rational_b | laurent_unit | monic_b
    AlgebraicNumber a;
    std::variant<Rational, AlgebraicNumber> b;
    LaurentPoly identity;
    CertTarget target;
    std::map<std::string, std::string> constants;

    bool b_is_rational() const { return std::holds_alternative<Rational>(b); }
    const Rational& b_rational() const { return std::get<Rational>(b); }
    const AlgebraicNumber& b_algebraic() const { return std::get<AlgebraicNumber>(b); }
};

struct VerifyResult {
    bool accepted = false;
    std::string reason; // set when rejected
};

// Independent replay: recomputes both coordinates of identity(A) from the
// certificate alone and compares with the target. Shares no state with the
// constructors. Rejection is a result, not an error.
inline VerifyResult verify_certificate(const Certificate& c) {
    try {
        if (!c.identity.has_integer_coeffs())
            return {false, "identity polynomial has non-integer coefficients"};
        // First coordinate: P - 1 must vanish against the minimal polynomial
        // of a, i.e. psi1 divides it in the Laurent ring.
        if (c.a.minpoly().coeff(0) == 0 && c.identity.lowest() < 0)
            return {false, "negative powers with a = 0 root"};
        if (!laurent_divisible(c.identity - LaurentPoly::one(), c.a.minpoly()))
            return {false, "first coordinate does not reduce to 1 modulo the minimal "
                           "polynomial of a"};
        // Second coordinate.
        if (c.b_is_rational()) {
            Rational got = c.identity.eval(c.b_rational());
            Rational want = c.target.kind == CertTarget::Kind::BasePower
                                ? c.target.rational_value()
                                : c.b_rational().pow(c.target.exp);
            if (got != want)
                return {false, "second coordinate evaluates to " + got.to_string() +
                                   ", expected " + want.to_string()};
        } else {
            const IntPoly& psi2 = c.b_algebraic().minpoly();
            LaurentPoly want =
                c.target.kind == CertTarget::Kind::BasePower
                    ? LaurentPoly(c.target.rational_value())
                    : LaurentPoly::term(c.target.exp, Rational(1));
            if (psi2.coeff(0) == 0 && (c.identity.lowest() < 0 || want.lowest() < 0))
                return {false, "negative powers with b = 0 root"};
            if (!laurent_divisible(c.identity - want, psi2))
                return {false,
                        "second coordinate does not reduce to the target modulo the "
                        "minimal polynomial of b"};
        }
        return {true, ""};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

namespace detail {

// Solve x*A + y*B = c over the integers for coprime A, B.
inline std::pair<Integer, Integer> bezout_ints(const Integer& A, const Integer& B,
                                               const Integer& c) {
    Integer g, x0, y0;
    mpz_gcdext(g.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    if (c % g != 0) throw Error("internal: bezout_ints unsolvable");
    Integer k = c / g;
    return {x0 * k, y0 * k};
}

inline void require_positive_not_one(const AlgebraicNumber& x, const std::string& who) {
    if (x.sign() <= 0) throw HypothesisError(who + " must be positive");
    if (x.is_one()) throw HypothesisError(who + " must differ from 1");
}

inline void self_check(const Certificate& c) {
    auto v = verify_certificate(c);
    if (!v.accepted) throw Error("internal: constructed certificate failed replay: " + v.reason);
}

inline std::string istr(const Integer& v) { return v.get_str(); }

} // namespace detail

// Certificates for diag(1, q^{+N}) and diag(1, q^{-N}) where b = p/q (lowest
// terms, q >= 2); for integer b = p the pair targets diag(1, p^{+-N}).
// Returned with the positive-exponent certificate first.
inline std::pair<Certificate, Certificate> certify_rational_b(const AlgebraicNumber& a,
                                                              const Rational& b) {
    detail::require_positive_not_one(a, "a");
    if (!b.is_positive()) throw HypothesisError("b must be positive");
    if (b.is_one()) throw HypothesisError("b must differ from 1");
    if (a.is_rational() && a.rational_value() == b)
        throw HypothesisError("a and b must differ");

    const IntPoly psi = a.minpoly();
    const int n = psi.degree();
    const Integer p = b.num(), q = b.den();

    Certificate plus, minus;
    plus.regime = minus.regime = "rational_b";

    if (q != 1) {
        // S = q^n psi(p/q), an integer, nonzero since b is not a root of psi.
        Integer S = 0;
        for (int i = 0; i <= n; ++i)
            S += psi.coeff((size_t)i) * int_pow(p, (unsigned long)i) *
                 int_pow(q, (unsigned long)(n - i));
        if (S == 0) throw Error("internal: minimal polynomial vanished at b");
        QAdicResult qa = q_adic_certificate(S, q);
        long long min_n = std::max((long long)1, (long long)n - qa.n + 1);
        UnitPowerResult up = solve_unit_power(qa.r, q, min_n);
        const long long N = up.n;
        const long long K = N + qa.n - n; // >= 1 by the choice of min_n
        auto [x, y] = detail::bezout_ints(int_pow(p, (unsigned long)K),
                                          int_pow(q, (unsigned long)K), up.s);
        // diag(1, q^-N) = amp (x A^K + y) psi(A) + I.
        LaurentPoly factor = LaurentPoly::term(K, Rational(x)) + LaurentPoly(Rational(y));
        minus.identity =
            factor * LaurentPoly(psi) * Rational(qa.amp) + LaurentPoly::one();
        minus.target = {CertTarget::Kind::BasePower, q, -N};

        // diag(1, q^+N) = amp (x' A^j + y') psi(A) + I with j = qa.n - n.
        const long long j = qa.n - n;
        Integer xp, yp;
        if (j >= 0) {
            std::tie(xp, yp) = detail::bezout_ints(int_pow(p, (unsigned long)j),
                                                   int_pow(q, (unsigned long)j), -up.s);
        } else {
            // x' p^j + y' q^j = -s  <=>  x' q^|j| + y' p^|j| = -s (pq)^|j|.
            Integer pj = int_pow(p, (unsigned long)(-j)), qj = int_pow(q, (unsigned long)(-j));
            std::tie(xp, yp) = detail::bezout_ints(qj, pj, -up.s * pj * qj);
        }
        LaurentPoly factor2 = LaurentPoly::term(j, Rational(xp)) + LaurentPoly(Rational(yp));
        plus.identity =
            factor2 * LaurentPoly(psi) * Rational(qa.amp) + LaurentPoly::one();
        plus.target = {CertTarget::Kind::BasePower, q, N};

        for (auto* c : {&plus, &minus}) {
            c->constants = {{"amp", detail::istr(qa.amp)}, {"r", detail::istr(qa.r)},
                            {"s", detail::istr(up.s)},     {"N", std::to_string(N)},
                            {"qadic_N", std::to_string(qa.n)}, {"deg_psi", std::to_string(n)},
                            {"x", detail::istr(x)},        {"y", detail::istr(y)},
                            {"xp", detail::istr(xp)},      {"yp", detail::istr(yp)}};
        }
    } else {
        // Integer b = p with p >= 2: one-term identities
        // diag(1, p^-N) = amp s A^{-m-N} psi(A) + I,
        // diag(1, p^+N) = -amp s A^{-m} psi(A) + I.
        Integer S = psi.eval(p);
        if (S == 0) throw Error("internal: minimal polynomial vanished at b");
        QAdicResult qa = q_adic_certificate(S, p);
        UnitPowerResult up = solve_unit_power(qa.r, p, 1);
        const long long N = up.n;
        minus.identity = LaurentPoly(psi).shifted(-qa.n - N) * Rational(Integer(qa.amp * up.s)) +
                         LaurentPoly::one();
        minus.target = {CertTarget::Kind::BasePower, p, -N};
        plus.identity = LaurentPoly(psi).shifted(-qa.n) * Rational(Integer(-qa.amp * up.s)) +
                        LaurentPoly::one();
        plus.target = {CertTarget::Kind::BasePower, p, N};
        for (auto* c : {&plus, &minus}) {
            c->constants = {{"amp", detail::istr(qa.amp)},
                            {"r", detail::istr(qa.r)},
                            {"s", detail::istr(up.s)},
                            {"N", std::to_string(N)},
                            {"qadic_N", std::to_string(qa.n)},
                            {"deg_psi", std::to_string(n)}};
        }
    }

    for (auto* c : {&plus, &minus}) {
        c->a = a;
        c->b = b;
        detail::self_check(*c);
    }
    return {plus, minus};
}

// Certificates for diag(1, q^{+n}) and diag(1, q^{-n}), given a Laurent
// witness phi with phi(b) = p/q (checked exactly in Q[t]/psi2).
inline std::pair<Certificate, Certificate> certify_laurent_unit(const AlgebraicNumber& a,
                                                                const AlgebraicNumber& b,
                                                                Integer p, Integer q,
                                                                const LaurentPoly& phi) {
    detail::require_positive_not_one(a, "a");
    detail::require_positive_not_one(b, "b");
    if (q < 0) {
        q = -q;
        p = -p;
    }
    if (p == 0) throw HypothesisError("p must be nonzero");
    if (q < 2) throw HypothesisError("q must satisfy |q| >= 2");
    if (int_gcd(p, q) != 1) throw HypothesisError("p and q must be coprime");
    if (!phi.has_integer_coeffs())
        throw HypothesisError("phi must have integer coefficients");
    const IntPoly psi1 = a.minpoly(), psi2 = b.minpoly();
    if (psi1 == psi2)
        throw HypothesisError(
            "a and b share a minimal polynomial; the Bezout step needs distinct ones");
    if (psi2.coeff(0) == 0) throw HypothesisError("b must be nonzero");
    RatPoly phi_at_b = eval_mod(phi, psi2);
    if (phi_at_b != RatPoly::constant(Rational(p, q)))
        throw HypothesisError("witness mismatch: phi(b) = " + phi_at_b.to_string() +
                              " differs from p/q = " + Rational(p, q).to_string());

    BezoutResult bez = bezout_integerized(psi1, psi2);
    QAdicResult qa = q_adic_certificate(bez.m, q);
    UnitPowerResult up = solve_unit_power(qa.r, q, 1);
    const Integer s = -up.s; // s*r = q^n - 1
    const long long n = up.n;
    const long long E = n + qa.n;
    auto [x, y] =
        detail::bezout_ints(int_pow(p, (unsigned long)E), int_pow(q, (unsigned long)E), s);
    auto [xp, yp] =
        detail::bezout_ints(int_pow(p, (unsigned long)E), int_pow(q, (unsigned long)E), -s);

    LaurentPoly core = LaurentPoly(bez.a_poly) * LaurentPoly(psi1) * Rational(qa.amp);
    LaurentPoly phiE = phi.pow((unsigned long)E);

    Certificate plus, minus;
    plus.regime = minus.regime = "laurent_unit";
    plus.identity = (phiE * Rational(x) + LaurentPoly(Rational(y))) * core *
                        Rational(q).pow(n) +
                    LaurentPoly::one();
    plus.target = {CertTarget::Kind::BasePower, q, n};
    minus.identity =
        (phiE * Rational(xp) + LaurentPoly(Rational(yp))) * core + LaurentPoly::one();
    minus.target = {CertTarget::Kind::BasePower, q, -n};

    for (auto* c : {&plus, &minus}) {
        c->a = a;
        c->b = b;
        c->constants = {{"m", detail::istr(bez.m)},   {"amp", detail::istr(qa.amp)},
                        {"r", detail::istr(qa.r)},    {"s", detail::istr(s)},
                        {"n", std::to_string(n)},     {"qadic_N", std::to_string(qa.n)},
                        {"E", std::to_string(E)},     {"p", detail::istr(p)},
                        {"q", detail::istr(q)},       {"x", detail::istr(x)},
                        {"y", detail::istr(y)},       {"xp", detail::istr(xp)},
                        {"yp", detail::istr(yp)}};
        detail::self_check(*c);
    }
    return {plus, minus};
}

// Certificates for diag(1, b^{+n}) and diag(1, b^{-n}) when the minimal
// polynomial of b is monic. Short form when the Bezout constant is 1,
// otherwise through the monic-Laurent identity.
inline std::pair<Certificate, Certificate> certify_monic(const AlgebraicNumber& a,
                                                         const AlgebraicNumber& b) {
    detail::require_positive_not_one(a, "a");
    detail::require_positive_not_one(b, "b");
    const IntPoly psi1 = a.minpoly(), psi2 = b.minpoly();
    if (psi1 == psi2)
        throw HypothesisError("minimal polynomials of a and b must be different");
    if (!psi2.is_monic())
        throw HypothesisError("minimal polynomial of b must be monic");
    if (psi2.coeff(0) == 0) throw HypothesisError("b must be nonzero");

    BezoutResult bez = bezout_integerized(psi1, psi2);
    LaurentPoly bez_core = LaurentPoly(bez.a_poly) * LaurentPoly(psi1);

    Certificate plus, minus;
    plus.regime = minus.regime = "monic_b";
    long long n;
    if (bez.m == 1) {
        n = 1;
        // (A^n - I) phi psi1(A) + I = diag(1, b^n).
        plus.identity = (LaurentPoly::term(1, Rational(1)) - LaurentPoly::one()) * bez_core +
                        LaurentPoly::one();
        minus.identity = (LaurentPoly::term(-1, Rational(1)) - LaurentPoly::one()) * bez_core +
                         LaurentPoly::one();
        plus.target = {CertTarget::Kind::BPower, 0, 1};
        minus.target = {CertTarget::Kind::BPower, 0, -1};
        for (auto* c : {&plus, &minus})
            c->constants = {{"m", "1"}, {"n", "1"}, {"form", "short"}};
    } else {
        MonicLemmaResult lem = monic_lemma(psi2, bez.m);
        n = lem.n; // negative under the deterministic first-repeat rule
        // -phi_lemma(A) phi_bezout(A) psi1(A) + I = diag(1, b^n).
        LaurentPoly prod = lem.phi1 * bez_core;
        Certificate first, second;
        first.identity = (-prod) + LaurentPoly::one();
        first.target = {CertTarget::Kind::BPower, 0, n};
        second.identity = prod.shifted(-n) + LaurentPoly::one();
        second.target = {CertTarget::Kind::BPower, 0, -n};
        // Order the pair with the positive exponent first.
        plus.identity = n > 0 ? first.identity : second.identity;
        plus.target = n > 0 ? first.target : second.target;
        minus.identity = n > 0 ? second.identity : first.identity;
        minus.target = n > 0 ? second.target : first.target;
        for (auto* c : {&plus, &minus})
            c->constants = {{"m", detail::istr(bez.m)},
                            {"n", std::to_string(n)},
                            {"lemma_steps", std::to_string(lem.steps)},
                            {"form", "lemma"}};
    }
    for (auto* c : {&plus, &minus}) {
        c->a = a;
        c->b = b;
        detail::self_check(*c);
    }
    return {plus, minus};
}

// The strict-containment claim: the certified matrix is not a power of
// A = diag(a, b). Its first entry is 1 while the second differs from 1, and
// both entries of A differ from 1 under the constructors' hypotheses.
inline bool target_nontrivial(const Certificate& c) {
    if (c.target.exp == 0) return false;
    if (c.target.kind == CertTarget::Kind::BasePower)
        return c.target.rational_value() != Rational(1);
    if (c.b_is_rational()) return !c.b_rational().is_one();
    return !c.b_algebraic().is_one();
}

} // namespace diminv
