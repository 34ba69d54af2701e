#pragma once

#include "diminv/laurent.hpp"
#include "diminv/poly.hpp"

namespace diminv {

// Integer Bezout identity a_poly * psi1 + b_poly * psi2 = m.
struct BezoutResult {
    IntPoly a_poly;
    IntPoly b_poly;
    Integer m; // positive

    bool holds(const IntPoly& psi1, const IntPoly& psi2) const {
        return a_poly * psi1 + b_poly * psi2 == IntPoly::constant(m) && m > 0;
    }
};

// Runs the extended Euclidean algorithm over Q[t] and clears denominators
// with the least single multiplier. m is positive but not globally minimal.
// Throws if psi1 and psi2 share a nonconstant factor; the message names it.
inline BezoutResult bezout_integerized(const IntPoly& psi1, const IntPoly& psi2) {
    if (psi1.is_zero() || psi2.is_zero())
        throw HypothesisError("bezout: inputs must be nonzero");
    auto [g, u, v] = RatPoly::extended_gcd(RatPoly(psi1), RatPoly(psi2));
    if (g.degree() > 0) {
        IntPoly common = (g * g.denominator_lcm()).to_int()->primitive();
        throw HypothesisError("bezout: inputs are not coprime (common factor " +
                              common.to_string() + ")");
    }
    // u*psi1 + v*psi2 = 1 after normalizing the constant gcd.
    Rational s = g.lead().inverse();
    u = u * s;
    v = v * s;
    Integer lcm = int_lcm(u.denominator_lcm(), v.denominator_lcm());
    IntPoly a = *(u * Rational(lcm)).to_int();
    IntPoly b = *(v * Rational(lcm)).to_int();
    Integer m = lcm;
    Integer common = int_gcd(int_gcd(a.content(), b.content()), m);
    if (common > 1) {
        std::vector<Integer> ac, bc;
        for (const auto& x : a.coeffs()) ac.push_back(x / common);
        for (const auto& x : b.coeffs()) bc.push_back(x / common);
        a = IntPoly(std::move(ac));
        b = IntPoly(std::move(bc));
        m /= common;
    }
    BezoutResult out{std::move(a), std::move(b), std::move(m)};
    if (!out.holds(psi1, psi2)) throw Error("internal: bezout identity failed re-expansion");
    return out;
}

// Identity m * phi1 + psi * phi2 + t^n = 1 in Z[t, 1/t], n != 0.
struct MonicLemmaResult {
    LaurentPoly phi1;
    LaurentPoly phi2;
    long long n = 0;
    unsigned long steps = 0; // power-enumeration steps used

    bool holds(const IntPoly& psi, const Integer& m) const {
        LaurentPoly lhs = phi1 * Rational(m) + LaurentPoly(psi) * phi2 +
                          LaurentPoly::term(n, Rational(1));
        return n != 0 && lhs.is_one() && phi1.has_integer_coeffs() &&
               phi2.has_integer_coeffs();
    }
};

// Enumerates t, t^2, ... in the finite ring Z[t]/(m, psi) until the first
// repeat t^{n1} = t^{n2} (n1 < n2), then reconstructs the witnessing identity
// and divides by t^{n2}. Deterministic: smallest n2 wins, so n = n1 - n2 < 0.
inline MonicLemmaResult monic_lemma(const IntPoly& psi, const Integer& m,
                                    unsigned long step_cap = (1ul << 22)) {
    if (!psi.is_monic()) throw HypothesisError("monic_lemma: psi must be monic");
    if (m <= 1) throw HypothesisError("monic_lemma: m must exceed 1");

    int deg = psi.degree();
    // Pigeonhole bound m^deg + 1; also capped to keep desk-scale inputs honest.
    Integer bound_z = int_pow(m, (unsigned long)deg) + 1;
    unsigned long bound = bound_z > (long)step_cap ? step_cap : (unsigned long)bound_z.get_ui();

    auto canon = [&](const IntPoly& p) {
        std::vector<Integer> key((size_t)deg, Integer(0));
        for (int i = 0; i < deg && i <= p.degree(); ++i) {
            Integer r = p.coeff((size_t)i) % m;
            if (r < 0) r += m;
            key[(size_t)i] = r;
        }
        return key;
    };

    std::map<std::vector<Integer>, unsigned long> seen;
    IntPoly power = IntPoly::monomial(1, 0);
    const IntPoly t = IntPoly::monomial(1, 1);
    unsigned long n1 = 0, n2 = 0;
    for (unsigned long k = 1; k <= bound + 1; ++k) {
        power = (power * t).divmod_monic(psi).second;
        auto key = canon(power);
        auto [it, fresh] = seen.emplace(std::move(key), k);
        if (!fresh) {
            n1 = it->second;
            n2 = k;
            break;
        }
    }
    if (n2 == 0)
        throw SearchExhausted("monic_lemma: no repeat within " + std::to_string(bound + 1) +
                              " steps");

    // t^{n2} - t^{n1} = psi * Q + R with R = 0 mod m; phi1' = R/m, phi2' = Q.
    IntPoly diff = IntPoly::monomial(1, n2) - IntPoly::monomial(1, n1);
    auto [q, r] = diff.divmod_monic(psi);
    std::vector<Integer> r_over_m;
    for (const auto& c : r.coeffs()) {
        if (c % m != 0) throw Error("internal: monic_lemma remainder not divisible by m");
        r_over_m.push_back(c / m);
    }
    MonicLemmaResult out;
    out.phi1 = LaurentPoly(IntPoly(std::move(r_over_m))).shifted(-(long long)n2);
    out.phi2 = LaurentPoly(q).shifted(-(long long)n2);
    out.n = (long long)n1 - (long long)n2;
    out.steps = n2;
    if (!out.holds(psi, m)) throw Error("internal: monic_lemma identity failed re-expansion");
    return out;
}

} // namespace diminv
