#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "diminv/poly.hpp"

namespace diminv {

// Laurent polynomial over the rationals, sparse term map exponent -> coeff.
// Exponents are machine integers; coefficients are exact rationals.
class LaurentPoly {
public:
    using Exp = long long;

    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c) { add_term(0, c); }
    explicit LaurentPoly(const IntPoly& p) {
        for (int i = 0; i <= p.degree(); ++i) add_term(i, Rational(p.coeff((size_t)i)));
    }
    explicit LaurentPoly(const RatPoly& p) {
        for (int i = 0; i <= p.degree(); ++i) add_term(i, p.coeff((size_t)i));
    }

    static LaurentPoly term(Exp e, const Rational& c) {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }
    static LaurentPoly one() { return LaurentPoly(Rational(1)); }

    void add_term(Exp e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    const std::map<Exp, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const {
        return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second.is_one();
    }
    Exp lowest() const { return t_.empty() ? 0 : t_.begin()->first; }
    Exp highest() const { return t_.empty() ? 0 : t_.rbegin()->first; }
    size_t term_count() const { return t_.size(); }
    Rational coeff(Exp e) const {
        auto it = t_.find(e);
        return it == t_.end() ? Rational(0) : it->second;
    }

    bool has_integer_coeffs() const {
        for (const auto& [e, c] : t_)
            if (!c.is_integer()) return false;
        return true;
    }

    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }
    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.t_) r.add_term(e, c);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (const auto& [e1, c1] : t_)
            for (const auto& [e2, c2] : o.t_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    LaurentPoly operator*(const Rational& k) const {
        LaurentPoly r;
        if (k.is_zero()) return r;
        for (const auto& [e, c] : t_) r.t_.emplace(e, c * k);
        return r;
    }

    // Multiplication by t^k.
    LaurentPoly shifted(Exp k) const {
        LaurentPoly r;
        for (const auto& [e, c] : t_) r.t_.emplace(e + k, c);
        return r;
    }

    LaurentPoly pow(unsigned long k) const {
        LaurentPoly acc = one();
        LaurentPoly base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // Exact evaluation; x must be nonzero when negative exponents occur.
    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (const auto& [e, c] : t_) acc += c * x.pow(e);
        return acc;
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            out += detail::term_str(it->second.to_string(), it->first, var, first);
            first = false;
        }
        return out;
    }

private:
    std::map<Exp, Rational> t_;
};

namespace detail {

inline RatPoly mulmod(const RatPoly& a, const RatPoly& b, const RatPoly& psi) {
    return (a * b).divmod(psi).second;
}

inline RatPoly powmod(RatPoly base, unsigned long long k, const RatPoly& psi) {
    RatPoly acc = RatPoly::constant(Rational(1)).divmod(psi).second;
    base = base.divmod(psi).second;
    while (k) {
        if (k & 1) acc = mulmod(acc, base, psi);
        base = mulmod(base, base, psi);
        k >>= 1;
    }
    return acc;
}

} // namespace detail

// Does psi divide f in the Laurent ring Q[t, 1/t]? Powers of t are units, so
// for psi with psi(0) != 0 this is ordinary divisibility of the shifted
// polynomial. Sparse long division; the step cap guards against dense
// quotients on adversarial inputs (honest certificate identities have sparse
// quotients by construction).
inline bool laurent_divisible(const LaurentPoly& f, const IntPoly& psi,
                              size_t step_cap = 1 << 20) {
    if (f.is_zero()) return true;
    if (psi.is_zero()) return false;
    // Strip the t-power part of psi; t is a unit in the Laurent ring.
    IntPoly core = psi;
    {
        size_t v = 0;
        while (core.coeff(v) == 0) ++v;
        if (v > 0) {
            std::vector<Integer> cs(core.coeffs().begin() + (long)v, core.coeffs().end());
            core = IntPoly(std::move(cs));
        }
    }
    if (core.degree() == 0) return true;
    std::map<LaurentPoly::Exp, Rational> work(f.terms().begin(), f.terms().end());
    const long long dd = core.degree();
    const Rational lead_inv = Rational(core.lead()).inverse();
    long long low = work.begin()->first;
    size_t steps = 0;
    while (!work.empty()) {
        auto top = std::prev(work.end());
        long long e = top->first;
        if (e - low < dd) return false; // nonzero remainder of lower degree
        if (++steps > step_cap)
            throw SearchExhausted("laurent divisibility: quotient too dense");
        Rational q = top->second * lead_inv;
        long long shift = e - dd;
        for (long long i = 0; i <= dd; ++i) {
            Rational delta = q * Rational(core.coeff((size_t)i));
            if (delta.is_zero()) continue;
            auto it = work.find(shift + i);
            if (it == work.end()) {
                work.emplace(shift + i, -delta);
            } else {
                it->second -= delta;
                if (it->second.is_zero()) work.erase(it);
            }
        }
    }
    return true;
}

// Canonical representative of f in Q[t]/(psi), degree < deg(psi).
// Negative powers of t are realized through the Bezout inverse of t mod psi,
// which exists iff psi(0) != 0.
inline RatPoly eval_mod(const LaurentPoly& f, const IntPoly& psi) {
    if (psi.degree() < 1) throw HypothesisError("eval_mod: modulus must have degree >= 1");
    RatPoly m(psi);
    RatPoly t_inv;
    if (f.lowest() < 0) {
        if (psi.coeff(0) == 0)
            throw HypothesisError("t is not invertible modulo the given polynomial");
        auto [g, u, v] = RatPoly::extended_gcd(RatPoly::x(), m);
        if (g.degree() != 0) throw HypothesisError("t is not invertible modulo the given polynomial");
        t_inv = u.divmod(m).second; // u*t + v*psi = 1
    }
    RatPoly acc;
    for (const auto& [e, c] : f.terms()) {
        RatPoly p = e >= 0 ? detail::powmod(RatPoly::x(), (unsigned long long)e, m)
                           : detail::powmod(t_inv, (unsigned long long)(-e), m);
        acc = acc + p * c;
    }
    return acc.divmod(m).second;
}

} // namespace diminv
