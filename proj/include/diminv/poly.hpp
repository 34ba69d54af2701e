#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "diminv/integers.hpp"
#include "diminv/rational.hpp"

namespace diminv {

class RatPoly;

// Polynomial over the integers, dense coefficients, index = degree.
// Zero polynomial is the empty coefficient list.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly constant(const Integer& v) { return IntPoly(std::vector<Integer>{v}); }
    static IntPoly monomial(const Integer& coeff, size_t deg) {
        std::vector<Integer> c(deg + 1, Integer(0));
        c[deg] = coeff;
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; } // -1 for zero
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    Integer lead() const { return c_.empty() ? Integer(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator-() const {
        std::vector<Integer> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return IntPoly(std::move(r));
    }
    IntPoly operator+(const IntPoly& o) const {
        std::vector<Integer> r(std::max(c_.size(), o.c_.size()), Integer(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return IntPoly(std::move(r));
    }
    IntPoly operator-(const IntPoly& o) const { return *this + (-o); }
    IntPoly operator*(const IntPoly& o) const {
        if (is_zero() || o.is_zero()) return IntPoly();
        std::vector<Integer> r(c_.size() + o.c_.size() - 1, Integer(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntPoly(std::move(r));
    }
    IntPoly operator*(const Integer& k) const {
        if (k == 0) return IntPoly();
        std::vector<Integer> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
        return IntPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    }
    Integer eval(const Integer& x) const {
        Integer acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Integer> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Integer((long)i);
        return IntPoly(std::move(r));
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& v : c_) g = int_gcd(g, v);
        return g;
    }

    // Primitive part with positive leading coefficient.
    IntPoly primitive() const {
        if (is_zero()) return IntPoly();
        Integer g = content();
        if (lead() < 0) g = -g;
        std::vector<Integer> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
        return IntPoly(std::move(r));
    }

    // Quotient and remainder by a monic divisor; everything stays integral.
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& d) const {
        if (d.is_zero() || !d.is_monic())
            throw HypothesisError("divmod_monic requires a monic divisor");
        std::vector<Integer> rem = c_;
        std::vector<Integer> quot;
        int dd = d.degree();
        if ((int)rem.size() - 1 >= dd) quot.assign(rem.size() - dd, Integer(0));
        for (int i = (int)rem.size() - 1; i >= dd; --i) {
            Integer q = rem[i];
            if (q == 0) continue;
            quot[i - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d.c_[j];
        }
        if ((int)rem.size() > dd) rem.resize(dd > 0 ? dd : 0);
        return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

// Polynomial over the rationals, dense coefficients.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit RatPoly(const IntPoly& p) {
        c_.reserve(p.coeffs().size());
        for (const auto& v : p.coeffs()) c_.emplace_back(v);
    }

    static RatPoly constant(const Rational& v) { return RatPoly(std::vector<Rational>{v}); }
    static RatPoly monomial(const Rational& coeff, size_t deg) {
        std::vector<Rational> c(deg + 1, Rational(0));
        c[deg] = coeff;
        return RatPoly(std::move(c));
    }
    static RatPoly x() { return monomial(Rational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool is_constant() const { return c_.size() <= 1; }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RatPoly& o) const { return !(*this == o); }

    RatPoly operator-() const {
        std::vector<Rational> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return RatPoly(std::move(r));
    }
    RatPoly operator+(const RatPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return RatPoly(std::move(r));
    }
    RatPoly operator-(const RatPoly& o) const { return *this + (-o); }
    RatPoly operator*(const RatPoly& o) const {
        if (is_zero() || o.is_zero()) return RatPoly();
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return RatPoly(std::move(r));
    }
    RatPoly operator*(const Rational& k) const {
        if (k.is_zero()) return RatPoly();
        std::vector<Rational> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
        return RatPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RatPoly derivative() const {
        if (c_.size() <= 1) return RatPoly();
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational((long)i);
        return RatPoly(std::move(r));
    }

    std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
        if (d.is_zero()) throw HypothesisError("division by zero polynomial");
        std::vector<Rational> rem = c_;
        std::vector<Rational> quot;
        int dd = d.degree();
        if ((int)rem.size() - 1 >= dd) quot.assign(rem.size() - dd, Rational(0));
        Rational inv_lead = d.lead().inverse();
        for (int i = (int)rem.size() - 1; i >= dd; --i) {
            Rational q = rem[i] * inv_lead;
            if (q.is_zero()) continue;
            quot[i - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d.c_[j];
        }
        if ((int)rem.size() > dd) rem.resize(dd > 0 ? dd : 0);
        return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
    }

    RatPoly monic() const {
        if (is_zero()) return RatPoly();
        return *this * lead().inverse();
    }

    // Monic gcd by the Euclidean algorithm.
    static RatPoly gcd(RatPoly a, RatPoly b) {
        while (!b.is_zero()) {
            RatPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // Returns (g, u, v) with u*a + v*b = g, g the monic gcd.
    static std::tuple<RatPoly, RatPoly, RatPoly> extended_gcd(const RatPoly& a,
                                                              const RatPoly& b) {
        RatPoly r0 = a, r1 = b;
        RatPoly u0 = constant(Rational(1)), u1;
        RatPoly v0, v1 = constant(Rational(1));
        while (!r1.is_zero()) {
            auto [q, r2] = r0.divmod(r1);
            RatPoly u2 = u0 - q * u1;
            RatPoly v2 = v0 - q * v1;
            r0 = std::move(r1); r1 = std::move(r2);
            u0 = std::move(u1); u1 = std::move(u2);
            v0 = std::move(v1); v1 = std::move(v2);
        }
        if (r0.is_zero()) return {r0, u0, v0};
        Rational s = r0.lead().inverse();
        return {r0 * s, u0 * s, v0 * s};
    }

    // Least positive integer L with L * this integral.
    Integer denominator_lcm() const {
        Integer l = 1;
        for (const auto& v : c_) l = int_lcm(l, v.den());
        return l;
    }

    std::optional<IntPoly> to_int() const {
        std::vector<Integer> r;
        r.reserve(c_.size());
        for (const auto& v : c_) {
            if (!v.is_integer()) return std::nullopt;
            r.push_back(v.num());
        }
        return IntPoly(std::move(r));
    }

    // Composition this(g(x)).
    RatPoly compose(const RatPoly& g) const {
        RatPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * g + constant(*it);
        return acc;
    }

    // Coefficient reversal x^n * p(1/x) at the stated degree n >= degree().
    RatPoly reverse(size_t n) const {
        std::vector<Rational> r(n + 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
        return RatPoly(std::move(r));
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

namespace detail {

inline std::string term_str(const std::string& cs, long long deg, const std::string& var,
                            bool first) {
    std::string sign = first ? (cs[0] == '-' ? "-" : "") : (cs[0] == '-' ? " - " : " + ");
    std::string mag = cs[0] == '-' ? cs.substr(1) : cs;
    std::string body;
    if (deg == 0) {
        body = mag;
    } else {
        body = (mag == "1" ? "" : mag + "*") + var;
        if (deg != 1) body += "^" + std::to_string(deg);
    }
    return sign + body;
}

} // namespace detail

inline std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        out += detail::term_str(c_[i].get_str(), i, var, first);
        first = false;
    }
    return out;
}

inline std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        out += detail::term_str(c_[i].to_string(), i, var, first);
        first = false;
    }
    return out;
}

// Number of sign variations in the coefficient sequence.
inline int sign_variations(const RatPoly& p) {
    int var = 0, prev = 0;
    for (const auto& c : p.coeffs()) {
        int s = c.sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Descartes bound on the number of roots of p in the open interval (lo, hi):
// the returned count V satisfies V >= #roots and V = #roots (mod 2); in
// particular V = 0 or V = 1 is exact.
inline int descartes_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero() || !(lo < hi)) throw HypothesisError("descartes_count: bad input");
    RatPoly q(p);
    // Map (0,1) onto (lo,hi), then (0,inf) onto (0,1) by x -> 1/(1+x).
    RatPoly affine{lo, hi - lo};
    RatPoly on_unit = q.compose(affine);
    RatPoly rev = on_unit.reverse((size_t)q.degree());
    RatPoly shifted = rev.compose(RatPoly{Rational(1), Rational(1)});
    return sign_variations(shifted);
}

} // namespace diminv
