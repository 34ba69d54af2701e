#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diminv/interval.hpp"
#include "diminv/poly.hpp"

namespace diminv {

namespace detail {

// All rational roots of p (nonzero), by the divisor test on the
// constant and leading coefficients.
inline std::vector<Rational> rational_roots(const IntPoly& p) {
    std::vector<Rational> roots;
    if (p.is_zero()) throw HypothesisError("rational_roots of zero polynomial");
    int low = 0;
    while (p.coeff((size_t)low) == 0) ++low; // factor out t^low
    if (low > 0) roots.emplace_back(0);
    Integer c0 = abs(p.coeff((size_t)low));
    Integer cl = abs(p.lead());
    std::vector<Integer> nums, dens;
    for (Integer d = 1; d * d <= c0; ++d) {
        if (c0 % d == 0) {
            nums.push_back(d);
            nums.push_back(c0 / d);
        }
    }
    for (Integer d = 1; d * d <= cl; ++d) {
        if (cl % d == 0) {
            dens.push_back(d);
            dens.push_back(cl / d);
        }
    }
    for (const auto& n : nums)
        for (const auto& d : dens)
            for (int s : {1, -1}) {
                Rational cand(s * n, d);
                if (p.eval(cand).is_zero()) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
    return roots;
}

inline std::vector<Integer> divisors_signed(const Integer& v) {
    std::vector<Integer> out;
    Integer a = abs(v);
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            out.push_back(-d);
            if (d * d != a) {
                out.push_back(a / d);
                out.push_back(-(a / d));
            }
        }
    }
    return out;
}

// Kronecker test for a quadratic integer factor of a quartic with no
// rational roots: a factor g is pinned by its values at -1, 0, 1, which
// must divide p(-1), p(0), p(1).
inline bool has_quadratic_factor(const IntPoly& p) {
    Integer pm = p.eval(Integer(-1)), p0 = p.eval(Integer(0)), pp = p.eval(Integer(1));
    if (pm == 0 || p0 == 0 || pp == 0) return true; // rational root, caller screens first
    for (const Integer& dm : divisors_signed(pm))
        for (const Integer& d0 : divisors_signed(p0)) {
            if (d0 < 0) continue; // g and -g give the same factor
            for (const Integer& dp : divisors_signed(pp)) {
                // g(x) = d0 + x*(dp - dm)/2 + x^2*(dp + dm - 2 d0)/2
                Integer lin2 = dp - dm, quad2 = dp + dm - 2 * d0;
                if (lin2 % 2 != 0 || quad2 % 2 != 0) continue;
                IntPoly g(std::vector<Integer>{d0, lin2 / 2, quad2 / 2});
                if (g.degree() != 2) continue;
                auto rem = RatPoly(p).divmod(RatPoly(g)).second;
                if (rem.is_zero()) return true;
            }
        }
    return false;
}

} // namespace detail

// Screens a primitive squarefree polynomial for irreducibility over Q.
// Complete for degree <= 4 (rational-root test, plus the Kronecker
// quadratic-factor test for quartics); degree >= 5 returns nullopt.
inline std::optional<bool> irreducible_over_q(const IntPoly& p) {
    int d = p.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    if (!detail::rational_roots(p).empty()) return false;
    if (d <= 3) return true;
    if (d == 4) return !detail::has_quadratic_factor(p);
    return std::nullopt;
}

// A real algebraic number: primitive integer polynomial with positive
// leading coefficient plus a rational interval isolating exactly one of
// its real roots. Degree <= 4 inputs are screened for irreducibility;
// degree >= 5 inputs must assert minimality.
class AlgebraicNumber {
public:
    AlgebraicNumber() : AlgebraicNumber(IntPoly{0, 1}, Rational(0), Rational(0)) {}

    AlgebraicNumber(IntPoly minpoly, Rational lo, Rational hi,
                    bool asserted_minimal = false)
        : asserted_minimal_(asserted_minimal) {
        if (minpoly.degree() < 1)
            throw HypothesisError("algebraic number needs a polynomial of degree >= 1");
        minpoly_ = minpoly.primitive();
        IntPoly d = minpoly_.derivative();
        auto g = RatPoly::gcd(RatPoly(minpoly_), RatPoly(d));
        if (g.degree() > 0)
            throw HypothesisError("minimal polynomial must be squarefree");
        if (!asserted_minimal_) {
            auto irr = irreducible_over_q(minpoly_);
            if (!irr.has_value())
                throw HypothesisError(
                    "degree >= 5 requires asserted_minimal = true (no exhaustive screen)");
            if (!*irr)
                throw HypothesisError("polynomial is reducible over Q: " +
                                      minpoly_.to_string());
        }
        if (minpoly_.degree() == 1) {
            // Exact rational value; normalize the interval to a point.
            Rational v(-minpoly_.coeff(0), minpoly_.coeff(1));
            if (v < lo || hi < v)
                throw HypothesisError("interval does not contain the rational root");
            lo_ = hi_ = v;
            return;
        }
        if (!(lo < hi)) throw HypothesisError("isolating interval must be nondegenerate");
        if (minpoly_.eval(lo).is_zero() || minpoly_.eval(hi).is_zero())
            throw HypothesisError("isolating interval endpoint is a root");
        if (minpoly_.eval(lo).sign() * minpoly_.eval(hi).sign() >= 0)
            throw HypothesisError("no sign change over the stated interval");
        if (descartes_count(minpoly_, lo, hi) != 1)
            throw HypothesisError("interval does not isolate a single root");
        lo_ = std::move(lo);
        hi_ = std::move(hi);
    }

    static AlgebraicNumber from_rational(const Rational& v) {
        IntPoly p(std::vector<Integer>{-v.num(), v.den()});
        return AlgebraicNumber(p.primitive(), v, v);
    }

    const IntPoly& minpoly() const { return minpoly_; }
    QInterval interval() const { return QInterval(lo_, hi_); }
    bool asserted_minimal() const { return asserted_minimal_; }

    bool is_rational() const { return minpoly_.degree() == 1; }
    Rational rational_value() const {
        if (!is_rational()) throw Error("internal: not a rational value");
        return lo_;
    }

    void refine() {
        if (is_rational()) return;
        Rational m = (lo_ + hi_) / Rational(2);
        if (minpoly_.eval(lo_).sign() * minpoly_.eval(m).sign() < 0)
            hi_ = m;
        else
            lo_ = m;
    }

    void refine_below(const Rational& width) {
        while (hi_ - lo_ > width) refine();
    }

    // Sign of f at this number: exact zero test through the gcd with the
    // minimal polynomial, then interval Horner with bisection refinement.
    int sign_of(const RatPoly& f) const {
        if (f.is_zero()) return 0;
        auto g = RatPoly::gcd(RatPoly(minpoly_), f);
        if (g.degree() > 0) return 0; // minpoly irreducible => shared root is this one
        if (is_rational()) return f.eval(lo_).sign();
        AlgebraicNumber work = *this;
        while (true) {
            QInterval enc(work.lo_, work.hi_);
            QInterval val(Rational(0));
            for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
                val = val * enc + QInterval(*it);
            auto s = val.sign();
            if (s.has_value() && *s != 0) return *s;
            work.refine();
        }
    }

    int sign() const { return sign_of(RatPoly::x()); }
    bool is_one() const { return is_rational() && lo_.is_one(); }

    bool equals(const AlgebraicNumber& o) const {
        if (minpoly_ != o.minpoly_) return false;
        if (is_rational()) return lo_ == o.lo_;
        AlgebraicNumber a = *this, b = o;
        while (true) {
            if (a.hi_ < b.lo_ || b.hi_ < a.lo_) return false;
            if ((b.lo_ <= a.lo_ && a.hi_ <= b.hi_) || (a.lo_ <= b.lo_ && b.hi_ <= a.hi_))
                return true;
            a.refine();
            b.refine();
        }
    }

    double to_double() const {
        AlgebraicNumber w = *this;
        w.refine_below(Rational(1, 1l << 40));
        return w.interval().mid().to_double();
    }

    std::string to_string() const {
        if (is_rational()) return lo_.to_string();
        return "root of " + minpoly_.to_string() + " in [" + lo_.to_string() + ", " +
               hi_.to_string() + "]";
    }

private:
    IntPoly minpoly_;
    Rational lo_, hi_;
    bool asserted_minimal_ = false;
};

inline int algnum_sign_refine(const AlgebraicNumber& x, const RatPoly& f) {
    return x.sign_of(f);
}

// Isolating intervals for all positive real roots of a squarefree p,
// by Descartes bisection on (0, bound]. Repeated roots would keep the
// variation count above 1 forever, so squarefreeness is checked up front.
inline std::vector<QInterval> isolate_positive_roots(const IntPoly& p) {
    if (p.is_zero()) throw HypothesisError("root isolation of zero polynomial");
    if (RatPoly::gcd(RatPoly(p), RatPoly(p.derivative())).degree() > 0)
        throw HypothesisError("root isolation requires a squarefree polynomial");
    // Cauchy bound on root magnitude.
    Rational bound(1);
    for (int i = 0; i < p.degree(); ++i) {
        Rational c = Rational(abs(p.coeff((size_t)i)), abs(p.lead())) + Rational(1);
        bound = std::max(bound, c);
    }
    std::vector<QInterval> out;
    std::vector<QInterval> stack{QInterval(Rational(0), bound)};
    while (!stack.empty()) {
        QInterval iv = stack.back();
        stack.pop_back();
        int v = descartes_count(p, iv.lo, iv.hi);
        if (v == 0) continue;
        if (v == 1 && !p.eval(iv.lo).is_zero() && !p.eval(iv.hi).is_zero()) {
            out.push_back(iv);
            continue;
        }
        Rational m = iv.mid();
        if (p.eval(m).is_zero()) {
            out.emplace_back(m, m);
            // Perturb the split so the exact root sits in neither half.
            Rational eps = iv.width() / Rational(1024);
            stack.emplace_back(iv.lo, m - eps);
            stack.emplace_back(m + eps, iv.hi);
        } else {
            stack.emplace_back(iv.lo, m);
            stack.emplace_back(m, iv.hi);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
    return out;
}

} // namespace diminv
