#pragma once

#include <array>

#include "diminv/ratfunc.hpp"

namespace diminv {

// Element c0 + c1 * cbrt(2) + c2 * cbrt(4) of the cubic radical extension
// of the rational-function field Q(t). The norm form vanishes only at zero,
// which makes the extension a field and gives an explicit inverse.
class CubicExt {
public:
    CubicExt() = default;
    CubicExt(RatFunction c0, RatFunction c1, RatFunction c2)
        : c_{std::move(c0), std::move(c1), std::move(c2)} {}
    static CubicExt from_rational(const Rational& r) { return CubicExt(RatFunction(r), {}, {}); }
    static CubicExt cbrt2() { return CubicExt({}, RatFunction(Rational(1)), {}); }
    static CubicExt cbrt4() { return CubicExt({}, {}, RatFunction(Rational(1))); }

    const RatFunction& c0() const { return c_[0]; }
    const RatFunction& c1() const { return c_[1]; }
    const RatFunction& c2() const { return c_[2]; }

    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }

    bool operator==(const CubicExt& o) const { return c_ == o.c_; }
    bool operator!=(const CubicExt& o) const { return !(*this == o); }

    CubicExt operator-() const { return CubicExt(-c_[0], -c_[1], -c_[2]); }
    CubicExt operator+(const CubicExt& o) const {
        return CubicExt(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]);
    }
    CubicExt operator-(const CubicExt& o) const { return *this + (-o); }
    CubicExt operator*(const CubicExt& o) const {
        const RatFunction two{Rational(2)};
        // (a0 + a1 u + a2 u^2)(b0 + b1 u + b2 u^2) with u^3 = 2.
        RatFunction r0 = c_[0] * o.c_[0] + two * (c_[1] * o.c_[2] + c_[2] * o.c_[1]);
        RatFunction r1 = c_[0] * o.c_[1] + c_[1] * o.c_[0] + two * (c_[2] * o.c_[2]);
        RatFunction r2 = c_[0] * o.c_[2] + c_[1] * o.c_[1] + c_[2] * o.c_[0];
        return CubicExt(std::move(r0), std::move(r1), std::move(r2));
    }

    std::string to_string(const std::string& var = "t") const {
        return "(" + c_[0].to_string(var) + ") + (" + c_[1].to_string(var) + ")*cbrt2 + (" +
               c_[2].to_string(var) + ")*cbrt4";
    }

private:
    std::array<RatFunction, 3> c_;
};

// Field norm c0^3 + 2 c1^3 + 4 c2^3 - 6 c0 c1 c2; zero iff the element is zero.
inline RatFunction cubic_norm(const CubicExt& x) {
    const RatFunction two{Rational(2)}, four{Rational(4)}, six{Rational(6)};
    const RatFunction &a = x.c0(), &b = x.c1(), &c = x.c2();
    return a * a * a + two * (b * b * b) + four * (c * c * c) - six * (a * b * c);
}

// Inverse through the conjugate cofactor
// (c0^2 - 2 c1 c2) + (2 c2^2 - c0 c1) cbrt2 + (c1^2 - c0 c2) cbrt4, over the norm.
inline CubicExt cubic_invert(const CubicExt& x) {
    if (x.is_zero()) throw HypothesisError("inversion of zero");
    RatFunction n = cubic_norm(x);
    if (n.is_zero()) throw Error("internal: nonzero element with zero norm");
    const RatFunction two{Rational(2)};
    const RatFunction &a = x.c0(), &b = x.c1(), &c = x.c2();
    CubicExt cof(a * a - two * b * c, two * (c * c) - a * b, b * b - a * c);
    CubicExt inv(cof.c0() / n, cof.c1() / n, cof.c2() / n);
    if (!(inv * x == CubicExt::from_rational(Rational(1))))
        throw Error("internal: cubic inverse failed its check");
    return inv;
}

} // namespace diminv
