#pragma once

#include <algorithm>

#include "diminv/rational.hpp"

namespace diminv {

// Closed interval with exact rational endpoints. All operations are exact,
// so enclosure arithmetic needs no rounding.
struct QInterval {
    Rational lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rational v) : lo(v), hi(v) {}
    QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw Error("internal: interval endpoints out of order");
    }

    bool contains_zero() const { return lo <= Rational(0) && Rational(0) <= hi; }
    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }

    // Certified sign: +1/-1 when the interval is bounded away from zero,
    // 0 when it is the exact point zero, nullopt when undecided.
    std::optional<int> sign() const {
        if (lo > Rational(0)) return 1;
        if (hi < Rational(0)) return -1;
        if (lo.is_zero() && hi.is_zero()) return 0;
        return std::nullopt;
    }

    QInterval operator-() const { return QInterval(-hi, -lo); }
    QInterval operator+(const QInterval& o) const { return QInterval(lo + o.lo, hi + o.hi); }
    QInterval operator-(const QInterval& o) const { return *this + (-o); }
    QInterval operator*(const QInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return QInterval(std::min(std::min(a, b), std::min(c, d)),
                         std::max(std::max(a, b), std::max(c, d)));
    }
    QInterval operator*(const Rational& k) const {
        return k.is_negative() ? QInterval(hi * k, lo * k) : QInterval(lo * k, hi * k);
    }

    QInterval inverse() const {
        if (contains_zero()) throw RefinementNeeded("interval inverse: enclosure straddles zero");
        return QInterval(hi.inverse(), lo.inverse());
    }

    QInterval pow(long long e) const {
        if (e == 0) return QInterval(Rational(1));
        QInterval base = e < 0 ? inverse() : *this;
        unsigned long long k = (unsigned long long)(e < 0 ? -e : e);
        QInterval acc(Rational(1));
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    QInterval square() const {
        QInterval m = *this * *this;
        if (contains_zero()) m.lo = Rational(0);
        return m;
    }
};

// Enclosure of 2^(1/3) by bisection on t^3 - 2 over [1, 2], to width 2^-bits.
inline const QInterval& cbrt2_enclosure() {
    static const QInterval enc = [] {
        Rational lo(1), hi(2);
        for (int i = 0; i < 64; ++i) {
            Rational m = (lo + hi) / Rational(2);
            if (m * m * m < Rational(2))
                lo = m;
            else
                hi = m;
        }
        return QInterval(lo, hi);
    }();
    return enc;
}

inline const QInterval& cbrt4_enclosure() {
    static const QInterval enc = cbrt2_enclosure().square();
    return enc;
}

// Enclosure of a radical power cbrt(2)^r for r in {0, 1, 2}.
inline QInterval radical_enclosure(int r) {
    switch (r) {
        case 0: return QInterval(Rational(1));
        case 1: return cbrt2_enclosure();
        case 2: return cbrt4_enclosure();
        default: throw Error("internal: radical exponent out of range");
    }
}

} // namespace diminv
