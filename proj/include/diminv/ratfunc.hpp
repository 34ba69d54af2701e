#pragma once

#include "diminv/poly.hpp"

namespace diminv {

// Rational function in one variable over Q, stored reduced with monic
// denominator. Zero is 0/1.
class RatFunction {
public:
    RatFunction() : num_(), den_(RatPoly::constant(Rational(1))) {}
    RatFunction(const Rational& c)
        : num_(RatPoly::constant(c)), den_(RatPoly::constant(Rational(1))) {}
    RatFunction(RatPoly num, RatPoly den) { assign(std::move(num), std::move(den)); }
    explicit RatFunction(RatPoly num)
        : num_(std::move(num)), den_(RatPoly::constant(Rational(1))) {}

    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    bool operator==(const RatFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunction& o) const { return !(*this == o); }

    RatFunction operator-() const { return RatFunction::reduced(-num_, den_); }
    RatFunction operator+(const RatFunction& o) const {
        return RatFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunction operator-(const RatFunction& o) const { return *this + (-o); }
    RatFunction operator*(const RatFunction& o) const {
        return RatFunction(num_ * o.num_, den_ * o.den_);
    }
    RatFunction operator/(const RatFunction& o) const {
        if (o.is_zero()) throw HypothesisError("division by zero rational function");
        return RatFunction(num_ * o.den_, den_ * o.num_);
    }

    std::string to_string(const std::string& var = "t") const {
        if (den_ == RatPoly::constant(Rational(1))) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    static RatFunction reduced(RatPoly n, RatPoly d) {
        RatFunction f;
        f.num_ = std::move(n);
        f.den_ = std::move(d);
        return f;
    }
    void assign(RatPoly n, RatPoly d) {
        if (d.is_zero()) throw HypothesisError("zero denominator");
        if (n.is_zero()) {
            num_ = RatPoly();
            den_ = RatPoly::constant(Rational(1));
            return;
        }
        RatPoly g = RatPoly::gcd(n, d);
        n = n.divmod(g).first;
        d = d.divmod(g).first;
        Rational s = d.lead().inverse();
        num_ = n * s;
        den_ = d * s;
    }
    RatPoly num_, den_;
};

} // namespace diminv
