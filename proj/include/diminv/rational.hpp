#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "diminv/errors.hpp"

namespace diminv {

using Integer = mpz_class;

inline Integer int_from_string(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::invalid_argument&) {
        throw SchemaError("not a decimal integer: \"" + s + "\"");
    }
}

// Exact rational number. Always canonical: gcd(num, den) = 1, den >= 1,
// zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_((long)n) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den) : v_(num, den) {
        if (den == 0) throw HypothesisError("division by zero");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    // Parses "a" or "a/b" with arbitrary-precision decimal parts.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(int_from_string(s));
        return Rational(int_from_string(s.substr(0, slash)),
                        int_from_string(s.substr(slash + 1)));
    }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_positive() const { return v_ > 0; }
    bool is_negative() const { return v_ < 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw HypothesisError("division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    Rational inverse() const {
        if (is_zero()) throw HypothesisError("inversion of zero");
        return Rational(den(), num());
    }

    Rational pow(long long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw HypothesisError("inversion of zero");
            return Rational(0);
        }
        Integer n, d;
        unsigned long ae = (unsigned long)(e < 0 ? -e : e);
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), ae);
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), ae);
        return e > 0 ? Rational(n, d) : Rational(d, n);
    }

    Rational abs() const { return is_negative() ? -*this : *this; }

    double to_double() const { return v_.get_d(); }

    std::string to_string() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rational rational_arith(const Rational& x, const Rational& y, char op) {
    switch (op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/': return x / y;
        default: throw SchemaError(std::string("unknown operator '") + op + "'");
    }
}

// Exact conversion of a finite double (doubles are dyadic rationals).
inline Rational rational_from_double(double x) {
    mpq_class q(x);
    return Rational(q.get_num(), q.get_den());
}

inline Integer int_pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace diminv
