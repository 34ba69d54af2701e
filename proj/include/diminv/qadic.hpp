#pragma once

#include "diminv/integers.hpp"

namespace diminv {

// Witness amp * m = r * q^N with gcd(r, q) = 1, amp >= 1, N >= 0.
struct QAdicResult {
    Integer amp;
    Integer r;
    long long n = 0;

    bool holds(const Integer& m, const Integer& q) const {
        Integer qn = int_pow(q, (unsigned long)n);
        return amp >= 1 && amp * m == r * qn && int_gcd(r, q) == 1;
    }
};

// Clears m against the prime support of q: with q = prod p_i^{e_i},
// N = max_i ceil(f_i / e_i) over the valuations f_i of m, and
// amp = prod p_i^{N e_i - f_i}.
inline QAdicResult q_adic_certificate(const Integer& m, const Integer& q) {
    if (m == 0) throw HypothesisError("q_adic: m must be nonzero");
    Integer aq = abs(q);
    if (aq < 2) throw HypothesisError("q_adic: |q| must be at least 2");
    Integer cap = int_pow(2, 63);
    if (aq > cap) throw HypothesisError("q_adic: |q| exceeds the 2^63 factorization cap");

    auto primes = factorize(aq);
    long long n = 0;
    for (const auto& [p, e] : primes) {
        long long f = (long long)valuation(m, p);
        long long need = (f + (long long)e - 1) / (long long)e; // ceil(f/e)
        n = std::max(n, need);
    }
    Integer amp = 1;
    for (const auto& [p, e] : primes) {
        long long f = (long long)valuation(m, p);
        amp *= int_pow(p, (unsigned long)(n * (long long)e - f));
    }
    Integer qn = int_pow(q, (unsigned long)n);
    Integer r = amp * m / qn;
    QAdicResult out{std::move(amp), std::move(r), n};
    if (!out.holds(m, q)) throw Error("internal: q_adic witness failed its check");
    return out;
}

// Solution of s*r + q^N = 1 with N >= min_n. N is the least multiple of the
// multiplicative order of q mod |r| that is >= min_n (for |r| = 1, any N works
// and min_n is taken).
struct UnitPowerResult {
    Integer s;
    long long n = 0;

    bool holds(const Integer& r, const Integer& q) const {
        return s * r + int_pow(q, (unsigned long)n) == 1;
    }
};

inline UnitPowerResult solve_unit_power(const Integer& r, const Integer& q,
                                        long long min_n) {
    if (r == 0) throw HypothesisError("solve_unit_power: r must be nonzero");
    if (min_n < 0) throw HypothesisError("solve_unit_power: min_n must be nonnegative");
    if (int_gcd(r, q) != 1)
        throw HypothesisError("solve_unit_power: r and q are not coprime");

    long long n;
    Integer ar = abs(r);
    if (ar == 1) {
        n = min_n;
    } else {
        unsigned long ord = multiplicative_order(q, ar);
        long long k = (min_n + (long long)ord - 1) / (long long)ord; // ceil
        n = k * (long long)ord;
    }
    Integer qn = int_pow(q, (unsigned long)n);
    Integer num = 1 - qn;
    if (num % r != 0) throw Error("internal: unit power residue mismatch");
    UnitPowerResult out{num / r, n};
    if (!out.holds(r, q) || out.n < min_n)
        throw Error("internal: unit power identity failed its check");
    return out;
}

} // namespace diminv
