#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "diminv/rational.hpp"

namespace diminv {

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline bool is_probable_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
    // Brent's cycle-finding variant of Pollard's rho. n must be odd,
    // composite, and not a prime power handled elsewhere.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xd1a5u);
    while (true) {
        Integer y = rng.get_z_range(n - 3) + 2;
        Integer c = rng.get_z_range(n - 2) + 1;
        Integer x = y, q = 1, g = 1, ys = y;
        unsigned long r = 1;
        const unsigned long step = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(step, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * ((x - y) % n + n) % n;
                }
                g = int_gcd(q, n);
                k += step;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = int_gcd(((x - ys) % n + n) % n, n);
            }
        }
        if (g != n) return g;
    }
}

inline void factor_rec(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace detail

// Prime factorization of |n|, n != 0, |n| > 1. Trial division by small
// primes first, then Pollard-Brent rho on the remaining cofactor. Each
// reported factor is checked prime and the product is checked equal to |n|.
inline std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n_in) {
    Integer n = abs(n_in);
    if (n <= 1) throw HypothesisError("factorize requires |n| > 1");
    std::map<Integer, unsigned> m;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
            m[Integer(p)] += 1;
            n /= p;
        }
    }
    for (long p = 17; p <= 65536 && n > 1; p += 2) {
        if (!is_probable_prime(n) || n < Integer(p) * p) {
            while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
                m[Integer(p)] += 1;
                n /= p;
            }
        } else {
            break;
        }
        if (Integer(p) * p > n) break;
    }
    if (n > 1) detail::factor_rec(n, m);

    Integer check = 1;
    for (const auto& [p, e] : m) {
        if (!is_probable_prime(p)) throw Error("internal: non-prime factor");
        check *= int_pow(p, e);
    }
    if (check != abs(n_in)) throw Error("internal: factorization mismatch");
    return {m.begin(), m.end()};
}

// p-adic valuation of n != 0.
inline unsigned long valuation(Integer n, const Integer& p) {
    if (n == 0) throw HypothesisError("valuation of zero");
    unsigned long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

// Least k >= 1 with q^k = 1 (mod modulus), modulus >= 2, gcd(q, modulus) = 1.
inline unsigned long multiplicative_order(const Integer& q, const Integer& modulus,
                                          unsigned long cap = (1ul << 24)) {
    if (modulus < 2) throw HypothesisError("order needs modulus >= 2");
    Integer base = ((q % modulus) + modulus) % modulus;
    if (int_gcd(base, modulus) != 1)
        throw HypothesisError("order undefined: arguments not coprime");
    Integer acc = base;
    for (unsigned long k = 1; k <= cap; ++k) {
        if (acc == 1) return k;
        acc = acc * base % modulus;
    }
    throw SearchExhausted("multiplicative order exceeds iteration cap " +
                          std::to_string(cap));
}

} // namespace diminv
