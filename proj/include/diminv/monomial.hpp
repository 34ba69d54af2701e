#pragma once

#include <array>
#include <map>
#include <vector>

#include "diminv/interval.hpp"
#include "diminv/rational.hpp"

namespace diminv {

// Monomial in the symbols of a presentation: cbrt(2)^radical * prod sym_i^exp_i.
// The exponent vector is sized by the owning presentation's symbol table.
struct Mono {
    int radical = 0; // 0, 1, 2
    std::vector<int> exps;

    explicit Mono(size_t nsyms = 0) : exps(nsyms, 0) {}
    Mono(int rad, std::vector<int> e) : radical(rad), exps(std::move(e)) {}

    bool is_trivial() const {
        if (radical != 0) return false;
        for (int e : exps)
            if (e != 0) return false;
        return true;
    }

    auto operator<=>(const Mono&) const = default;

    std::string to_string(const std::vector<std::string>& names) const {
        std::string out;
        if (radical == 1) out += "cbrt2";
        if (radical == 2) out += "cbrt4";
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += names[i];
            if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
        }
        return out.empty() ? "1" : out;
    }
};

// Product of two monomials; reducing cbrt2^3 -> 2 yields a rational carry.
struct ScaledMono {
    Rational coeff;
    Mono mono;
};

inline ScaledMono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a.exps.size());
    if (a.exps.size() != b.exps.size()) throw Error("internal: monomial arity mismatch");
    for (size_t i = 0; i < a.exps.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
    int rad = a.radical + b.radical;
    Rational carry(1);
    if (rad >= 3) {
        rad -= 3;
        carry = Rational(2);
    }
    r.radical = rad;
    return {carry, std::move(r)};
}

inline ScaledMono mono_pow(const Mono& a, long long k) {
    Mono r(a.exps.size());
    for (size_t i = 0; i < a.exps.size(); ++i) {
        long long e = (long long)a.exps[i] * k;
        if (e > 1000000 || e < -1000000) throw SearchExhausted("monomial exponent overflow");
        r.exps[i] = (int)e;
    }
    long long rad = (long long)a.radical * k;
    long long red = ((rad % 3) + 3) % 3;
    long long carry_pow = (rad - red) / 3; // cbrt2^rad = 2^carry * cbrt2^red
    r.radical = (int)red;
    return {Rational(2).pow(carry_pow), std::move(r)};
}

// A vector of R^2 written as a finite rational combination of monomials
// per coordinate. This is the off-basis "coefficient map" produced by
// matrix actions; membership re-expresses it over a presentation's slots.
struct VecExpr {
    std::array<std::map<Mono, Rational>, 2> coords;

    void add(int coord, const Mono& m, const Rational& c) {
        if (c.is_zero()) return;
        auto& slot = coords[(size_t)coord];
        auto it = slot.find(m);
        if (it == slot.end()) {
            slot.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) slot.erase(it);
        }
    }

    VecExpr operator+(const VecExpr& o) const {
        VecExpr r = *this;
        for (int k : {0, 1})
            for (const auto& [m, c] : o.coords[(size_t)k]) r.add(k, m, c);
        return r;
    }
    VecExpr operator-() const {
        VecExpr r;
        for (int k : {0, 1})
            for (const auto& [m, c] : coords[(size_t)k]) r.coords[(size_t)k].emplace(m, -c);
        return r;
    }
    VecExpr operator-(const VecExpr& o) const { return *this + (-o); }
    VecExpr operator*(const Rational& s) const {
        VecExpr r;
        if (s.is_zero()) return r;
        for (int k : {0, 1})
            for (const auto& [m, c] : coords[(size_t)k]) r.coords[(size_t)k].emplace(m, c * s);
        return r;
    }

    bool operator==(const VecExpr& o) const { return coords == o.coords; }
    bool is_zero() const { return coords[0].empty() && coords[1].empty(); }

    // Purely rational coordinate (no symbols, no radical), if so.
    std::optional<Rational> rational_coord(int k) const {
        const auto& m = coords[(size_t)k];
        if (m.empty()) return Rational(0);
        if (m.size() == 1 && m.begin()->first.is_trivial()) return m.begin()->second;
        return std::nullopt;
    }

    std::string coord_string(int k, const std::vector<std::string>& names) const {
        const auto& mp = coords[(size_t)k];
        if (mp.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : mp) {
            std::string cs = c.to_string();
            std::string sign = first ? (cs[0] == '-' ? "-" : "")
                                     : (cs[0] == '-' ? " - " : " + ");
            std::string mag = cs[0] == '-' ? cs.substr(1) : cs;
            std::string ms = m.to_string(names);
            std::string body = ms == "1" ? mag : (mag == "1" ? ms : mag + "*" + ms);
            out += sign + body;
            first = false;
        }
        return out;
    }
};

// Enclosure of a monomial value given enclosures for the symbols.
inline QInterval mono_enclosure(const Mono& m, const std::vector<QInterval>& syms) {
    QInterval acc = radical_enclosure(m.radical);
    for (size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        acc = acc * syms[i].pow(m.exps[i]);
    }
    return acc;
}

inline QInterval coord_enclosure(const VecExpr& v, int k, const std::vector<QInterval>& syms) {
    QInterval acc(Rational(0));
    for (const auto& [m, c] : v.coords[(size_t)k]) acc = acc + mono_enclosure(m, syms) * c;
    return acc;
}

} // namespace diminv
