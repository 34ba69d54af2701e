#pragma once

#include <algorithm>

#include "diminv/presentation.hpp"

namespace diminv {

namespace detail {

// Widths used when refining algebraic-symbol enclosures for a sign decision.
inline const std::vector<Rational>& refinement_widths() {
    static const std::vector<Rational> w = {
        Rational(1, 1l << 10), Rational(1, 1l << 20), Rational(1, 1l << 30),
        Rational(1, 1l << 40), Rational(1, 1ll << 60)};
    return w;
}

} // namespace detail

// Certified sign of one coordinate of a coefficient vector: exact for purely
// rational expressions, otherwise decided from symbol enclosures, refining
// algebraic symbols as needed. Throws RefinementNeeded when the enclosure
// straddles zero and nothing further can be refined.
inline int certified_coord_sign(const Presentation& p, const VecExpr& v, int coord) {
    if (auto r = v.rational_coord(coord)) return r->sign();
    bool refinable = false;
    for (const auto& s : p.symbols()) refinable = refinable || s.refinable();
    for (const auto& w : detail::refinement_widths()) {
        auto enc = p.enclosures(w);
        if (!enc.has_value())
            throw RefinementNeeded("a symbol lacks a numeric enclosure");
        auto sign = coord_enclosure(v, coord, *enc).sign();
        if (sign.has_value()) return *sign;
        if (!refinable) break;
    }
    throw RefinementNeeded("coordinate sign undecided at available enclosure precision");
}

// Strict positive-cone test: both coordinates certified positive, or the
// exact zero vector.
inline bool certified_in_positive_cone(const Presentation& p, const VecExpr& v) {
    if (v.is_zero()) return true;
    return certified_coord_sign(p, v, 0) > 0 && certified_coord_sign(p, v, 1) > 0;
}

// Order g <= h in (G, G+): equality or strict positivity of h - g.
inline bool certified_leq(const Presentation& p, const GroupElement& g, const GroupElement& h) {
    return certified_in_positive_cone(p, p.expand(h) - p.expand(g));
}

struct DensityWitness {
    std::vector<GroupElement> vectors;  // dim of them, R-linearly independent
    std::vector<Rational> norm_bounds;  // certified upper bounds on each norm
    Rational det_lower_bound;           // certified |det| lower bound (0 if symbolic proof)
    bool det_symbolic = false;          // independence certified symbolically
};

namespace detail {

// Symbolic 2x2 determinant of two coefficient vectors: exact nonvanishing
// under monomial independence means a nonzero canonical form.
inline VecExpr cross_det(const VecExpr& a, const VecExpr& b) {
    VecExpr det; // stored in coordinate 0 of a scratch vector
    for (const auto& [m1, c1] : a.coords[0])
        for (const auto& [m2, c2] : b.coords[1]) {
            auto [carry, m] = mono_mul(m1, m2);
            det.add(0, m, c1 * c2 * carry);
        }
    for (const auto& [m1, c1] : a.coords[1])
        for (const auto& [m2, c2] : b.coords[0]) {
            auto [carry, m] = mono_mul(m1, m2);
            det.add(0, m, -(c1 * c2 * carry));
        }
    return det;
}

inline std::optional<Rational> certified_norm_sq_upper(const Presentation& p, const VecExpr& v,
                                                       const Rational& width) {
    auto enc = p.enclosures(width);
    if (!enc.has_value()) return std::nullopt;
    QInterval n2 = coord_enclosure(v, 0, *enc).square() + coord_enclosure(v, 1, *enc).square();
    return n2.hi;
}

} // namespace detail

// Produces dim = 2 members with certified Euclidean norm < eps that are
// R-linearly independent (symbolic determinant, with an interval fallback).
// Deterministic bounded search over single slots scaled by dyadic rationals
// and integer pairs of fixed slots.
inline DensityWitness density_witness(const Presentation& p, const Rational& eps,
                                      int degree_bound = 13, int dyadic_bound = 16) {
    if (!eps.is_positive()) throw HypothesisError("density_witness: eps must be positive");
    if (!p.enclosures(Rational(1, 1l << 20)).has_value())
        throw HypothesisError("density_witness: every symbol needs a numeric enclosure");

    Rational eps_sq = eps * eps;
    const Rational width(1, 1ll << 40);

    std::vector<GroupElement> candidates;
    std::vector<Rational> bounds;

    auto try_candidate = [&](const GroupElement& g) {
        if (g.is_zero()) return;
        auto n2 = detail::certified_norm_sq_upper(p, p.expand(g), width);
        if (n2.has_value() && *n2 < eps_sq) {
            candidates.push_back(g);
            bounds.push_back(*n2);
        }
    };

    // Single scaled slots, deterministic order: families in table order,
    // degrees by |u| then sign, dyadic scalings 1/2^k for Q-slots.
    for (int ci = 0; ci < (int)p.classes().size(); ++ci) {
        const auto& cls = p.classes()[(size_t)ci];
        if (cls.ring == Ring::Zero) continue;
        std::vector<long long> us;
        if (cls.fixed) {
            us.push_back(0);
        } else {
            for (long long a = 0; a <= degree_bound; ++a) {
                us.push_back(a);
                if (a != 0) us.push_back(-a);
            }
        }
        for (long long u : us) {
            GroupElement base;
            base.add(SlotKey{ci, u}, Rational(1));
            if (cls.ring == Ring::Q) {
                auto n2 = detail::certified_norm_sq_upper(p, p.expand(base), width);
                if (!n2.has_value()) continue;
                // Smallest dyadic scaling that certifies; larger k only shrinks.
                for (int k = 0; k <= dyadic_bound; ++k) {
                    Rational s(Integer(1), int_pow(2, (unsigned long)k));
                    if (*n2 * s * s < eps_sq) {
                        try_candidate(base * s);
                        break;
                    }
                }
            } else {
                try_candidate(base);
            }
        }
    }

    // Integer combinations of two fixed coordinate-2 slots (continued-fraction
    // style sweep), for presentations whose small vectors need cancellation.
    std::vector<int> fixed_idx;
    for (int ci = 0; ci < (int)p.classes().size(); ++ci)
        if (p.classes()[(size_t)ci].fixed && p.classes()[(size_t)ci].ring == Ring::Z)
            fixed_idx.push_back(ci);
    for (size_t a = 0; a < fixed_idx.size(); ++a)
        for (size_t b = a + 1; b < fixed_idx.size(); ++b) {
            GroupElement ga, gb;
            ga.add(SlotKey{fixed_idx[a], 0}, Rational(1));
            gb.add(SlotKey{fixed_idx[b], 0}, Rational(1));
            auto enc = p.enclosures(width);
            if (!enc.has_value()) break;
            // Minimize |m1*va + m2*vb| over denominators up to 2^16 using the
            // convergents of vb/va taken at enclosure midpoints.
            QInterval va = coord_enclosure(p.expand(ga), 1, *enc);
            QInterval vb = coord_enclosure(p.expand(gb), 1, *enc);
            if (va.contains_zero()) continue;
            Rational x = vb.mid() / va.mid();
            Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
            Rational rest = x;
            for (int it = 0; it < 40; ++it) {
                Integer ai = rest.num() / rest.den(); // floor for positive; adjust below
                if (rest < Rational(0) && Rational(ai) != rest)
                    ai -= 1;
                Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
                if (q2 > Integer(1) << 16) break;
                p0 = p1; q0 = q1; p1 = p2; q1 = q2;
                // Candidate: q1 * vb - p1 * va, integer coefficients.
                try_candidate(gb * Rational(q1) - ga * Rational(p1));
                Rational frac = rest - Rational(ai);
                if (frac.is_zero()) break;
                rest = frac.inverse();
            }
        }

    // Pick the first independent pair in deterministic order. With formal
    // symbols, a nonzero canonical determinant certifies independence; with
    // algebraic symbols the monomials can satisfy relations, so a certified
    // interval bound away from zero is required instead.
    bool all_formal = true;
    for (const auto& s : p.symbols()) all_formal = all_formal && !s.refinable();
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            VecExpr det = detail::cross_det(p.expand(candidates[i]), p.expand(candidates[j]));
            if (det.coords[0].empty()) continue; // symbolically dependent
            DensityWitness w;
            w.det_symbolic = all_formal;
            auto enc = p.enclosures(width);
            if (enc.has_value()) {
                QInterval dv = coord_enclosure(det, 0, *enc);
                auto s = dv.sign();
                if (s.has_value() && *s != 0) w.det_lower_bound = *s > 0 ? dv.lo : -dv.hi;
            }
            if (!w.det_symbolic && !w.det_lower_bound.is_positive())
                continue; // no usable certificate for this pair
            w.vectors = {candidates[i], candidates[j]};
            w.norm_bounds = {bounds[i], bounds[j]};
            return w;
        }

    throw SearchExhausted("density_witness: no independent pair below eps within degree " +
                          std::to_string(degree_bound) + " and denominator 2^" +
                          std::to_string(dyadic_bound));
}

// Riesz interpolation: a member z with g1, g2 <= z <= h1, h2, located through
// the numeric enclosures and certified exactly.
inline GroupElement riesz_interpolate(const Presentation& p, const GroupElement& g1,
                                      const GroupElement& g2, const GroupElement& h1,
                                      const GroupElement& h2) {
    std::array<const GroupElement*, 2> lows{&g1, &g2}, highs{&h1, &h2};

    // Degenerate faces first: an element equal on both sides interpolates.
    for (const auto* g : lows)
        for (const auto* h : highs)
            if (*g == *h) {
                for (const auto* g2p : lows)
                    if (!certified_leq(p, *g2p, *g))
                        throw SearchExhausted("riesz: box is empty (lower bound exceeds it)");
                for (const auto* h2p : highs)
                    if (!certified_leq(p, *g, *h2p))
                        throw SearchExhausted("riesz: box is empty (upper bound below it)");
                return *g;
            }

    for (const auto* g : lows)
        for (const auto* h : highs)
            if (!certified_leq(p, *g, *h))
                throw SearchExhausted("riesz: box is empty (bounds are not ordered)");

    const Rational width(1, 1ll << 40);
    auto enc = p.enclosures(width);
    if (!enc.has_value())
        throw RefinementNeeded("riesz: every symbol needs a numeric enclosure");

    // Numeric open box per coordinate.
    std::array<Rational, 2> lo, hi;
    for (int k : {0, 1}) {
        QInterval l1 = coord_enclosure(p.expand(g1), k, *enc);
        QInterval l2 = coord_enclosure(p.expand(g2), k, *enc);
        QInterval u1 = coord_enclosure(p.expand(h1), k, *enc);
        QInterval u2 = coord_enclosure(p.expand(h2), k, *enc);
        lo[(size_t)k] = std::max(l1.hi, l2.hi);
        hi[(size_t)k] = std::min(u1.lo, u2.lo);
        if (!(lo[(size_t)k] < hi[(size_t)k]))
            throw SearchExhausted("riesz: numeric box has empty interior");
    }

    auto certify = [&](const GroupElement& z) -> bool {
        for (const auto* g : lows)
            if (!certified_leq(p, *g, z)) return false;
        for (const auto* h : highs)
            if (!certified_leq(p, z, *h)) return false;
        return true;
    };

    auto dyadic_near = [](const Rational& lo_v, const Rational& hi_v) {
        // Dyadic rational close to the box center with denominator <= 2^16.
        Rational mid = (lo_v + hi_v) / Rational(2);
        for (int k = 0; k <= 16; ++k) {
            Integer den = int_pow(2, (unsigned long)k);
            Integer num = (mid * Rational(den)).num() / (mid * Rational(den)).den();
            Rational cand(num, den);
            if (lo_v < cand && cand < hi_v) return cand;
        }
        return mid;
    };

    // Strategy 1: rational multiple of the order unit.
    {
        Rational l = std::max(lo[0], lo[1]), u = std::min(hi[0], hi[1]);
        if (l < u) {
            GroupElement z = p.unit() * dyadic_near(l, u);
            if (certify(z)) return z;
        }
    }

    // Strategy 2: unit plus one rational-ring slot, solving the 2x2 system
    // numerically and rounding to dyadics.
    for (int ci = 0; ci < (int)p.classes().size(); ++ci) {
        const auto& cls = p.classes()[(size_t)ci];
        if (cls.ring != Ring::Q || cls.coords[0].zero || cls.coords[1].zero) continue;
        for (long long u : {1ll, -1ll, 2ll, -2ll}) {
            GroupElement slot;
            slot.add(SlotKey{ci, u}, Rational(1));
            QInterval s1 = coord_enclosure(p.expand(slot), 0, *enc);
            QInterval s2 = coord_enclosure(p.expand(slot), 1, *enc);
            // Solve c0 + c1 s = center coordinatewise.
            Rational t1 = (lo[0] + hi[0]) / Rational(2), t2 = (lo[1] + hi[1]) / Rational(2);
            Rational d = s1.mid() - s2.mid();
            if (d.is_zero()) continue;
            Rational c1 = (t1 - t2) / d;
            Rational c0 = t1 - c1 * s1.mid();
            // Round to dyadics of moderate size.
            auto round16 = [](const Rational& v) {
                Integer den = int_pow(2, 16);
                Integer num = (v * Rational(den)).num() / (v * Rational(den)).den();
                return Rational(num, den);
            };
            GroupElement z = p.unit() * round16(c0) + slot * round16(c1);
            if (certify(z)) return z;
        }
    }

    // Strategy 3: componentwise assembly for presentations with
    // coordinate-separated slots (integer rings): greedy digit expansion on
    // coordinate 1, continued-fraction pair on coordinate 2.
    {
        std::optional<int> c1_only, one_slot, beta_slot;
        for (int ci = 0; ci < (int)p.classes().size(); ++ci) {
            const auto& cls = p.classes()[(size_t)ci];
            if (!cls.coords[0].zero && cls.coords[1].zero && !cls.fixed &&
                cls.addr_radical == 0)
                c1_only = ci;
            if (cls.coords[0].zero && !cls.coords[1].zero && cls.fixed) {
                if (!one_slot.has_value())
                    one_slot = ci;
                else if (!beta_slot.has_value())
                    beta_slot = ci;
            }
        }
        if (c1_only.has_value() && one_slot.has_value() && beta_slot.has_value()) {
            // Coordinate 1: m * base^{-k} near the center.
            GroupElement gen;
            gen.add(SlotKey{*c1_only, -3}, Rational(1));
            QInterval gv = coord_enclosure(p.expand(gen), 0, *enc);
            Rational t1 = (lo[0] + hi[0]) / Rational(2);
            Rational scale = t1 / gv.mid();
            Integer mcoef = scale.num() / scale.den();
            GroupElement z1 = gen * Rational(mcoef);
            // Coordinate 2: l1 + l2*beta near the center via convergents.
            GroupElement gone, gbeta;
            gone.add(SlotKey{*one_slot, 0}, Rational(1));
            gbeta.add(SlotKey{*beta_slot, 0}, Rational(1));
            QInterval bv = coord_enclosure(p.expand(gbeta), 1, *enc);
            Rational t2 = (lo[1] + hi[1]) / Rational(2);
            Rational best_err(-1);
            GroupElement best;
            for (Integer l2(-64); l2 <= 64; l2 += 1) {
                Rational rem = t2 - bv.mid() * Rational(l2);
                Integer l1 = rem.num() / rem.den();
                for (Integer dl(-1); dl <= 1; dl += 1) {
                    GroupElement z2 = gone * Rational(Integer(l1 + dl)) + gbeta * Rational(l2);
                    QInterval val = coord_enclosure(p.expand(z2), 1, *enc);
                    Rational err = (val.mid() - t2).abs();
                    if (best_err.is_negative() || err < best_err) {
                        best_err = err;
                        best = z2;
                    }
                }
            }
            GroupElement z = z1 + best;
            if (certify(z)) return z;
        }
    }

    throw SearchExhausted("riesz: no certified interpolant in the deterministic family");
}

} // namespace diminv
