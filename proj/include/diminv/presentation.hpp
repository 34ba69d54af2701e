#pragma once

#include <optional>
#include <numeric>
#include <string>
#include <vector>

#include "diminv/monomial.hpp"
#include "diminv/symbolic.hpp"

namespace diminv {

enum class Ring { Z, Q, Zero };

inline std::string ring_name(Ring r) {
    switch (r) {
        case Ring::Z: return "Z";
        case Ring::Q: return "Q";
        default: return "zero";
    }
}

inline bool ring_admits(Ring r, const Rational& c) {
    switch (r) {
        case Ring::Q: return true;
        case Ring::Z: return c.is_integer();
        default: return c.is_zero();
    }
}

// Exponent affine in the slot-class parameter u: slope*u + offset.
struct AffExp {
    int slope = 0;
    int offset = 0;
    bool operator==(const AffExp&) const = default;
};

// One coordinate of a slot family: zero, or a monomial whose exponents are
// affine in the class parameter.
struct CoordTemplate {
    bool zero = true;
    int radical = 0;
    std::vector<AffExp> exps;

    static CoordTemplate make_zero() { return CoordTemplate{}; }
    static CoordTemplate mono(size_t nsyms, int radical = 0) {
        CoordTemplate t;
        t.zero = false;
        t.radical = radical;
        t.exps.assign(nsyms, AffExp{});
        return t;
    }
    bool depends_on_u() const {
        for (const auto& e : exps)
            if (e.slope != 0) return true;
        return false;
    }
    Mono at(long long u) const {
        Mono m((size_t)exps.size());
        m.radical = radical;
        for (size_t i = 0; i < exps.size(); ++i) {
            long long e = (long long)exps[i].slope * u + exps[i].offset;
            if (e > 1000000 || e < -1000000) throw SearchExhausted("degree overflow");
            m.exps[i] = (int)e;
        }
        return m;
    }
};

// A parameterized family of basis slots, one slot per u in Z (or a single
// slot for fixed families). The presentation "degree" of slot u is
// deg_slope*u + deg_offset; elements address slots by
// (channel, addr_radical, degree).
struct SlotClass {
    std::string id;
    Ring ring = Ring::Q;
    std::string channel = "main";
    int addr_radical = 0;
    bool fixed = false;
    int deg_slope = 2;
    int deg_offset = 0;
    std::array<CoordTemplate, 2> coords;

    long long degree_of(long long u) const { return (long long)deg_slope * u + deg_offset; }
    std::optional<long long> u_of_degree(long long degree) const {
        if (fixed) return degree == deg_offset ? std::optional<long long>(0) : std::nullopt;
        long long diff = degree - deg_offset;
        if (diff % deg_slope != 0) return std::nullopt;
        return diff / deg_slope;
    }
};

// Address of a concrete basis slot.
struct SlotKey {
    int class_idx = 0;
    long long u = 0;
    auto operator<=>(const SlotKey&) const = default;
};

// A member of the group, stored as its (finite) slot decomposition.
struct GroupElement {
    std::map<SlotKey, Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(const SlotKey& k, const Rational& c) {
        if (c.is_zero()) return;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) {
            coeffs.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    GroupElement operator+(const GroupElement& o) const {
        GroupElement r = *this;
        for (const auto& [k, c] : o.coeffs) r.add(k, c);
        return r;
    }
    GroupElement operator-() const {
        GroupElement r;
        for (const auto& [k, c] : coeffs) r.coeffs.emplace(k, -c);
        return r;
    }
    GroupElement operator-(const GroupElement& o) const { return *this + (-o); }
    GroupElement operator*(const Rational& s) const {
        GroupElement r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : coeffs) r.coeffs.emplace(k, c * s);
        return r;
    }
    bool operator==(const GroupElement& o) const { return coeffs == o.coeffs; }
};

class Presentation; // fwd

struct MembershipResult {
    enum class Status { Member, NonMember, UnknownMonomial };
    Status status = Status::Member;
    std::string reason;
    GroupElement decomposition; // valid when Member

    bool is_member() const { return status == Status::Member; }
};

// Basis-resolved model of an additive subgroup G of R^2 with positive cone
// and order unit. Membership is a per-slot ring check; this is exact under
// the standing assumption that distinct monomials in the declared symbols
// are linearly independent over Q.
class Presentation {
public:
    Presentation(std::string tag, std::vector<SymbolDecl> symbols,
                 std::vector<SlotClass> classes, std::vector<std::string> assumptions = {})
        : tag_(std::move(tag)),
          symbols_(std::move(symbols)),
          classes_(std::move(classes)),
          assumptions_(std::move(assumptions)) {
        validate();
        unit_ = resolve_unit();
    }

    const std::string& tag() const { return tag_; }
    const std::vector<SymbolDecl>& symbols() const { return symbols_; }
    const std::vector<SlotClass>& classes() const { return classes_; }
    const std::vector<std::string>& assumptions() const { return assumptions_; }
    const GroupElement& unit() const { return unit_; }
    size_t nsyms() const { return symbols_.size(); }
    // The ambient dimension. The slot model and the matrix shapes are written
    // against the plane; higher dimensions would need n-ary coordinates.
    static constexpr int dim = 2;

    std::vector<std::string> symbol_names() const {
        std::vector<std::string> n;
        for (const auto& s : symbols_) n.push_back(s.name());
        return n;
    }
    std::optional<size_t> symbol_index(const std::string& name) const {
        for (size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name() == name) return i;
        return std::nullopt;
    }

    // Slot lookup by external address (channel, radical, degree).
    std::optional<SlotKey> slot_at(const std::string& channel, int radical,
                                   long long degree) const {
        for (int i = 0; i < (int)classes_.size(); ++i) {
            const auto& c = classes_[(size_t)i];
            if (c.channel != channel || c.addr_radical != radical) continue;
            if (auto u = c.u_of_degree(degree)) return SlotKey{i, *u};
        }
        return std::nullopt;
    }
    // External address of a slot.
    std::tuple<std::string, int, long long> address_of(const SlotKey& k) const {
        const auto& c = classes_[(size_t)k.class_idx];
        return {c.channel, c.addr_radical, c.degree_of(k.u)};
    }

    VecExpr basis_vector(const SlotKey& k) const {
        const auto& c = classes_[(size_t)k.class_idx];
        VecExpr v;
        for (int j : {0, 1})
            if (!c.coords[(size_t)j].zero) v.add(j, c.coords[(size_t)j].at(k.u), Rational(1));
        return v;
    }

    VecExpr expand(const GroupElement& g) const {
        VecExpr v;
        for (const auto& [k, c] : g.coeffs) v = v + basis_vector(k) * c;
        return v;
    }

    // Finds the unique slot whose coordinate-j monomial equals m, if any.
    std::optional<SlotKey> match_coord(int j, const Mono& m) const {
        for (int i = 0; i < (int)classes_.size(); ++i) {
            const auto& t = classes_[(size_t)i].coords[(size_t)j];
            if (t.zero || t.radical != m.radical) continue;
            std::optional<long long> u;
            bool ok = true;
            for (size_t s = 0; s < t.exps.size() && ok; ++s) {
                int e = m.exps[s];
                const AffExp& a = t.exps[s];
                if (a.slope == 0) {
                    if (e != a.offset) ok = false;
                } else {
                    long long diff = (long long)e - a.offset;
                    if (diff % a.slope != 0) {
                        ok = false;
                    } else {
                        long long cand = diff / a.slope;
                        if (u.has_value() && *u != cand)
                            ok = false;
                        else
                            u = cand;
                    }
                }
            }
            if (!ok) continue;
            if (!u.has_value()) u = 0; // fixed class: all slopes zero
            return SlotKey{i, *u};
        }
        return std::nullopt;
    }

    // Decides whether a coefficient vector lies in G, and if so returns its
    // slot decomposition. An unknown monomial (outside every family) is
    // reported as such, never silently treated as a non-member.
    MembershipResult membership(const VecExpr& v) const {
        MembershipResult res;
        for (int j : {0, 1}) {
            for (const auto& [m, c] : v.coords[(size_t)j]) {
                auto k = match_coord(j, m);
                if (!k.has_value()) {
                    res.status = MembershipResult::Status::UnknownMonomial;
                    res.reason = "coordinate " + std::to_string(j + 1) + " monomial " +
                                 m.to_string(symbol_names()) +
                                 " is outside the basis descriptor family";
                    return res;
                }
                auto it = res.decomposition.coeffs.find(*k);
                if (it == res.decomposition.coeffs.end()) {
                    res.decomposition.coeffs.emplace(*k, c);
                } else if (it->second != c) {
                    res.status = MembershipResult::Status::NonMember;
                    res.reason = "coordinates demand conflicting multiples (" +
                                 it->second.to_string() + " vs " + c.to_string() +
                                 ") of slot " + classes_[(size_t)k->class_idx].id;
                    return res;
                }
            }
        }
        // Re-expansion must reproduce the input exactly (catches a slot whose
        // other coordinate is absent from the input).
        if (!(expand(res.decomposition) == v)) {
            res.status = MembershipResult::Status::NonMember;
            res.reason = "vector is not a slot combination (coordinate coupling violated)";
            return res;
        }
        for (const auto& [k, c] : res.decomposition.coeffs) {
            const auto& cls = classes_[(size_t)k.class_idx];
            if (cls.ring == Ring::Zero) {
                res.status = MembershipResult::Status::NonMember;
                res.reason = "coefficient occupies forbidden slot " + cls.id;
                return res;
            }
            if (!ring_admits(cls.ring, c)) {
                res.status = MembershipResult::Status::NonMember;
                res.reason = "coefficient " + c.to_string() + " at slot " + cls.id +
                             " degree " + std::to_string(cls.degree_of(k.u)) +
                             " is not in " + ring_name(cls.ring);
                return res;
            }
        }
        return res;
    }

    // Membership of a slot-addressed coefficient map (ring conformance).
    MembershipResult membership(const GroupElement& g) const { return membership(expand(g)); }

    // Symbol enclosures for numeric certification; algebraic symbols are
    // refined to the requested width, formal symbols use their declared
    // approximation. Returns nullopt if some symbol has no numeric data.
    std::optional<std::vector<QInterval>> enclosures(const Rational& width) const {
        std::vector<QInterval> out;
        for (const auto& s : symbols_) {
            auto e = s.enclosure(width);
            if (!e.has_value()) return std::nullopt;
            out.push_back(*e);
        }
        return out;
    }

private:
    void validate() {
        if (symbols_.empty()) throw HypothesisError("invalid params: no symbols declared");
        for (size_t i = 0; i < symbols_.size(); ++i)
            for (size_t j = i + 1; j < symbols_.size(); ++j)
                if (symbols_[i].name() == symbols_[j].name())
                    throw HypothesisError("invalid params: duplicate symbol " +
                                          symbols_[i].name());
        if (classes_.empty()) throw HypothesisError("invalid params: no basis families");
        for (const auto& c : classes_) {
            if (c.coords[0].zero && c.coords[1].zero)
                throw HypothesisError("invalid params: family " + c.id + " has no coordinates");
            if (!c.fixed && c.deg_slope == 0)
                throw HypothesisError("invalid params: family " + c.id +
                                      " must vary its degree");
            for (int j : {0, 1}) {
                const auto& t = c.coords[(size_t)j];
                if (t.zero) continue;
                if (t.exps.size() != symbols_.size())
                    throw HypothesisError("invalid params: family " + c.id +
                                          " arity mismatch");
                if (!c.fixed && !t.depends_on_u())
                    throw HypothesisError(
                        "invalid params: family " + c.id + " coordinate " +
                        std::to_string(j + 1) +
                        " repeats one monomial over infinitely many slots");
            }
        }
        check_coordinate_uniqueness();
    }

    // No two distinct slots may present the same monomial in the same
    // coordinate; otherwise membership decomposition would be ambiguous.
    void check_coordinate_uniqueness() const {
        for (int j : {0, 1})
            for (size_t a = 0; a < classes_.size(); ++a)
                for (size_t b = a + 1; b < classes_.size(); ++b)
                    if (templates_collide(classes_[a].coords[(size_t)j],
                                          classes_[b].coords[(size_t)j]))
                        throw HypothesisError("invalid params: families " + classes_[a].id +
                                              " and " + classes_[b].id +
                                              " share coordinate-" + std::to_string(j + 1) +
                                              " monomials");
    }

    // Does there exist (u, v) with A(u) == B(v)? Linear Diophantine check.
    static bool templates_collide(const CoordTemplate& A, const CoordTemplate& B) {
        if (A.zero || B.zero) return false;
        if (A.radical != B.radical) return false;
        // Solve sA_i*u - sB_i*v = oB_i - oA_i for all i.
        bool have_param = false;
        long long u0 = 0, v0 = 0, du = 0, dv = 0; // solutions (u0 + du*t, v0 + dv*t)
        bool pinned = false;                      // unique candidate found
        for (size_t i = 0; i < A.exps.size(); ++i) {
            long long sa = A.exps[i].slope, sb = B.exps[i].slope;
            long long c = (long long)B.exps[i].offset - A.exps[i].offset;
            if (sa == 0 && sb == 0) {
                if (c != 0) return false;
                continue;
            }
            if (!have_param && !pinned) {
                long long g = std::gcd(std::abs(sa), std::abs(sb));
                if (g == 0) g = 1;
                if (c % g != 0) return false;
                // Extended Euclid on (sa, -sb).
                long long x = 0, y = 0;
                // Solve sa*x - sb*y = g by brute small search (slopes are tiny).
                bool found = false;
                for (long long xx = -8; xx <= 8 && !found; ++xx)
                    for (long long yy = -8; yy <= 8 && !found; ++yy)
                        if (sa * xx - sb * yy == g) {
                            x = xx;
                            y = yy;
                            found = true;
                        }
                if (!found) return true; // conservative: treat as colliding
                u0 = x * (c / g);
                v0 = y * (c / g);
                du = sb / g;
                dv = sa / g;
                if (du == 0 && dv == 0)
                    pinned = true;
                else
                    have_param = true;
                continue;
            }
            // Substitute the parameterization into this equation.
            long long lhs_const = sa * u0 - sb * v0;
            long long lhs_t = sa * du - sb * dv;
            long long rhs = c;
            if (lhs_t == 0) {
                if (lhs_const != rhs) return false;
            } else {
                if ((rhs - lhs_const) % lhs_t != 0) return false;
                long long t = (rhs - lhs_const) / lhs_t;
                u0 += du * t;
                v0 += dv * t;
                du = dv = 0;
                have_param = false;
                pinned = true;
            }
        }
        return true; // a common instantiation exists
    }

    GroupElement resolve_unit() {
        VecExpr one;
        Mono trivial(nsyms());
        one.add(0, trivial, Rational(1));
        one.add(1, trivial, Rational(1));
        auto res = membership(one);
        if (!res.is_member())
            throw HypothesisError("invalid params: order unit (1,1) is not a member: " +
                                  res.reason);
        return res.decomposition;
    }

    std::string tag_;
    std::vector<SymbolDecl> symbols_;
    std::vector<SlotClass> classes_;
    std::vector<std::string> assumptions_;
    GroupElement unit_;
};

inline bool is_member(const Presentation& p, const GroupElement& g) {
    return p.membership(g).is_member();
}

// Coordinate evaluation phi_k: the k-th coordinate of g as a symbolic
// expression (map monomial -> rational).
inline std::map<Mono, Rational> state_eval(const Presentation& p, const GroupElement& g,
                                           int k) {
    if (k < 1 || k > 2) throw HypothesisError("state_eval: coordinate index out of range");
    return p.expand(g).coords[(size_t)(k - 1)];
}

// ---- Builders for the shipped constructions ----

namespace builders {

inline SlotClass parametric(std::string id, Ring ring, int deg_offset,
                            std::array<CoordTemplate, 2> coords, std::string channel = "main",
                            int addr_radical = 0) {
    SlotClass c;
    c.id = std::move(id);
    c.ring = ring;
    c.channel = std::move(channel);
    c.addr_radical = addr_radical;
    c.fixed = false;
    c.deg_slope = 2;
    c.deg_offset = deg_offset;
    c.coords = std::move(coords);
    return c;
}

inline SlotClass fixed_slot(std::string id, Ring ring, std::string channel,
                            std::array<CoordTemplate, 2> coords) {
    SlotClass c;
    c.id = std::move(id);
    c.ring = ring;
    c.channel = std::move(channel);
    c.fixed = true;
    c.deg_slope = 0;
    c.deg_offset = 0;
    c.coords = std::move(coords);
    return c;
}

inline CoordTemplate power_of(size_t nsyms, size_t sym, int slope, int offset,
                              int radical = 0) {
    CoordTemplate t = CoordTemplate::mono(nsyms, radical);
    t.exps[sym] = AffExp{slope, offset};
    return t;
}

} // namespace builders

// G = sum over i of Q(a^{2i}, b^{2i}) + Z(a^{2i+1}, b^{2i+1}).
inline Presentation build_t1(SymbolDecl alpha, SymbolDecl beta) {
    using namespace builders;
    if (alpha.name() == beta.name())
        throw HypothesisError("invalid params: T1 needs two distinct symbols");
    std::vector<SlotClass> cls{
        parametric("q-even", Ring::Q, 0,
                   {power_of(2, 0, 2, 0), power_of(2, 1, 2, 0)}),
        parametric("z-odd", Ring::Z, 1,
                   {power_of(2, 0, 2, 1), power_of(2, 1, 2, 1)}),
    };
    std::vector<std::string> assume{
        "symbols " + alpha.name() + ", " + beta.name() +
            " are positive and algebraically independent",
        beta.name() + " differs from 1, " + alpha.name() + ", and 1/" + alpha.name()};
    return Presentation("T1", {std::move(alpha), std::move(beta)}, std::move(cls),
                        std::move(assume));
}

// G = sum of Q(a^{2i}, a^{-2i}) + Z(a^{2i+1}, a^{-2i-1}) + Z cbrt2 (a^{2i+1}, 0).
inline Presentation build_t3(SymbolDecl alpha) {
    using namespace builders;
    std::vector<SlotClass> cls{
        parametric("q-even", Ring::Q, 0,
                   {power_of(1, 0, 2, 0), power_of(1, 0, -2, 0)}),
        parametric("z-odd", Ring::Z, 1,
                   {power_of(1, 0, 2, 1), power_of(1, 0, -2, -1)}),
        parametric("z-rad-odd", Ring::Z, 1,
                   {power_of(1, 0, 2, 1, 1), CoordTemplate::make_zero()},
                   "main", 1),
    };
    std::vector<std::string> assume{"symbol " + alpha.name() +
                                    " is positive and transcendental"};
    return Presentation("T3", {std::move(alpha)}, std::move(cls), std::move(assume));
}

// T3 with the second coordinate a^{d} instead of a^{-d}.
inline Presentation build_t5(SymbolDecl alpha) {
    using namespace builders;
    std::vector<SlotClass> cls{
        parametric("q-even", Ring::Q, 0,
                   {power_of(1, 0, 2, 0), power_of(1, 0, 2, 0)}),
        parametric("z-odd", Ring::Z, 1,
                   {power_of(1, 0, 2, 1), power_of(1, 0, 2, 1)}),
        parametric("z-rad-odd", Ring::Z, 1,
                   {power_of(1, 0, 2, 1, 1), CoordTemplate::make_zero()},
                   "main", 1),
    };
    std::vector<std::string> assume{"symbol " + alpha.name() +
                                    " is positive and transcendental"};
    return Presentation("T5", {std::move(alpha)}, std::move(cls), std::move(assume));
}

// G = {(sum a_i alpha^i, l1 + l2 beta)} with integer coefficients.
inline Presentation build_t6(SymbolDecl alpha, SymbolDecl beta) {
    using namespace builders;
    if (alpha.name() == beta.name())
        throw HypothesisError("invalid params: T6 needs two distinct symbols");
    std::vector<SlotClass> cls{
        parametric("z-even", Ring::Z, 0,
                   {power_of(2, 0, 2, 0), CoordTemplate::make_zero()}),
        parametric("z-odd", Ring::Z, 1,
                   {power_of(2, 0, 2, 1), CoordTemplate::make_zero()}),
        fixed_slot("one", Ring::Z, "one",
                   {CoordTemplate::make_zero(), CoordTemplate::mono(2, 0)}),
        fixed_slot("beta", Ring::Z, "beta",
                   {CoordTemplate::make_zero(), power_of(2, 1, 0, 1)}),
    };
    std::vector<std::string> assume{
        "symbols " + alpha.name() + ", " + beta.name() +
        " are positive transcendentals, " + beta.name() +
        " outside the algebraic closure of Q(" + alpha.name() + ")"};
    return Presentation("T6", {std::move(alpha), std::move(beta)}, std::move(cls),
                        std::move(assume));
}

enum class BuilderTag { T1, T3, T5, T6, Custom };

inline Presentation build_group(BuilderTag tag, std::vector<SymbolDecl> symbols) {
    switch (tag) {
        case BuilderTag::T1:
            if (symbols.size() != 2)
                throw HypothesisError("invalid params: T1 takes two symbols");
            return build_t1(std::move(symbols[0]), std::move(symbols[1]));
        case BuilderTag::T3:
            if (symbols.size() != 1)
                throw HypothesisError("invalid params: T3 takes one symbol");
            return build_t3(std::move(symbols[0]));
        case BuilderTag::T5:
            if (symbols.size() != 1)
                throw HypothesisError("invalid params: T5 takes one symbol");
            return build_t5(std::move(symbols[0]));
        case BuilderTag::T6:
            if (symbols.size() != 2)
                throw HypothesisError("invalid params: T6 takes two symbols");
            return build_t6(std::move(symbols[0]), std::move(symbols[1]));
        default:
            throw HypothesisError("invalid params: custom presentations carry their rules");
    }
}

} // namespace diminv
