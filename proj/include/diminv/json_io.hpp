#pragma once

#include <json.hpp>

#include "diminv/certificates.hpp"
#include "diminv/density.hpp"
#include "diminv/fgroup.hpp"

namespace diminv {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---- primitives ----

inline Json rational_to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from_json(const Json& j, const std::string& what) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational((long)j.get<long long>());
    throw SchemaError(what + ": expected a decimal string");
}

inline Integer integer_from_json(const Json& j, const std::string& what) {
    Rational r = rational_from_json(j, what);
    if (!r.is_integer()) throw SchemaError(what + ": expected an integer");
    return r.num();
}

inline Json intpoly_to_json(const IntPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
    return arr;
}

inline IntPoly intpoly_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) throw SchemaError(what + ": expected a coefficient array");
    std::vector<Integer> cs;
    for (const auto& c : j) cs.push_back(integer_from_json(c, what));
    return IntPoly(std::move(cs));
}

// Laurent polynomials: dense {"lowest", "coeffs"} for small spans, sparse
// {"terms": [[exp, coeff], ...]} otherwise; both forms are accepted, as is a
// plain coefficient array starting at degree zero.
inline Json laurent_to_json(const LaurentPoly& f) {
    Json out;
    long long span = f.is_zero() ? 0 : f.highest() - f.lowest() + 1;
    if (span <= 64) {
        out["lowest"] = f.is_zero() ? 0 : f.lowest();
        Json arr = Json::array();
        for (long long e = f.lowest(); !f.is_zero() && e <= f.highest(); ++e)
            arr.push_back(f.coeff(e).to_string());
        out["coeffs"] = std::move(arr);
    } else {
        Json terms = Json::array();
        for (const auto& [e, c] : f.terms()) terms.push_back(Json::array({e, c.to_string()}));
        out["terms"] = std::move(terms);
    }
    return out;
}

inline LaurentPoly laurent_from_json(const Json& j, const std::string& what) {
    LaurentPoly f;
    if (j.is_array()) {
        long long e = 0;
        for (const auto& c : j) f.add_term(e++, rational_from_json(c, what));
        return f;
    }
    if (!j.is_object()) throw SchemaError(what + ": expected a Laurent polynomial");
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2)
                throw SchemaError(what + ": terms must be [exp, coeff] pairs");
            f.add_term(t[0].get<long long>(), rational_from_json(t[1], what));
        }
        return f;
    }
    long long lowest = j.value("lowest", 0ll);
    long long e = lowest;
    for (const auto& c : j.at("coeffs")) f.add_term(e++, rational_from_json(c, what));
    return f;
}

// ---- numbers ----

inline Json number_to_json(const Rational& r) {
    return Json{{"kind", "rational"}, {"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

inline Json number_to_json(const AlgebraicNumber& a) {
    return Json{{"kind", "algebraic"},
                {"minpoly", intpoly_to_json(a.minpoly())},
                {"interval", Json::array({a.interval().lo.to_string(),
                                          a.interval().hi.to_string()})},
                {"asserted_minimal", a.asserted_minimal()}};
}

inline Json number_to_json(const SymbolicReal& s) {
    Json out{{"kind", "symbol"}, {"name", s.name}};
    if (s.approx.has_value()) {
        out["approx"] = *s.approx;
        out["radius"] = s.radius;
    }
    return out;
}

inline Json number_to_json(const SymbolDecl& s) {
    if (s.is_symbolic()) return number_to_json(s.symbolic());
    Json out = number_to_json(s.algebraic());
    out["name"] = s.name();
    return out;
}

inline AlgebraicNumber algebraic_from_json(const Json& j, bool force_asserted = false) {
    IntPoly mp = intpoly_from_json(j.at("minpoly"), "minpoly");
    const Json& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2)
        throw SchemaError("interval: expected [lo, hi]");
    bool asserted = force_asserted || j.value("asserted_minimal", false);
    return AlgebraicNumber(mp, rational_from_json(iv[0], "interval"),
                           rational_from_json(iv[1], "interval"), asserted);
}

inline SymbolicReal symbol_from_json(const Json& j) {
    SymbolicReal s(j.at("name").get<std::string>());
    if (j.contains("approx")) {
        double a = j.at("approx").get<double>();
        double r = j.value("radius", 1e-9);
        s = SymbolicReal(s.name, a, r);
    }
    return s;
}

struct NumberValue {
    enum class Kind { Rational, Algebraic, Symbol };
    Kind kind = Kind::Rational;
    Rational rational{0};
    std::optional<AlgebraicNumber> algebraic;
    std::optional<SymbolicReal> symbol;
};

inline NumberValue number_from_json(const Json& j, bool force_asserted = false) {
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError("number: expected an object with a kind field");
    std::string kind = j.at("kind").get<std::string>();
    NumberValue v;
    if (kind == "rational") {
        v.rational = Rational(integer_from_json(j.at("num"), "num"),
                              integer_from_json(j.at("den"), "den"));
    } else if (kind == "algebraic") {
        v.kind = NumberValue::Kind::Algebraic;
        v.algebraic = algebraic_from_json(j, force_asserted);
    } else if (kind == "symbol") {
        v.kind = NumberValue::Kind::Symbol;
        v.symbol = symbol_from_json(j);
    } else {
        throw SchemaError("number: unknown kind \"" + kind + "\"");
    }
    return v;
}

inline SymbolDecl symbol_decl_from_json(const Json& j) {
    NumberValue v = number_from_json(j);
    switch (v.kind) {
        case NumberValue::Kind::Symbol: return SymbolDecl(*v.symbol);
        case NumberValue::Kind::Algebraic: {
            if (!j.contains("name"))
                throw SchemaError("algebraic presentation symbols need a name");
            return SymbolDecl(j.at("name").get<std::string>(), *v.algebraic);
        }
        default:
            throw SchemaError("rational numbers cannot serve as presentation symbols");
    }
}

// ---- basis rules and presentations ----

namespace detail {

struct CoordSpec {
    bool zero = false;
    std::string name; // empty: constant 1
    enum class Exp { PlusD, MinusD, Fixed } exp = Exp::Fixed;
    int fixed = 0;
};

inline CoordSpec parse_coord(const std::string& s) {
    CoordSpec c;
    if (s == "0") {
        c.zero = true;
        return c;
    }
    if (s == "1") return c;
    auto caret = s.find('^');
    if (caret == std::string::npos) {
        c.name = s;
        c.fixed = 1;
        return c;
    }
    c.name = s.substr(0, caret);
    std::string e = s.substr(caret + 1);
    if (e == "d") {
        c.exp = CoordSpec::Exp::PlusD;
    } else if (e == "-d") {
        c.exp = CoordSpec::Exp::MinusD;
    } else {
        try {
            c.fixed = std::stoi(e);
        } catch (const std::exception&) {
            throw SchemaError("coordinate \"" + s + "\": exponent must be d, -d or an integer");
        }
    }
    return c;
}

inline CoordTemplate coord_template(const CoordSpec& spec, int radical,
                                    const std::vector<std::string>& names, int parity_offset,
                                    bool fixed_rule, int fixed_degree) {
    if (spec.zero) return CoordTemplate::make_zero();
    CoordTemplate t = CoordTemplate::mono(names.size(), radical);
    if (spec.name.empty()) return t;
    auto it = std::find(names.begin(), names.end(), spec.name);
    if (it == names.end())
        throw SchemaError("coordinate uses unknown symbol \"" + spec.name + "\"");
    size_t idx = (size_t)(it - names.begin());
    switch (spec.exp) {
        case CoordSpec::Exp::PlusD:
            if (fixed_rule)
                t.exps[idx] = AffExp{0, fixed_degree};
            else
                t.exps[idx] = AffExp{2, parity_offset};
            break;
        case CoordSpec::Exp::MinusD:
            if (fixed_rule)
                t.exps[idx] = AffExp{0, -fixed_degree};
            else
                t.exps[idx] = AffExp{-2, -parity_offset};
            break;
        default:
            t.exps[idx] = AffExp{0, spec.fixed};
    }
    return t;
}

inline Ring ring_from_string(const std::string& s) {
    if (s == "Z") return Ring::Z;
    if (s == "Q") return Ring::Q;
    if (s == "zero") return Ring::Zero;
    throw SchemaError("ring must be Z, Q or zero, got \"" + s + "\"");
}

inline std::string coord_to_string(const CoordTemplate& t, const SlotClass& cls,
                                   const std::vector<std::string>& names) {
    if (t.zero) return "0";
    std::string out;
    for (size_t i = 0; i < t.exps.size(); ++i) {
        const AffExp& e = t.exps[i];
        if (e.slope == 0 && e.offset == 0) continue;
        if (!out.empty())
            throw Error("internal: multi-symbol coordinates have no rule syntax");
        if (cls.fixed) {
            if (e.offset == cls.deg_offset && cls.deg_offset != 0)
                out = names[i] + "^d";
            else
                out = names[i] + "^" + std::to_string(e.offset);
        } else if (e.slope == 2 && e.offset == cls.deg_offset) {
            out = names[i] + "^d";
        } else if (e.slope == -2 && e.offset == -cls.deg_offset) {
            out = names[i] + "^-d";
        } else if (e.slope == 0) {
            out = names[i] + "^" + std::to_string(e.offset);
        } else {
            throw Error("internal: coordinate outside the rule syntax");
        }
    }
    return out.empty() ? "1" : out;
}

} // namespace detail

inline Json presentation_to_json(const Presentation& p) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["dim"] = Presentation::dim;
    out["tag"] = p.tag();
    Json syms = Json::array();
    for (const auto& s : p.symbols()) syms.push_back(number_to_json(s));
    out["symbols"] = std::move(syms);
    if (p.tag() == "T1" || p.tag() == "T3" || p.tag() == "T5" || p.tag() == "T6") return out;
    Json rules = Json::array();
    auto names = p.symbol_names();
    for (const auto& c : p.classes()) {
        Json r;
        r["id"] = c.id;
        r["ring"] = ring_name(c.ring);
        r["radical"] = c.addr_radical;
        if (c.fixed) {
            r["degree_parity"] = "fixed";
            r["degree"] = c.deg_offset;
        } else {
            r["degree_parity"] = c.deg_offset == 0 ? "even" : "odd";
        }
        r["channel"] = c.channel;
        int rad = c.coords[0].zero ? c.coords[1].radical : c.coords[0].radical;
        r["coord_radical"] = rad;
        r["coords"] = Json::array({detail::coord_to_string(c.coords[0], c, names),
                                   detail::coord_to_string(c.coords[1], c, names)});
        rules.push_back(std::move(r));
    }
    out["basis_rules"] = std::move(rules);
    return out;
}

inline Presentation presentation_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("presentation: expected an object");
    if (j.value("dim", 2) != Presentation::dim)
        throw SchemaError("presentation: only dimension 2 is supported");
    std::string tag = j.value("tag", "");
    std::vector<SymbolDecl> symbols;
    for (const auto& s : j.at("symbols")) symbols.push_back(symbol_decl_from_json(s));
    if (tag == "T1") return build_group(BuilderTag::T1, std::move(symbols));
    if (tag == "T3") return build_group(BuilderTag::T3, std::move(symbols));
    if (tag == "T5") return build_group(BuilderTag::T5, std::move(symbols));
    if (tag == "T6") return build_group(BuilderTag::T6, std::move(symbols));
    if (tag != "custom") throw SchemaError("presentation tag must be T1/T3/T5/T6/custom");

    std::vector<std::string> names;
    for (const auto& s : symbols) names.push_back(s.name());
    std::vector<SlotClass> classes;
    int counter = 0;
    for (const auto& r : j.at("basis_rules")) {
        std::string parity = r.at("degree_parity").get<std::string>();
        Ring ring = detail::ring_from_string(r.at("ring").get<std::string>());
        int addr_radical = r.value("radical", 0);
        int coord_radical = r.value("coord_radical", addr_radical);
        std::string channel = r.value("channel", "main");
        const Json& coords = r.at("coords");
        if (!coords.is_array() || coords.size() != 2)
            throw SchemaError("basis rule: coords must list exactly two descriptors");
        auto c0 = detail::parse_coord(coords[0].get<std::string>());
        auto c1 = detail::parse_coord(coords[1].get<std::string>());
        auto make = [&](int parity_offset, bool fixed, int fixed_degree,
                        const std::string& id_suffix) {
            SlotClass cls;
            cls.id = r.value("id", "rule" + std::to_string(counter)) + id_suffix;
            cls.ring = ring;
            cls.channel = channel;
            cls.addr_radical = addr_radical;
            cls.fixed = fixed;
            cls.deg_slope = fixed ? 0 : 2;
            cls.deg_offset = fixed ? fixed_degree : parity_offset;
            cls.coords = {detail::coord_template(c0, coord_radical, names, parity_offset,
                                                 fixed, fixed_degree),
                          detail::coord_template(c1, coord_radical, names, parity_offset,
                                                 fixed, fixed_degree)};
            classes.push_back(std::move(cls));
        };
        if (parity == "even") {
            make(0, false, 0, "");
        } else if (parity == "odd") {
            make(1, false, 0, "");
        } else if (parity == "all") {
            make(0, false, 0, "-even");
            make(1, false, 0, "-odd");
        } else if (parity == "fixed") {
            make(0, true, r.value("degree", 0), "");
        } else {
            throw SchemaError("degree_parity must be even/odd/all/fixed");
        }
        ++counter;
    }
    return Presentation("custom", std::move(symbols), std::move(classes));
}

// ---- elements ----

inline Json element_to_json(const Presentation& p, const GroupElement& g) {
    Json arr = Json::array();
    for (const auto& [k, c] : g.coeffs) {
        auto [chan, rad, deg] = p.address_of(k);
        Json e{{"radical", rad}, {"degree", deg}, {"coeff", c.to_string()}};
        if (chan != "main") e["slot"] = chan;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline GroupElement element_from_json(const Presentation& p, const Json& j) {
    if (!j.is_array()) throw SchemaError("element: expected a list of slot coefficients");
    GroupElement g;
    for (const auto& e : j) {
        std::string chan = e.value("slot", "main");
        int rad = e.value("radical", 0);
        long long deg = e.value("degree", 0ll);
        auto key = p.slot_at(chan, rad, deg);
        if (!key.has_value())
            throw HypothesisError("unknown basis monomial: slot " + chan + ", radical " +
                                  std::to_string(rad) + ", degree " + std::to_string(deg) +
                                  " is outside the descriptor family");
        g.add(*key, rational_from_json(e.at("coeff"), "coeff"));
    }
    return g;
}

// ---- matrices ----

inline Json matrix_to_json(const Presentation& p, const MonomialMatrix& m) {
    auto names = p.symbol_names();
    auto entry = [&](const MatEntry& e) {
        Json mono = Json::object();
        for (size_t i = 0; i < e.mono.exps.size(); ++i)
            if (e.mono.exps[i] != 0) mono[names[i]] = e.mono.exps[i];
        return Json{{"coeff", e.coeff.to_string()},
                    {"monomial", std::move(mono)},
                    {"radical", e.mono.radical}};
    };
    return Json{{"shape", m.shape == MonomialMatrix::Shape::Diagonal ? "diagonal"
                                                                     : "antidiagonal"},
                {"entries", Json::array({entry(m.entries[0]), entry(m.entries[1])})}};
}

inline MonomialMatrix matrix_from_json(const Presentation& p, const Json& j) {
    std::string shape = j.at("shape").get<std::string>();
    const Json& es = j.at("entries");
    if (!es.is_array() || es.size() != 2)
        throw SchemaError("matrix: expected exactly two entries");
    auto entry = [&](const Json& e) {
        Mono m(p.nsyms());
        m.radical = e.value("radical", 0);
        if (e.contains("monomial")) {
            for (const auto& [name, exp] : e.at("monomial").items()) {
                auto idx = p.symbol_index(name);
                if (!idx.has_value())
                    throw HypothesisError("inexpressible action: unknown symbol \"" + name +
                                          "\"");
                m.exps[*idx] = exp.get<int>();
            }
        }
        return MatEntry(rational_from_json(e.at("coeff"), "matrix coeff"), std::move(m));
    };
    if (shape == "diagonal") return MonomialMatrix::diagonal(entry(es[0]), entry(es[1]));
    if (shape == "antidiagonal")
        return MonomialMatrix::antidiagonal(entry(es[0]), entry(es[1]));
    throw SchemaError("matrix shape must be diagonal or antidiagonal");
}

// ---- certificates ----

inline Json certificate_to_json(const Certificate& c) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["regime"] = c.regime;
    out["a"] = number_to_json(c.a);
    out["b"] = c.b_is_rational() ? number_to_json(c.b_rational())
                                 : number_to_json(c.b_algebraic());
    out["identity"] = laurent_to_json(c.identity);
    Json target;
    target["kind"] = c.target.kind == CertTarget::Kind::BasePower ? "base_power" : "b_power";
    if (c.target.kind == CertTarget::Kind::BasePower) target["base"] = c.target.base.get_str();
    target["exp"] = c.target.exp;
    out["target"] = std::move(target);
    Json consts = Json::object();
    for (const auto& [k, v] : c.constants) consts[k] = v;
    out["constants"] = std::move(consts);
    return out;
}

inline Certificate certificate_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("certificate: expected an object");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw SchemaError("certificate: unsupported schema_version");
    Certificate c;
    c.regime = j.at("regime").get<std::string>();
    if (c.regime != "rational_b" && c.regime != "laurent_unit" && c.regime != "monic_b")
        throw SchemaError("certificate: unknown regime \"" + c.regime + "\"");
    NumberValue a = number_from_json(j.at("a"));
    if (a.kind == NumberValue::Kind::Rational)
        c.a = AlgebraicNumber::from_rational(a.rational);
    else if (a.kind == NumberValue::Kind::Algebraic)
        c.a = *a.algebraic;
    else
        throw SchemaError("certificate: a must be rational or algebraic");
    NumberValue b = number_from_json(j.at("b"));
    if (b.kind == NumberValue::Kind::Rational)
        c.b = b.rational;
    else if (b.kind == NumberValue::Kind::Algebraic)
        c.b = *b.algebraic;
    else
        throw SchemaError("certificate: b must be rational or algebraic");
    c.identity = laurent_from_json(j.at("identity"), "identity");
    const Json& t = j.at("target");
    std::string kind = t.at("kind").get<std::string>();
    if (kind == "base_power") {
        c.target.kind = CertTarget::Kind::BasePower;
        c.target.base = integer_from_json(t.at("base"), "target base");
    } else if (kind == "b_power") {
        c.target.kind = CertTarget::Kind::BPower;
    } else {
        throw SchemaError("certificate: unknown target kind");
    }
    c.target.exp = t.at("exp").get<long long>();
    if (j.contains("constants"))
        for (const auto& [k, v] : j.at("constants").items())
            c.constants[k] = v.get<std::string>();
    return c;
}

// ---- results and reports ----

inline Json membership_to_json(const Presentation& p, const MembershipResult& r) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["member"] = r.is_member();
    switch (r.status) {
        case MembershipResult::Status::Member:
            out["status"] = "member";
            out["decomposition"] = element_to_json(p, r.decomposition);
            break;
        case MembershipResult::Status::NonMember:
            out["status"] = "non_member";
            out["reason"] = r.reason;
            break;
        default:
            out["status"] = "unknown_basis_monomial";
            out["reason"] = r.reason;
    }
    return out;
}

inline Json invariance_to_json(const Presentation& p, const InvarianceResult& r) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["invariant"] = r.invariant;
    if (r.invariant) {
        out["slot_maps"] = r.slot_maps;
    } else {
        out["reason"] = r.reason;
        out["witness"] = element_to_json(p, r.witness);
        out["witness_direction"] = r.witness_direction();
    }
    return out;
}

inline Json density_to_json(const Presentation& p, const DensityWitness& w) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    Json vecs = Json::array();
    for (const auto& v : w.vectors) vecs.push_back(element_to_json(p, v));
    out["vectors"] = std::move(vecs);
    Json nb = Json::array();
    for (const auto& b : w.norm_bounds) nb.push_back(b.to_string());
    out["norm_sq_upper_bounds"] = std::move(nb);
    out["independence"] = w.det_symbolic ? "symbolic" : "interval";
    out["det_lower_bound"] = w.det_lower_bound.to_string();
    return out;
}

inline Json refutation_to_json(const Presentation& p, const RefuteReport& r) {
    Json out;
    out["total"] = r.total;
    out["refuted"] = r.refuted;
    out["skipped_claimed"] = r.skipped_claimed;
    Json cls = Json::array();
    for (const auto& rc : r.classes) {
        Json c;
        c["class"] = rc.key;
        c["count"] = rc.count;
        c["candidate"] = matrix_to_json(p, rc.representative.candidate);
        c["witness"] = element_to_json(p, rc.representative.witness);
        c["witness_direction"] =
            rc.representative.witness_backward ? "inverse" : "forward";
        c["reason"] = rc.representative.reason;
        cls.push_back(std::move(c));
    }
    out["refutation_classes"] = std::move(cls);
    Json cx = Json::array();
    for (const auto& m : r.counterexamples) cx.push_back(matrix_to_json(p, m));
    out["counterexamples"] = std::move(cx);
    return out;
}

inline Json fgroup_report_to_json(const Presentation& p, const FGroupReport& r) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["presentation"] = presentation_to_json(p);
    out["claimed_group"] = r.claimed_description;
    out["generator"] = matrix_to_json(p, r.generator);
    Json incl = Json::array();
    for (const auto& pr : r.inclusions)
        incl.push_back(Json{{"n", pr.n}, {"slot_maps", pr.summary}});
    out["verified_inclusions"] = std::move(incl);
    out["diagonal_refutations"] = refutation_to_json(p, r.diagonal);
    out["antidiagonal_refutations"] = refutation_to_json(p, r.antidiagonal);
    out["assumptions"] = r.assumptions;
    out["verdict"] = r.verdict();
    return out;
}

} // namespace diminv
