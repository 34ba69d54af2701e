#pragma once

#include <optional>
#include <string>
#include <variant>

#include "diminv/algebraic.hpp"
#include "diminv/interval.hpp"

namespace diminv {

// A formal positive real, treated as algebraically independent from every
// other symbol. The optional numeric enclosure is used only for norm and
// sign estimation, never in exact decisions.
struct SymbolicReal {
    std::string name;
    std::optional<double> approx;
    double radius = 0.0;

    SymbolicReal() = default;
    SymbolicReal(std::string n) : name(std::move(n)) {}
    SymbolicReal(std::string n, double a, double r = 1e-9)
        : name(std::move(n)), approx(a), radius(r) {
        if (a - r <= 0.0)
            throw HypothesisError("symbol " + name + ": enclosure must stay positive");
    }

    std::optional<QInterval> enclosure() const {
        if (!approx.has_value()) return std::nullopt;
        Rational c = rational_from_double(*approx);
        Rational r = rational_from_double(radius);
        return QInterval(c - r, c + r);
    }
};

// A named generator of a presentation: either a formal transcendental or a
// real algebraic number (whose enclosure is refinable).
class SymbolDecl {
public:
    SymbolDecl(SymbolicReal s) : name_(s.name), v_(std::move(s)) {}
    SymbolDecl(std::string name, AlgebraicNumber a)
        : name_(std::move(name)), v_(std::move(a)) {}

    const std::string& name() const { return name_; }
    bool is_symbolic() const { return std::holds_alternative<SymbolicReal>(v_); }
    const SymbolicReal& symbolic() const { return std::get<SymbolicReal>(v_); }
    const AlgebraicNumber& algebraic() const { return std::get<AlgebraicNumber>(v_); }

    // Enclosure at roughly the requested width when refinable.
    std::optional<QInterval> enclosure(const Rational& want_width) const {
        if (is_symbolic()) return symbolic().enclosure();
        AlgebraicNumber a = algebraic();
        a.refine_below(want_width);
        return a.interval();
    }
    bool refinable() const { return !is_symbolic(); }

private:
    std::string name_;
    std::variant<SymbolicReal, AlgebraicNumber> v_;
};

} // namespace diminv
