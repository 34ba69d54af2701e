#pragma once

#include <cmath>
#include <numeric>

#include "diminv/action.hpp"
#include "diminv/density.hpp"

namespace diminv {

// Finite family of monomial candidates: entries r * sym^k * cbrt2^rho with
// coprime numerator/denominator of r bounded by `height`, |k| <= expo over a
// single symbol per entry, optional radical scalars. This is the family the
// invertibility reduction leaves behind.
struct CandidateFamily {
    MonomialMatrix::Shape shape = MonomialMatrix::Shape::Diagonal;
    unsigned height = 10;
    unsigned expo = 6;
    bool radical_parts = false;
};

struct Refutation {
    MonomialMatrix candidate;
    GroupElement witness;
    bool witness_backward = false;
    std::string reason;
};

struct RefutationClass {
    std::string key; // family|direction|kind
    unsigned long long count = 0;
    Refutation representative;
};

struct RefuteReport {
    unsigned long long total = 0;   // candidates enumerated
    unsigned long long refuted = 0;
    unsigned long long skipped_claimed = 0;
    std::vector<RefutationClass> classes;        // aggregated refutations
    std::vector<MonomialMatrix> counterexamples; // invariant candidates off the claim
};

struct InclusionProof {
    long long n = 0;
    std::string summary;
};

// Membership of a candidate in the claimed cyclic group {gen^n}.
class ClaimedGroup {
public:
    explicit ClaimedGroup(MonomialMatrix gen) : gen_(std::move(gen)) {
        if (gen_.shape != MonomialMatrix::Shape::Diagonal)
            throw HypothesisError("claimed generator must be diagonal");
    }
    const MonomialMatrix& generator() const { return gen_; }

    bool contains(const MonomialMatrix& m) const {
        if (m.shape != MonomialMatrix::Shape::Diagonal) return false;
        // Derive the only possible exponent from some nonzero generator datum.
        std::optional<long long> n;
        for (int e = 0; e < 2; ++e) {
            for (size_t s = 0; s < gen_.entries[(size_t)e].mono.exps.size(); ++s) {
                long long g = gen_.entries[(size_t)e].mono.exps[s];
                long long c = m.entries[(size_t)e].mono.exps[s];
                if (g == 0) {
                    if (c != 0) return false;
                    continue;
                }
                if (c % g != 0) return false;
                long long cand = c / g;
                if (n.has_value() && *n != cand) return false;
                n = cand;
            }
        }
        if (!n.has_value()) n = 0; // exponent-free generator: only the identity matches
        return gen_.pow(*n) == m;
    }

private:
    MonomialMatrix gen_;
};

// Runs check_invariance on gen^n for |n| <= bound. Any failure aborts with
// the witnessing element in the message.
inline std::vector<InclusionProof> verify_inclusion(const Presentation& p,
                                                    const MonomialMatrix& gen,
                                                    long long bound) {
    if (bound < 0) throw HypothesisError("verify_inclusion: bound must be nonnegative");
    std::vector<InclusionProof> proofs;
    for (long long n = -bound; n <= bound; ++n) {
        MonomialMatrix m = gen.pow(n);
        auto r = check_invariance(p, m);
        if (!r.invariant)
            throw Error("inclusion fails at n = " + std::to_string(n) + ": " + r.reason);
        std::string summary;
        for (const auto& s : r.slot_maps) summary += (summary.empty() ? "" : "; ") + s;
        proofs.push_back({n, summary});
    }
    return proofs;
}

namespace detail {

inline std::vector<Rational> coprime_heights(unsigned h) {
    std::vector<Rational> out;
    for (unsigned num = 1; num <= h; ++num)
        for (unsigned den = 1; den <= h; ++den)
            if (std::gcd(num, den) == 1) out.emplace_back((long)num, (long)den);
    return out;
}

inline std::vector<Mono> candidate_monos(size_t nsyms, unsigned expo, bool radical_parts) {
    std::vector<Mono> out;
    std::vector<int> radicals{0};
    if (radical_parts) radicals = {0, 1, 2};
    for (int rad : radicals) {
        Mono trivial(nsyms);
        trivial.radical = rad;
        out.push_back(trivial);
        for (size_t s = 0; s < nsyms; ++s)
            for (int k = -(int)expo; k <= (int)expo; ++k) {
                if (k == 0) continue;
                Mono m(nsyms);
                m.radical = rad;
                m.exps[s] = k;
                out.push_back(m);
            }
    }
    return out;
}

} // namespace detail

// Exhaustively checks every candidate in the family: claimed-group members
// are skipped, everything else must come back not-invariant. Invariant
// strangers are counterexamples. Refutations are aggregated per failure
// class with one replayable representative each.
inline RefuteReport refute_candidates(const Presentation& p, const ClaimedGroup& claimed,
                                      const CandidateFamily& family,
                                      unsigned long long budget = 100000) {
    auto heights = detail::coprime_heights(family.height);
    auto monos = detail::candidate_monos(p.nsyms(), family.expo, family.radical_parts);
    unsigned long long per_entry = (unsigned long long)heights.size() * monos.size();
    unsigned long long total = per_entry * per_entry;
    if (total > budget)
        throw SearchExhausted("family-too-large: " + std::to_string(total) +
                              " candidates exceed the budget of " + std::to_string(budget));

    std::vector<MatEntry> entries;
    entries.reserve((size_t)per_entry);
    for (const auto& r : heights)
        for (const auto& m : monos) entries.emplace_back(r, m);

    RefuteReport rep;
    rep.total = total;
    std::map<std::string, size_t> class_index;
    for (const auto& e1 : entries) {
        for (const auto& e2 : entries) {
            MonomialMatrix cand = family.shape == MonomialMatrix::Shape::Diagonal
                                      ? MonomialMatrix::diagonal(e1, e2)
                                      : MonomialMatrix::antidiagonal(e1, e2);
            if (claimed.contains(cand)) {
                ++rep.skipped_claimed;
                continue;
            }
            auto r = check_invariance(p, cand);
            if (r.invariant) {
                rep.counterexamples.push_back(cand);
                continue;
            }
            ++rep.refuted;
            auto [it, fresh] = class_index.emplace(r.failure_class, rep.classes.size());
            if (fresh) {
                RefutationClass rc;
                rc.key = r.failure_class;
                rc.count = 1;
                rc.representative = {cand, r.witness, r.witness_backward, r.reason};
                rep.classes.push_back(std::move(rc));
            } else {
                ++rep.classes[it->second].count;
            }
        }
    }
    return rep;
}

enum class BetaCase { Independent, Alpha, InvAlpha, One };

inline std::string beta_case_name(BetaCase b) {
    switch (b) {
        case BetaCase::Independent: return "indep";
        case BetaCase::Alpha: return "alpha";
        case BetaCase::InvAlpha: return "inv-alpha";
        default: return "one";
    }
}

struct RealizeOptions {
    unsigned height = 10;
    unsigned expo = 6;
    long long nbound = 5;
    // Default large enough to enumerate the default family exhaustively; the
    // command line can lower it to force the family-too-large report.
    unsigned long long budget = 30000000ull;
    std::optional<SymbolicReal> beta; // second symbol for the independent case
};

struct FGroupReport {
    std::string presentation_tag;
    std::string claimed_description;
    MonomialMatrix generator;
    std::vector<InclusionProof> inclusions;
    RefuteReport diagonal;
    RefuteReport antidiagonal;
    std::vector<std::string> assumptions;
    bool consistent_with_claim = false;

    std::string verdict() const {
        return consistent_with_claim ? "consistent_with_claim" : "counterexample_found";
    }
};

namespace detail {

// Square-root symbol: named sqrt_<base>, with an outward-rounded enclosure
// when the base has one.
inline SymbolicReal sqrt_symbol(const SymbolicReal& base) {
    SymbolicReal s("sqrt_" + base.name);
    if (base.approx.has_value()) {
        double a = *base.approx, r = base.radius;
        double lo = std::sqrt(std::max(a - r, 1e-300));
        double hi = std::sqrt(a + r);
        double mid = 0.5 * (lo + hi);
        s.approx = mid;
        s.radius = (hi - lo) * 0.5 + 1e-15 * (1.0 + mid);
    }
    return s;
}

} // namespace detail

// Builds the presentation realizing F = {diag(alpha^n, beta^n)} for the
// requested beta case, verifies the inclusion direction for |n| <= nbound,
// and refutes the bounded diagonal and antidiagonal candidate families.
inline std::pair<Presentation, FGroupReport> realize_dispatch(const SymbolicReal& alpha,
                                                              BetaCase beta,
                                                              RealizeOptions opt = {}) {
    std::optional<Presentation> pres;
    std::optional<MonomialMatrix> gen;
    std::string claimed;
    std::vector<std::string> extra_assume;

    auto diag_entry = [](size_t nsyms, size_t sym, int e) {
        Mono m(nsyms);
        m.exps[sym] = e;
        return MatEntry(Rational(1), std::move(m));
    };

    switch (beta) {
        case BetaCase::Independent: {
            SymbolicReal tau_base = opt.beta.value_or(SymbolicReal("beta"));
            if (tau_base.name == alpha.name)
                throw HypothesisError("unsupported beta: second symbol equals alpha");
            SymbolicReal sigma = detail::sqrt_symbol(alpha);
            SymbolicReal tau = detail::sqrt_symbol(tau_base);
            pres = build_t1(sigma, tau);
            gen = MonomialMatrix::diagonal(diag_entry(2, 0, 2), diag_entry(2, 1, 2));
            claimed = "diag(" + alpha.name + "^n, " + tau_base.name + "^n), n in Z";
            extra_assume.push_back(sigma.name + "^2 denotes " + alpha.name + " and " +
                                   tau.name + "^2 denotes " + tau_base.name);
            break;
        }
        case BetaCase::InvAlpha: {
            SymbolicReal sigma = detail::sqrt_symbol(alpha);
            pres = build_t3(sigma);
            gen = MonomialMatrix::diagonal(diag_entry(1, 0, 2), diag_entry(1, 0, -2));
            claimed = "diag(" + alpha.name + "^n, " + alpha.name + "^-n), n in Z";
            extra_assume.push_back(sigma.name + "^2 denotes " + alpha.name);
            break;
        }
        case BetaCase::Alpha: {
            SymbolicReal sigma = detail::sqrt_symbol(alpha);
            pres = build_t5(sigma);
            gen = MonomialMatrix::diagonal(diag_entry(1, 0, 2), diag_entry(1, 0, 2));
            claimed = "diag(" + alpha.name + "^n, " + alpha.name + "^n), n in Z";
            extra_assume.push_back(sigma.name + "^2 denotes " + alpha.name);
            break;
        }
        case BetaCase::One: {
            SymbolicReal aux("beta_aux");
            pres = build_t6(alpha, aux);
            gen = MonomialMatrix::diagonal(diag_entry(2, 0, 1),
                                           MatEntry(Rational(1), Mono(2)));
            claimed = "diag(" + alpha.name + "^n, 1), n in Z";
            extra_assume.push_back(
                "beta_aux is an auxiliary transcendental outside the algebraic closure of Q(" +
                alpha.name + ")");
            break;
        }
    }

    FGroupReport rep;
    rep.presentation_tag = pres->tag();
    rep.claimed_description = claimed;
    rep.generator = *gen;
    rep.assumptions = pres->assumptions();
    for (auto& s : extra_assume) rep.assumptions.push_back(s);
    rep.assumptions.push_back(
        "reduction step: invertible coordinates of invariance candidates are rational "
        "multiples of symbol monomials; the candidate family finitizes this");

    rep.inclusions = verify_inclusion(*pres, *gen, opt.nbound);

    bool radicals = false;
    for (const auto& c : pres->classes())
        radicals = radicals || c.coords[0].radical != 0 || c.coords[1].radical != 0;

    ClaimedGroup cg(*gen);
    CandidateFamily fam;
    fam.height = opt.height;
    fam.expo = opt.expo;
    fam.radical_parts = radicals;
    fam.shape = MonomialMatrix::Shape::Diagonal;
    rep.diagonal = refute_candidates(*pres, cg, fam, opt.budget);
    fam.shape = MonomialMatrix::Shape::Antidiagonal;
    rep.antidiagonal = refute_candidates(*pres, cg, fam, opt.budget);

    rep.consistent_with_claim =
        rep.diagonal.counterexamples.empty() && rep.antidiagonal.counterexamples.empty();
    return {std::move(*pres), std::move(rep)};
}

} // namespace diminv
