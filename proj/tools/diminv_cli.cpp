// Command-line front end: JSON in, JSON out, deterministic exit codes.
//
// Exit codes: 0 success / accepted; 1 malformed input; 2 mathematically
// negative result (non-member, not invariant, rejected certificate,
// counterexample); 3 hypothesis violation; 4 search or budget exhausted.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "diminv/diminv.hpp"

namespace fs = std::filesystem;
using namespace diminv;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kNegative = 2;
constexpr int kHypothesis = 3;
constexpr int kExhausted = 4;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
}

Json parse_json_arg(const std::string& text, const std::string& what) {
    if (!text.empty() && text.front() == '@') return read_json_file(text.substr(1));
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("malformed JSON for " + what + ": " + e.what());
    }
}

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents) {
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, target);
}

struct Output {
    std::optional<std::string> path;
    void emit(const Json& result, const std::string& summary) const {
        std::cout << summary << "\n";
        std::string doc = result.dump(2) + "\n";
        if (path.has_value())
            write_file_atomic(*path, doc);
        else
            std::cout << doc;
    }
};

AlgebraicNumber number_as_algebraic(const NumberValue& v, const std::string& who) {
    switch (v.kind) {
        case NumberValue::Kind::Rational: return AlgebraicNumber::from_rational(v.rational);
        case NumberValue::Kind::Algebraic: return *v.algebraic;
        default: throw HypothesisError(who + " must be rational or algebraic");
    }
}

// ---- command bodies: return the process exit code ----

int run_bezout(const Json& in, const Output& out) {
    IntPoly psi1 = intpoly_from_json(in.at("psi1"), "psi1");
    IntPoly psi2 = intpoly_from_json(in.at("psi2"), "psi2");
    BezoutResult r = bezout_integerized(psi1, psi2);
    Json doc{{"schema_version", kSchemaVersion},
             {"a_poly", intpoly_to_json(r.a_poly)},
             {"b_poly", intpoly_to_json(r.b_poly)},
             {"m", r.m.get_str()}};
    out.emit(doc, "(" + r.a_poly.to_string() + ") * (" + psi1.to_string() + ") + (" +
                      r.b_poly.to_string() + ") * (" + psi2.to_string() +
                      ") = " + r.m.get_str());
    return kOk;
}

int run_monic_lemma(const Json& in, const Output& out) {
    IntPoly psi = intpoly_from_json(in.at("psi"), "psi");
    Integer m = integer_from_json(in.at("m"), "m");
    MonicLemmaResult r = monic_lemma(psi, m);
    Json doc{{"schema_version", kSchemaVersion},
             {"phi1", laurent_to_json(r.phi1)},
             {"phi2", laurent_to_json(r.phi2)},
             {"n", r.n},
             {"steps", r.steps}};
    out.emit(doc, m.get_str() + " * (" + r.phi1.to_string() + ") + (" + psi.to_string() +
                      ") * (" + r.phi2.to_string() + ") + t^" + std::to_string(r.n) +
                      " = 1");
    return kOk;
}

int run_unit_power(const Json& in, const Output& out) {
    Integer r = integer_from_json(in.at("r"), "r");
    Integer q = integer_from_json(in.at("q"), "q");
    long long min_n = in.value("min_n", 1ll);
    UnitPowerResult res = solve_unit_power(r, q, min_n);
    Json doc{{"schema_version", kSchemaVersion}, {"s", res.s.get_str()}, {"n", res.n}};
    out.emit(doc, "(" + res.s.get_str() + ") * (" + r.get_str() + ") + (" + q.get_str() +
                      ")^" + std::to_string(res.n) + " = 1");
    return kOk;
}

int run_member(const Json& in, const Output& out) {
    Presentation p = presentation_from_json(in.at("presentation"));
    GroupElement g = element_from_json(p, in.at("element"));
    MembershipResult r = p.membership(g);
    out.emit(membership_to_json(p, r),
             r.is_member() ? "member" : ("non-member: " + r.reason));
    return r.is_member() ? kOk : kNegative;
}

int run_invariant(const Json& in, const Output& out) {
    Presentation p = presentation_from_json(in.at("presentation"));
    MonomialMatrix m = matrix_from_json(p, in.at("matrix"));
    InvarianceResult r = check_invariance(p, m);
    out.emit(invariance_to_json(p, r),
             r.invariant ? "invariant: " + m.to_string(p.symbol_names())
                         : "not invariant: " + r.reason);
    return r.invariant ? kOk : kNegative;
}

int run_density(const Json& in, const Output& out) {
    Presentation p = presentation_from_json(in.at("presentation"));
    Rational eps = rational_from_json(in.at("eps"), "eps");
    DensityWitness w = density_witness(p, eps);
    out.emit(density_to_json(p, w),
             "density witness: 2 independent members with norm < " + eps.to_string());
    return kOk;
}

int run_riesz(const Json& in, const Output& out) {
    Presentation p = presentation_from_json(in.at("presentation"));
    GroupElement g1 = element_from_json(p, in.at("g1"));
    GroupElement g2 = element_from_json(p, in.at("g2"));
    GroupElement h1 = element_from_json(p, in.at("h1"));
    GroupElement h2 = element_from_json(p, in.at("h2"));
    GroupElement z = riesz_interpolate(p, g1, g2, h1, h2);
    Json doc{{"schema_version", kSchemaVersion}, {"z", element_to_json(p, z)}};
    out.emit(doc, "interpolant found");
    return kOk;
}

struct CertifyArgs {
    std::string a_json, b_json, phi_json, p_str, q_str;
    std::string out_prefix = "certificate";
    bool assume_irreducible = false;
};

int run_certify(const CertifyArgs& args) {
    NumberValue av = number_from_json(parse_json_arg(args.a_json, "a"),
                                      args.assume_irreducible);
    AlgebraicNumber a = number_as_algebraic(av, "a");
    NumberValue bv = number_from_json(parse_json_arg(args.b_json, "b"),
                                      args.assume_irreducible);

    std::pair<Certificate, Certificate> pair = [&] {
        // Regime selection: rational b first, then monic minimal polynomial,
        // then an explicit Laurent witness.
        if (bv.kind == NumberValue::Kind::Rational ||
            (bv.kind == NumberValue::Kind::Algebraic && bv.algebraic->is_rational())) {
            Rational b = bv.kind == NumberValue::Kind::Rational
                             ? bv.rational
                             : bv.algebraic->rational_value();
            if (!args.phi_json.empty())
                std::cout << "note: b is rational, using the rational regime; phi ignored\n";
            return certify_rational_b(a, b);
        }
        if (bv.kind != NumberValue::Kind::Algebraic)
            throw HypothesisError("b must be rational or algebraic");
        const AlgebraicNumber& b = *bv.algebraic;
        if (b.minpoly().is_monic()) {
            if (!args.phi_json.empty())
                std::cout << "note: minimal polynomial of b is monic, using the monic "
                             "regime; phi ignored\n";
            return certify_monic(a, b);
        }
        if (args.phi_json.empty())
            throw HypothesisError(
                "no applicable regime: b is irrational with a non-monic minimal "
                "polynomial and no phi witness was supplied");
        LaurentPoly phi = laurent_from_json(parse_json_arg(args.phi_json, "phi"), "phi");
        Integer p, q;
        if (!args.p_str.empty() || !args.q_str.empty()) {
            if (args.p_str.empty() || args.q_str.empty())
                throw SchemaError("p and q must be given together");
            p = int_from_string(args.p_str);
            q = int_from_string(args.q_str);
        } else {
            RatPoly value = eval_mod(phi, b.minpoly());
            if (!value.is_constant())
                throw HypothesisError("phi(b) is not rational; pass p and q explicitly");
            Rational pq = value.coeff(0);
            p = pq.num();
            q = pq.den();
        }
        return certify_laurent_unit(a, b, p, q, phi);
    }();

    std::string plus_path = args.out_prefix + ".plus.json";
    std::string minus_path = args.out_prefix + ".minus.json";
    write_file_atomic(plus_path, certificate_to_json(pair.first).dump(2) + "\n");
    write_file_atomic(minus_path, certificate_to_json(pair.second).dump(2) + "\n");
    auto describe = [](const Certificate& c) {
        std::string v = c.target.kind == CertTarget::Kind::BasePower
                            ? c.target.rational_value().to_string()
                            : "b^" + std::to_string(c.target.exp);
        return "diag(1, " + v + ")";
    };
    std::cout << "regime " << pair.first.regime << ": certified " << describe(pair.first)
              << " -> " << plus_path << " and " << describe(pair.second) << " -> "
              << minus_path << "\n";
    return kOk;
}

int run_verify(const std::string& path, const Output& out) {
    Certificate c = certificate_from_json(read_json_file(path));
    VerifyResult r = verify_certificate(c);
    Json doc{{"schema_version", kSchemaVersion}, {"accepted", r.accepted}};
    if (!r.accepted) doc["reason"] = r.reason;
    out.emit(doc, r.accepted ? "accepted" : ("rejected: " + r.reason));
    return r.accepted ? kOk : kNegative;
}

struct FGroupArgs {
    std::string alpha = "alpha";
    std::string beta = "indep";
    double approx = 0.0;
    unsigned height = 10;
    unsigned expo = 6;
    long long nbound = 5;
    unsigned long long budget = 30000000ull;
};

int run_fgroup(const FGroupArgs& args, const Output& out) {
    SymbolicReal alpha = args.approx > 0.0 ? SymbolicReal(args.alpha, args.approx)
                                           : SymbolicReal(args.alpha);
    BetaCase bc;
    if (args.beta == "indep") {
        bc = BetaCase::Independent;
    } else if (args.beta == "alpha") {
        bc = BetaCase::Alpha;
    } else if (args.beta == "inv-alpha") {
        bc = BetaCase::InvAlpha;
    } else if (args.beta == "one") {
        bc = BetaCase::One;
    } else {
        throw HypothesisError("unsupported beta \"" + args.beta +
                              "\": expected indep, alpha, inv-alpha or one");
    }
    RealizeOptions opt;
    opt.height = args.height;
    opt.expo = args.expo;
    opt.nbound = args.nbound;
    opt.budget = args.budget;
    auto [p, rep] = realize_dispatch(alpha, bc, opt);

    std::string table;
    table += "presentation " + rep.presentation_tag + ", claimed " +
             rep.claimed_description + "\n";
    table += "  inclusions: " + std::to_string(rep.inclusions.size()) + " powers verified\n";
    auto side = [](const RefuteReport& r) {
        return std::to_string(r.refuted) + " refuted, " +
               std::to_string(r.skipped_claimed) + " claimed, " +
               std::to_string(r.counterexamples.size()) + " counterexamples of " +
               std::to_string(r.total);
    };
    table += "  diagonal: " + side(rep.diagonal) + "\n";
    table += "  antidiagonal: " + side(rep.antidiagonal) + "\n";
    table += "  verdict: " + rep.verdict();
    out.emit(fgroup_report_to_json(p, rep), table);
    return rep.consistent_with_claim ? kOk : kNegative;
}

int dispatch(const std::string& command, const Json& inputs, const Output& out);

int map_errors(const std::function<int()>& body) {
    try {
        return body();
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const SearchExhausted& e) {
        std::cerr << "search exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kHypothesis;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

int run_batch(const Json& manifest, const Output& out, unsigned jobs) {
    if (!manifest.is_array()) throw SchemaError("batch manifest must be a list of jobs");
    struct JobResult {
        int status;
        std::string output_path;
    };
    std::vector<Json> specs(manifest.begin(), manifest.end());
    std::vector<JobResult> results(specs.size());

    auto run_one = [&](size_t i) {
        const Json& spec = specs[i];
        return map_errors([&] {
            std::string cmd = spec.at("command").get<std::string>();
            Output job_out;
            if (spec.contains("output_path"))
                job_out.path = spec.at("output_path").get<std::string>();
            return dispatch(cmd, spec.value("inputs", Json::object()), job_out);
        });
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < specs.size(); ++i)
            results[i] = {run_one(i), specs[i].value("output_path", "")};
    } else {
        std::vector<std::future<int>> futs;
        futs.reserve(specs.size());
        for (size_t i = 0; i < specs.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_one, i));
        for (size_t i = 0; i < specs.size(); ++i)
            results[i] = {futs[i].get(), specs[i].value("output_path", "")};
    }

    Json summary;
    summary["schema_version"] = kSchemaVersion;
    Json rows = Json::array();
    bool all_ok = true;
    for (size_t i = 0; i < results.size(); ++i) {
        Json row{{"index", i},
                 {"command", specs[i].value("command", "?")},
                 {"status", results[i].status}};
        if (!results[i].output_path.empty()) row["output_path"] = results[i].output_path;
        all_ok = all_ok && results[i].status == kOk;
        rows.push_back(std::move(row));
    }
    summary["jobs"] = std::move(rows);
    summary["all_ok"] = all_ok;
    out.emit(summary, "batch: " + std::to_string(results.size()) + " job(s), " +
                          (all_ok ? "all succeeded" : "some failed"));
    return all_ok ? kOk : kNegative;
}

int dispatch(const std::string& command, const Json& inputs, const Output& out) {
    if (command == "bezout") return run_bezout(inputs, out);
    if (command == "monic-lemma") return run_monic_lemma(inputs, out);
    if (command == "unit-power") return run_unit_power(inputs, out);
    if (command == "member") return run_member(inputs, out);
    if (command == "invariant") return run_invariant(inputs, out);
    if (command == "density") return run_density(inputs, out);
    if (command == "riesz") return run_riesz(inputs, out);
    if (command == "verify") {
        if (!inputs.contains("file")) throw SchemaError("verify job needs a file field");
        return run_verify(inputs.at("file").get<std::string>(), out);
    }
    if (command == "certify") {
        CertifyArgs args;
        args.a_json = inputs.at("a").dump();
        args.b_json = inputs.at("b").dump();
        if (inputs.contains("phi")) args.phi_json = inputs.at("phi").dump();
        if (inputs.contains("p")) args.p_str = inputs.at("p").get<std::string>();
        if (inputs.contains("q")) args.q_str = inputs.at("q").get<std::string>();
        if (inputs.contains("output_prefix"))
            args.out_prefix = inputs.at("output_prefix").get<std::string>();
        return run_certify(args);
    }
    if (command == "fgroup") {
        FGroupArgs args;
        if (inputs.contains("alpha")) args.alpha = inputs.at("alpha").get<std::string>();
        if (inputs.contains("beta")) args.beta = inputs.at("beta").get<std::string>();
        if (inputs.contains("approx")) args.approx = inputs.at("approx").get<double>();
        if (inputs.contains("height")) args.height = inputs.at("height").get<unsigned>();
        if (inputs.contains("expo")) args.expo = inputs.at("expo").get<unsigned>();
        if (inputs.contains("nbound")) args.nbound = inputs.at("nbound").get<long long>();
        if (inputs.contains("budget"))
            args.budget = inputs.at("budget").get<unsigned long long>();
        return run_fgroup(args, out);
    }
    throw SchemaError("unknown command \"" + command + "\"");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariance decisions and certificates for structured subgroups of R^2"};
    app.require_subcommand(1);

    std::string input_path, output_path;
    unsigned jobs = 1;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", input_path, "JSON payload file")->required();
        cmd->add_option("--output", output_path, "result JSON file (default: stdout)");
    };

    auto* bezout = app.add_subcommand("bezout", "integer Bezout identity for two polynomials");
    add_io(bezout);
    auto* monic = app.add_subcommand("monic-lemma",
                                     "monic Laurent identity m*phi1 + psi*phi2 + t^n = 1");
    add_io(monic);
    auto* unitp = app.add_subcommand("unit-power", "solve s*r + q^N = 1 with N >= min_n");
    add_io(unitp);
    auto* member = app.add_subcommand("member", "decide membership of an element");
    add_io(member);
    auto* invariant = app.add_subcommand("invariant", "decide M*G = G for a monomial matrix");
    add_io(invariant);
    auto* density = app.add_subcommand("density", "find short independent members");
    add_io(density);
    auto* riesz = app.add_subcommand("riesz", "interpolate between member pairs");
    add_io(riesz);

    CertifyArgs cert;
    auto* certify = app.add_subcommand("certify", "construct invariance certificates");
    certify->add_option("--a", cert.a_json, "number JSON (or @file)")->required();
    certify->add_option("--b", cert.b_json, "number JSON (or @file)")->required();
    certify->add_option("--phi", cert.phi_json, "Laurent witness JSON (or @file)");
    certify->add_option("--p", cert.p_str, "numerator of phi(b)");
    certify->add_option("--q", cert.q_str, "denominator of phi(b)");
    certify->add_option("--output-prefix", cert.out_prefix,
                        "prefix for the two certificate files");
    certify->add_flag("--assume-irreducible", cert.assume_irreducible,
                      "treat supplied polynomials as minimal without screening");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "replay a certificate file");
    verify->add_option("file", verify_path, "certificate JSON file")->required();
    verify->add_option("--output", output_path, "result JSON file (default: stdout)");

    FGroupArgs fg;
    auto* fgroup = app.add_subcommand("fgroup", "realization report for a beta case");
    fgroup->add_option("--alpha", fg.alpha, "name of the transcendental symbol");
    fgroup->add_option("--beta", fg.beta, "one of: indep, alpha, inv-alpha, one")->required();
    fgroup->add_option("--approx", fg.approx, "optional numeric value of alpha");
    fgroup->add_option("--height", fg.height, "rational height bound H");
    fgroup->add_option("--expo", fg.expo, "exponent bound K");
    fgroup->add_option("--nbound", fg.nbound, "inclusion bound on |n|");
    fgroup->add_option("--budget", fg.budget, "candidate enumeration budget");
    fgroup->add_option("--output", output_path, "result JSON file (default: stdout)");

    auto* batch = app.add_subcommand("batch", "run a manifest of jobs");
    add_io(batch);
    batch->add_option("--jobs", jobs, "parallel workers");

    CLI11_PARSE(app, argc, argv);

    Output out;
    if (!output_path.empty()) out.path = output_path;

    return map_errors([&]() -> int {
        if (certify->parsed()) return run_certify(cert);
        if (verify->parsed()) return run_verify(verify_path, out);
        if (fgroup->parsed()) return run_fgroup(fg, out);
        Json in = read_json_file(input_path);
        if (bezout->parsed()) return run_bezout(in, out);
        if (monic->parsed()) return run_monic_lemma(in, out);
        if (unitp->parsed()) return run_unit_power(in, out);
        if (member->parsed()) return run_member(in, out);
        if (invariant->parsed()) return run_invariant(in, out);
        if (density->parsed()) return run_density(in, out);
        if (riesz->parsed()) return run_riesz(in, out);
        if (batch->parsed()) return run_batch(in, out, jobs);
        throw SchemaError("no subcommand selected");
    });
}
