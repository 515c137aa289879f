#pragma once

// The realspec command line. run_command() is the whole program; tools/
// only forwards argv to it, and tests call it directly.
//
// Exit codes: 0 ok, 1 certificate file did not verify, 2 parse or usage
// error, 3 precondition violation, 4 certificate search exhausted or glue
// blocked (the decision, when there is one, is still printed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "realspec/certificate.hpp"
#include "realspec/errors.hpp"
#include "realspec/explore.hpp"
#include "realspec/factor.hpp"
#include "realspec/parse.hpp"
#include "realspec/serialize.hpp"
#include "realspec/sheaf.hpp"
#include "realspec/spectrum.hpp"
#include "realspec/sturm.hpp"

namespace realspec {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid = 1;
inline constexpr int usage = 2;
inline constexpr int precondition = 3;
inline constexpr int exhausted = 4;
}  // namespace exit_code

namespace detail {

struct CliState {
    std::string ring_text = "Q[x]";
    bool json = false;
    std::uint64_t seed = 1;
    unsigned m_max = SearchBounds{}.m_max;
    std::optional<unsigned> sos_degree;
    unsigned coeff_bound = SearchBounds{}.coeff_bound;

    std::vector<std::string> polys;
    std::string f = "1";
    std::string f2;
    std::vector<std::string> patches;
    std::vector<std::string> patches2;
    std::string prime;
    std::string ideal;
    std::string member;
    std::string file = "-";
    std::string lo;
    std::string hi;

    std::string u = "0", u_m = "0", v = "0", v_m = "0";
    std::vector<std::string> u_sos, v_sos;

    unsigned rings = 50;
    unsigned trials = 4;
    unsigned min_degree = 2;
    unsigned max_degree = 6;

    [[nodiscard]] SearchBounds bounds() const {
        SearchBounds b;
        b.m_max = m_max;
        b.sos_degree = sos_degree;
        b.coeff_bound = coeff_bound;
        return b;
    }
};

class Context {
   public:
    Context(const CliState& st, std::ostream& out) : st_(st), out_(out), ring_(parse_ring(st.ring_text)) {}

    const CliState& st() const { return st_; }
    const Ring& ring() const { return ring_; }
    std::ostream& out() { return out_; }

    static Poly poly(const std::string& text, const std::string& what) {
        try {
            return parse_poly(text);
        } catch (const parse_error& e) {
            throw std::invalid_argument("parse error in " + what + " '" + text + "': " + e.what());
        }
    }
    RingElem elem(const std::string& text, const std::string& what) const { return {ring_, poly(text, what)}; }

    std::vector<RingElem> elems(const std::vector<std::string>& texts) const {
        std::vector<RingElem> out;
        for (const auto& t : texts) out.push_back(elem(t, "operand"));
        return out;
    }

    Section section(const std::string& f, const std::vector<std::string>& patch_texts) const {
        if (patch_texts.empty()) throw std::invalid_argument("a section needs at least one --patch g:a");
        std::vector<LocalFraction> ps;
        for (const auto& p : patch_texts) {
            const auto colon = p.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("patch '" + p + "' is not of the form g:a");
            ps.push_back({elem(p.substr(0, colon), "patch"), elem(p.substr(colon + 1), "patch")});
        }
        return {elem(f, "--f"), std::move(ps)};
    }

    void emit(const nlohmann::json& j) { out_ << j.dump(2) << '\n'; }

   private:
    const CliState& st_;
    std::ostream& out_;
    Ring ring_;
};

inline std::string closed_text(const ClosedSet& v) {
    std::string s = "V(" + to_string(v.gen()) + ")";
    if (v.is_empty()) return s + " (empty)";
    if (v.is_whole()) return s + " (whole)";
    return s;
}

inline nlohmann::json closed_json(const ClosedSet& v) {
    return {{"gen", to_string(v.gen())}, {"empty", v.is_empty()}, {"whole", v.is_whole()}};
}

inline std::string join(const std::vector<RingElem>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
    return s + "]";
}

// --- command bodies --------------------------------------------------------

inline int cmd_factor(Context& c) {
    if (c.st().polys.size() != 1) throw std::invalid_argument("factor takes one polynomial");
    const Factorization fz = factor(Context::poly(c.st().polys[0], "operand"));
    std::string text = fz.unit == 1 && !fz.factors.empty() ? "" : to_string(fz.unit);
    if (fz.unit == -1 && !fz.factors.empty()) text = "-";
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : fz.factors) {
        if (!text.empty() && text != "-") text += "*";
        text += "(" + to_string(f.poly) + ")";
        if (f.mult > 1) text += "^" + std::to_string(f.mult);
        fs.push_back({{"poly", to_string(f.poly)}, {"mult", f.mult}});
    }
    if (c.st().json)
        c.emit({{"unit", to_string(fz.unit)}, {"factors", fs}});
    else
        c.out() << text << '\n';
    return exit_code::ok;
}

inline int cmd_real_part(Context& c) {
    if (c.st().polys.size() != 1) throw std::invalid_argument("real-part takes one polynomial");
    const Poly r = real_part(Context::poly(c.st().polys[0], "operand"));
    if (c.st().json)
        c.emit({{"real_part", to_string(r)}});
    else
        c.out() << to_string(r) << '\n';
    return exit_code::ok;
}

inline int cmd_real_radical(Context& c) {
    if (c.st().polys.size() != 1) throw std::invalid_argument("real-radical takes one ideal generator");
    const Ideal I(c.ring(), Context::poly(c.st().polys[0], "operand"));
    const Ideal R = real_radical(I);
    nlohmann::json j{{"ring", to_string(c.ring())}, {"ideal", to_string(I.gen())}, {"real_radical", to_string(R.gen())}};
    std::string text = to_string(R.gen());
    if (!c.st().member.empty()) {
        const bool in = real_radical_member(I, c.elem(c.st().member, "--member"));
        j["member"] = in;
        text += std::string("\nmember=") + (in ? "true" : "false");
    }
    if (c.st().json)
        c.emit(j);
    else
        c.out() << text << '\n';
    return exit_code::ok;
}

inline int cmd_sturm(Context& c) {
    if (c.st().polys.size() != 1) throw std::invalid_argument("sturm takes one polynomial");
    const Poly p = Context::poly(c.st().polys[0], "operand");
    std::size_t n = 0;
    if (c.st().lo.empty() != c.st().hi.empty()) throw std::invalid_argument("--lo and --hi go together");
    if (!c.st().lo.empty()) {
        const Poly lo = Context::poly(c.st().lo, "--lo");
        const Poly hi = Context::poly(c.st().hi, "--hi");
        if (!lo.is_constant() || !hi.is_constant()) throw std::invalid_argument("--lo/--hi must be rational numbers");
        n = count_real_roots_in(p, lo.coeff(0), hi.coeff(0));
    } else {
        n = count_real_roots(p);
    }
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& q : sturm_chain(squarefree_part(p))) chain.push_back(to_string(q));
    if (c.st().json)
        c.emit({{"poly", to_string(p)}, {"real_roots", n}, {"chain", chain}});
    else
        c.out() << n << '\n';
    return exit_code::ok;
}

inline int cmd_classify(Context& c) {
    const auto cl = classify(c.ring());
    if (c.st().json)
        c.emit({{"ring", to_string(c.ring())}, {"real", cl.is_real}, {"semireal", cl.is_semireal}});
    else
        c.out() << "real=" << (cl.is_real ? "true" : "false") << " semireal=" << (cl.is_semireal ? "true" : "false")
                << '\n';
    return exit_code::ok;
}

inline int cmd_primes(Context& c) {
    const auto ps = enumerate_primes(c.ring());
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : ps) j.push_back(to_string(p.gen()));
    if (c.st().json) {
        c.emit({{"ring", to_string(c.ring())}, {"primes", j}});
    } else {
        for (const auto& p : ps) c.out() << '(' << to_string(p.gen()) << ")\n";
        if (ps.empty()) c.out() << "none\n";
    }
    return exit_code::ok;
}

inline int cmd_vset(Context& c, const std::string& op) {
    std::vector<ClosedSet> sets;
    for (const auto& e : c.elems(c.st().polys)) sets.push_back(v_of(Ideal(e)));
    if (sets.empty()) throw std::invalid_argument("vset needs at least one operand");
    if (op == "subset") {
        if (sets.size() != 2) throw std::invalid_argument("vset subset takes two operands");
        const bool sub = closed_subset(sets[0], sets[1]);
        if (c.st().json)
            c.emit({{"subset", sub}});
        else
            c.out() << (sub ? "true" : "false") << '\n';
        return exit_code::ok;
    }
    ClosedSet v = sets[0];
    if (op == "union")
        for (std::size_t i = 1; i < sets.size(); ++i) v = closed_union(v, sets[i]);
    else
        v = closed_intersect(sets);
    if (c.st().json)
        c.emit(closed_json(v));
    else
        c.out() << closed_text(v) << '\n';
    return exit_code::ok;
}

inline int cmd_cover(Context& c) {
    const bool ok = cover_check(c.elem(c.st().f, "--f"), c.elems(c.st().polys));
    if (c.st().json)
        c.emit({{"cover", ok}});
    else
        c.out() << (ok ? "true" : "false") << '\n';
    return exit_code::ok;
}

inline int cmd_subcover(Context& c) {
    const Subcover sc = finite_subcover(c.elem(c.st().f, "--f"), c.elems(c.st().polys), c.st().bounds());
    const auto* cert = std::get_if<SubcoverCertificate>(&sc.outcome);
    if (c.st().json) {
        if (cert)
            c.emit(to_json(*cert, sc.indices));
        else
            c.emit({{"indices", sc.indices}, {"certificate", nullptr}});
    } else {
        c.out() << "indices:";
        for (auto i : sc.indices) c.out() << ' ' << i;
        c.out() << '\n';
        if (cert)
            c.out() << "coeffs " << join(cert->coeffs) << ", m = " << cert->m << ", sos " << join(cert->sos.terms())
                    << '\n';
        else
            c.out() << "certificate search exhausted\n";
    }
    return cert ? exit_code::ok : exit_code::exhausted;
}

inline int cmd_cert_find(Context& c) {
    if (c.st().polys.size() != 1) throw std::invalid_argument("cert find takes one element");
    if (c.st().ideal.empty()) throw std::invalid_argument("cert find needs --ideal");
    const Ideal I(c.ring(), Context::poly(c.st().ideal, "--ideal"));
    const CertificateOutcome out = find_certificate(I, c.elem(c.st().polys[0], "operand"), c.st().bounds());
    if (const auto* cert = std::get_if<RealRadicalCertificate>(&out)) {
        if (c.st().json)
            c.emit(to_json(*cert));
        else
            c.out() << "found: m = " << cert->m << ", sos " << join(cert->sos.terms()) << ", cofactor "
                    << to_string(cert->cofactor) << '\n';
        return exit_code::ok;
    }
    const bool member = std::holds_alternative<MemberNoCertificate>(out);
    if (c.st().json)
        c.emit({{"member", member}, {"certificate", nullptr}});
    else
        c.out() << (member ? "member; certificate search exhausted" : "not a member") << '\n';
    return member ? exit_code::exhausted : exit_code::ok;
}

inline int cmd_cert_verify(Context& c, std::istream& in) {
    std::string text;
    if (c.st().file == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream f(c.st().file);
        if (!f) throw std::invalid_argument("cannot open '" + c.st().file + "'");
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    const bool ok = verify_certificate_json(nlohmann::json::parse(text));
    if (c.st().json)
        c.emit({{"valid", ok}});
    else
        c.out() << (ok ? "valid" : "invalid") << '\n';
    return ok ? exit_code::ok : exit_code::invalid;
}

inline int cmd_section(Context& c, const std::string& op) {
    const Section s = c.section(c.st().f, c.st().patches);
    if (op == "validate") {
        const auto rep = section_validate(s);
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [i, j] : rep.incompatible) pairs.push_back({i, j});
        if (c.st().json) {
            c.emit({{"valid", rep.valid()}, {"covers", rep.covers}, {"incompatible", pairs}});
        } else if (rep.valid()) {
            c.out() << "valid\n";
        } else {
            c.out() << "invalid:";
            if (!rep.covers) c.out() << " patches do not cover D(f);";
            for (auto [i, j] : rep.incompatible) c.out() << " pair (" << i << ", " << j << ") disagrees;";
            c.out() << '\n';
        }
        return exit_code::ok;
    }
    if (op == "glue") {
        const GlueOutcome out = glue(s, c.st().bounds());
        if (const auto* g = std::get_if<Glued>(&out)) {
            if (c.st().json) {
                auto j = to_json(*g);
                j["denominator"] = to_string(g->value.den.value());
                j["experimental"] = g->experimental;
                c.emit(j);
            } else {
                c.out() << to_string(g->value.a) << " / " << to_string(g->value.den.value()) << '\n';
                c.out() << "certificate: b = " << join(g->certificate.bs) << ", k = " << g->certificate.k << ", sos "
                        << join(g->certificate.sos.terms()) << '\n';
                if (g->experimental) c.out() << "note: ring is not real; experimental mode\n";
            }
            return exit_code::ok;
        }
        const bool blocked = std::holds_alternative<GlueBlocked>(out);
        const std::string what = blocked ? "structurally-blocked" : "certificate-exhausted";
        if (c.st().json)
            c.emit({{"outcome", what}});
        else
            c.out() << what << '\n';
        return exit_code::exhausted;
    }
    if (op == "eq") {
        if (c.st().patches2.empty()) throw std::invalid_argument("section eq needs --patch2");
        const Section s2 = c.section(c.st().f2.empty() ? c.st().f : c.st().f2, c.st().patches2);
        const bool eq = section_eq(s, s2);
        if (c.st().json)
            c.emit({{"equal", eq}});
        else
            c.out() << (eq ? "true" : "false") << '\n';
        return exit_code::ok;
    }
    // stalk
    if (c.st().prime.empty()) throw std::invalid_argument("section stalk needs --prime");
    const Poly pg = Context::poly(c.st().prime, "--prime");
    const RealPrime p = pg.is_zero() ? RealPrime::zero(c.ring()) : RealPrime::principal(c.ring(), pg);
    const StalkElement germ = stalk_at(s, p);
    if (c.st().json)
        c.emit({{"prime", to_string(p.gen())}, {"a", to_string(germ.a)}, {"s", to_string(germ.s)}});
    else
        c.out() << to_string(germ.a) << " / " << to_string(germ.s) << '\n';
    return exit_code::ok;
}

inline int cmd_sigma_eq(Context& c) {
    const RingElem f = c.elem(c.st().f, "--f");
    auto fraction = [&](const std::string& a, const std::string& m, const std::vector<std::string>& sos) {
        const Poly mp = Context::poly(m, "exponent");
        if (!mp.is_constant() || mp.coeff(0) < 0 || mp.coeff(0).get_den() != 1 || !mp.coeff(0).get_num().fits_uint_p())
            throw std::invalid_argument("exponent '" + m + "' must be a nonnegative integer");
        const auto e = static_cast<unsigned>(mp.coeff(0).get_num().get_ui());
        return SigmaFraction{c.elem(a, "numerator"), SigmaDenominator(f, e, SumOfSquares(c.ring(), c.elems(sos)))};
    };
    const bool eq = sigma_eq(fraction(c.st().u, c.st().u_m, c.st().u_sos), fraction(c.st().v, c.st().v_m, c.st().v_sos));
    if (c.st().json)
        c.emit({{"equal", eq}});
    else
        c.out() << (eq ? "true" : "false") << '\n';
    return exit_code::ok;
}

inline int cmd_explore(Context& c) {
    ExploreConfig cfg;
    cfg.rings = c.st().rings;
    cfg.trials = c.st().trials;
    cfg.min_degree = c.st().min_degree;
    cfg.max_degree = c.st().max_degree;
    cfg.seed = c.st().seed;
    cfg.bounds = c.st().bounds();
    const ExplorationReport rep = explore_question(cfg);
    if (c.st().json)
        c.emit(to_json(rep));
    else
        c.out() << to_text(rep);
    return exit_code::ok;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                       std::istream& in = std::cin) {
    detail::CliState st;
    CLI::App app{"Real Zariski spectra of Q[x] and its quotients", "realspec"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--ring", st.ring_text, "Q[x] or Q[x]/(<monic poly>)");
    app.add_flag("--json", st.json, "one JSON document on stdout");
    app.add_option("--seed", st.seed, "seed for randomized commands");
    app.add_option("--m-max", st.m_max, "largest exponent m tried in certificates");
    app.add_option("--sos-degree", st.sos_degree, "degree cap for square terms");
    app.add_option("--coeff-bound", st.coeff_bound, "height bound for grid coefficients");

    auto positional = [&](CLI::App* sub, const char* what) { sub->add_option("polys", st.polys, what); };

    auto* factor_cmd = app.add_subcommand("factor", "factor a polynomial over Q");
    positional(factor_cmd, "polynomial");
    auto* real_part_cmd = app.add_subcommand("real-part", "product of the real-rooted irreducible factors");
    positional(real_part_cmd, "polynomial");
    auto* radical_cmd = app.add_subcommand("real-radical", "generator of the real radical of (g)");
    positional(radical_cmd, "ideal generator");
    radical_cmd->add_option("--member", st.member, "also test membership of this element");
    auto* sturm_cmd = app.add_subcommand("sturm", "number of distinct real roots");
    positional(sturm_cmd, "polynomial");
    sturm_cmd->add_option("--lo", st.lo, "count roots in (lo, hi] only");
    sturm_cmd->add_option("--hi", st.hi, "count roots in (lo, hi] only");
    auto* classify_cmd = app.add_subcommand("classify", "is the ring real / semi-real");
    auto* primes_cmd = app.add_subcommand("primes", "real primes of a quotient ring");

    auto* vset_cmd = app.add_subcommand("vset", "closed-set algebra on V(g)");
    vset_cmd->require_subcommand(1);
    for (const char* op : {"union", "intersect", "subset"}) positional(vset_cmd->add_subcommand(op), "generators");

    auto* cover_cmd = app.add_subcommand("cover", "do the D(g_i) cover D(f)");
    cover_cmd->add_option("--f", st.f, "f of D(f)");
    positional(cover_cmd, "generators g_i");
    auto* subcover_cmd = app.add_subcommand("subcover", "finite subcover with a certificate");
    subcover_cmd->add_option("--f", st.f, "f of D(f)");
    positional(subcover_cmd, "generators g_i");

    auto* cert_cmd = app.add_subcommand("cert", "real radical certificates");
    cert_cmd->require_subcommand(1);
    auto* cert_find = cert_cmd->add_subcommand("find", "certificate for a in the real radical of (g)");
    cert_find->add_option("--ideal", st.ideal, "ideal generator g")->required();
    positional(cert_find, "element a");
    auto* cert_verify = cert_cmd->add_subcommand("verify", "re-check a JSON certificate");
    cert_verify->add_option("file", st.file, "file, or - for stdin");

    auto* section_cmd = app.add_subcommand("section", "sections over D(f)");
    section_cmd->require_subcommand(1);
    for (const char* op : {"validate", "glue", "eq", "stalk"}) {
        auto* sub = section_cmd->add_subcommand(op);
        sub->add_option("--f", st.f, "f of D(f)");
        sub->add_option("--patch", st.patches, "local fraction g:a")->take_all();
        if (std::string(op) == "eq") {
            sub->add_option("--f2", st.f2, "f of the second section (default --f)");
            sub->add_option("--patch2", st.patches2, "local fraction of the second section")->take_all();
        }
        if (std::string(op) == "stalk") sub->add_option("--prime", st.prime, "prime generator (0 for the zero ideal)");
    }

    auto* sigma_cmd = app.add_subcommand("sigma-eq", "equality in the localization at Sigma_f");
    sigma_cmd->add_option("--f", st.f, "f");
    sigma_cmd->add_option("--u", st.u, "numerator of u");
    sigma_cmd->add_option("--u-m", st.u_m, "u's denominator is f^(2m) + sum of squares");
    sigma_cmd->add_option("--u-sos", st.u_sos, "square terms of u's denominator")->take_all();
    sigma_cmd->add_option("--v", st.v, "numerator of v");
    sigma_cmd->add_option("--v-m", st.v_m, "v's denominator exponent");
    sigma_cmd->add_option("--v-sos", st.v_sos, "square terms of v's denominator")->take_all();

    auto* explore_cmd = app.add_subcommand("explore-question", "probe semi-real non-real rings (experimental)");
    explore_cmd->add_option("--rings", st.rings, "number of sampled rings");
    explore_cmd->add_option("--trials", st.trials, "sections per ring");
    explore_cmd->add_option("--min-degree", st.min_degree, "smallest modulus degree");
    explore_cmd->add_option("--max-degree", st.max_degree, "largest modulus degree");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        detail::Context c(st, out);
        auto leaf = [](CLI::App* group) { return group->get_subcommands().front()->get_name(); };
        if (factor_cmd->parsed()) return detail::cmd_factor(c);
        if (real_part_cmd->parsed()) return detail::cmd_real_part(c);
        if (radical_cmd->parsed()) return detail::cmd_real_radical(c);
        if (sturm_cmd->parsed()) return detail::cmd_sturm(c);
        if (classify_cmd->parsed()) return detail::cmd_classify(c);
        if (primes_cmd->parsed()) return detail::cmd_primes(c);
        if (vset_cmd->parsed()) return detail::cmd_vset(c, leaf(vset_cmd));
        if (cover_cmd->parsed()) return detail::cmd_cover(c);
        if (subcover_cmd->parsed()) return detail::cmd_subcover(c);
        if (cert_find->parsed()) return detail::cmd_cert_find(c);
        if (cert_verify->parsed()) return detail::cmd_cert_verify(c, in);
        if (section_cmd->parsed()) return detail::cmd_section(c, leaf(section_cmd));
        if (sigma_cmd->parsed()) return detail::cmd_sigma_eq(c);
        if (explore_cmd->parsed()) return detail::cmd_explore(c);
        err << "no command\n";
        return exit_code::usage;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return exit_code::precondition;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const nlohmann::json::exception& e) {
        err << "bad certificate document: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
}

}  // namespace realspec
