// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "realspec/cli.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace realspec;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) first = what;
    }
};

// Closed set as explicit prime factors; nullopt also contains the zero prime.
using PointSet = std::optional<std::set<std::string>>;

PointSet points(const Poly& gen) {
    const auto fs = oracle::real_prime_factors(gen);
    if (!fs) return std::nullopt;
    std::set<std::string> out;
    for (const auto& f : *fs) out.insert(to_string(f));
    return out;
}

PointSet point_union(const PointSet& a, const PointSet& b) {
    if (!a || !b) return std::nullopt;
    std::set<std::string> out = *a;
    out.insert(b->begin(), b->end());
    return out;
}

PointSet point_intersect(const PointSet& a, const PointSet& b) {
    if (!a) return b;
    if (!b) return a;
    std::set<std::string> out;
    for (const auto& s : *a)
        if (b->count(s)) out.insert(s);
    return out;
}

bool point_subset(const PointSet& a, const PointSet& b) {
    if (!b) return true;
    if (!a) return false;
    for (const auto& s : *a)
        if (!b->count(s)) return false;
    return true;
}

bool ac1() {
    Check c;
    gen::Gen g(1001);
    const Ring B = Ring::base();
    for (int i = 0; i < 1000; ++i) {
        Poly pi = g.poly(6), pj = g.poly(6);
        if (g.chance(3)) pi = pi * g.real_piece();
        if (g.chance(3)) pj = pj * g.nonreal_piece();
        if (pi.degree() && *pi.degree() > 12) pi = g.poly(12);
        if (pj.degree() && *pj.degree() > 12) pj = g.poly(12);
        const Ideal I(B, pi), J(B, pj);
        const ClosedSet vi = v_of(I), vj = v_of(J);
        const PointSet si = points(I.gen()), sj = points(J.gen());
        const std::string tag = to_string(pi) + " ; " + to_string(pj);
        c.expect(points(v_of(ideal_product(I, J)).gen()) == point_union(si, sj), "product " + tag);
        c.expect(points(closed_union(vi, vj).gen()) == point_union(si, sj), "union " + tag);
        c.expect(points(v_of(ideal_sum(I, J)).gen()) == point_intersect(si, sj), "sum " + tag);
        c.expect(points(closed_intersect({vi, vj}).gen()) == point_intersect(si, sj), "intersect " + tag);
        c.expect(closed_subset(vi, vj) == point_subset(si, sj), "subset " + tag);
    }
    for (int i = 0; i < 200; ++i) {
        const Ring r = g.quotient(10);
        const auto primes = enumerate_primes(r);
        const auto expected = oracle::real_prime_factors(r.modulus());
        c.expect(primes.size() == expected->size(), "prime count " + to_string(r));
        const Ideal I(r, g.poly(6)), J(r, g.poly(6));
        const ClosedSet vi = v_of(I), vj = v_of(J);
        const ClosedSet vp = v_of(ideal_product(I, J)), vs = v_of(ideal_sum(I, J));
        bool sub = true;
        for (const auto& p : primes) {
            // p is in V(I) iff it divides gcd(I, m)
            const bool in_i = divides(p.gen(), I.gen()), in_j = divides(p.gen(), J.gen());
            c.expect(prime_in(p, vi) == in_i, "V(I) " + to_string(r));
            c.expect(prime_in(p, vp) == (in_i || in_j), "V(IJ) " + to_string(r));
            c.expect(prime_in(p, closed_union(vi, vj)) == (in_i || in_j), "union " + to_string(r));
            c.expect(prime_in(p, vs) == (in_i && in_j), "V(I+J) " + to_string(r));
            c.expect(prime_in(p, closed_intersect({vi, vj})) == (in_i && in_j), "intersect " + to_string(r));
            sub = sub && (!in_i || in_j);
        }
        c.expect(closed_subset(vi, vj) == sub, "subset " + to_string(r));
    }
    if (c.failures) std::printf("  first failure: %s\n", c.first.c_str());
    return c.failures == 0;
}

bool ac2() {
    Check c;
    gen::Gen g(1002);
    std::size_t empty = 0;
    for (int i = 0; i < 200; ++i) {
        const Ring r = g.quotient(10);
        const Ideal I(r, g.chance(6) ? Poly{} : g.poly(6));
        const Poly expected = oracle::intersection_of_primes_containing(r.modulus(), I.gen());
        const Ideal rad = real_radical(I);
        c.expect(rad.gen() == expected, to_string(r) + " " + to_string(I.gen()));
        if (expected.is_one()) {
            ++empty;
            c.expect(rad.is_unit(), "unit " + to_string(r));
        }
    }
    // rings whose spectrum is empty by construction
    for (const char* m : {"x^2 + 1", "(x^2 + 2)^2", "x^4 + 1", "(x^2 + x + 1)*(x^2 + 3)"}) {
        const Ring r = Ring::quotient(parse_poly(m));
        c.expect(real_radical(Ideal::zero(r)).is_unit(), m);
        ++empty;
    }
    c.expect(empty > 4, "no empty cases drawn");
    if (c.failures) std::printf("  first failure: %s\n", c.first.c_str());
    return c.failures == 0;
}

bool ac3() {
    Check c;
    gen::Gen g(1003);
    const Ring B = Ring::base();
    std::size_t covers = 0, certified = 0;
    while (covers < 500) {
        Poly fp(1);
        for (long k = g.range(1, 3); k > 0; --k) fp = fp * (g.chance(3) ? g.nonreal_piece() : g.real_piece());
        if (g.chance(2)) fp = fp * Poly(g.rational(4, 1) + 5);
        // a common factor drawn from f, times coprime-ish cofactors
        Poly common(1);
        for (const auto& fa : factor(fp).factors)
            if (g.chance(2)) common = common * fa.poly;
        std::vector<RingElem> fs;
        for (long k = g.range(1, 5); k > 0; --k) {
            Poly h = g.nonzero_poly(2, 4);
            if (g.chance(4)) h = h * g.nonreal_piece();
            fs.emplace_back(B, common * h);
        }
        const RingElem f(B, fp);
        // oracle: V(gcd fs) must sit inside V(f)
        Poly gg;
        for (const auto& e : fs) gg = gcd(gg, e.lift());
        const bool oracle_cover = point_subset(points(gg), points(fp));
        const bool cover = cover_check(f, fs);
        c.expect(cover == oracle_cover, "cover_check " + to_string(fp));
        if (!cover) continue;
        ++covers;
        const Subcover sc = finite_subcover(f, fs);
        std::vector<RingElem> kept;
        for (auto k : sc.indices) kept.push_back(fs[k]);
        c.expect(!kept.empty() && cover_check(f, kept), "subcover covers " + to_string(fp));
        if (const auto* cert = std::get_if<SubcoverCertificate>(&sc.outcome)) {
            ++certified;
            c.expect(verify_subcover(*cert), "certificate " + to_string(fp));
        }
    }
    const double rate = static_cast<double>(certified) / static_cast<double>(covers);
    std::printf("  covers=%zu certified=%zu rate=%.3f\n", covers, certified, rate);
    c.expect(rate >= 0.90, "certificate rate below 0.90");
    if (c.failures) std::printf("  first failure: %s\n", c.first.c_str());
    return c.failures == 0;
}

// u and v agree at every prime of D(f) of a real ring.
bool pointwise_equal(const SigmaFraction& u, const SigmaFraction& v) {
    const RingElem cross = u.a * v.den.value() - v.a * u.den.value();
    for (const auto& p : enumerate_primes(u.a.ring()))
        if (!p.contains(u.den.f()) && !oracle::vanishes_at(p.gen(), cross)) return false;
    return true;
}

bool ac4() {
    Check c;
    gen::Gen g(1004);
    std::size_t pairs = 0, sections = 0, fractions = 0;
    for (int ring = 0; ring < 200; ++ring) {
        const Ring r = g.real_ring(8);
        std::vector<RingElem> fs;
        for (int k = 0; k < 3; ++k) {
            const RingElem f = g.elem(r, 4);
            if (!f.is_zero()) fs.push_back(f);
        }
        for (const auto& f : fs) {
            const std::string tag = to_string(r) + " f=" + to_string(f.rep());
            for (int k = 0; k < 1 && pairs < 500; ++k, ++pairs) {
                const SigmaFraction u{g.elem(r, 4), g.sigma(f)};
                // v equal to u half the time
                SigmaFraction v{u.a * g.sigma(f).value(), u.den};
                if (g.chance(2)) {
                    const SigmaDenominator extra = g.sigma(f);
                    v = SigmaFraction{u.a * extra.value(), u.den * extra};
                } else {
                    v = SigmaFraction{g.elem(r, 4), g.sigma(f)};
                }
                const bool eq = sigma_eq(u, v);
                c.expect(eq == pointwise_equal(u, v), "sigma_eq " + tag);
                c.expect(eq == section_eq(psi(u), psi(v)), "psi injective " + tag);
            }
            if (sections < 500) {
                ++sections;
                const Section s = gen::real_section(g, f);
                c.expect(section_validate(s).valid(), "generated section " + tag);
                const GlueOutcome out = glue(s);
                const auto* gl = std::get_if<Glued>(&out);
                c.expect(gl != nullptr, "glue " + tag);
                if (gl) {
                    c.expect(section_eq(psi(gl->value), s), "psi(glue(s)) " + tag);
                    c.expect(verify_glued(s, *gl), "verify " + tag);
                    const Section back = psi(gl->value);
                    for (const auto& p : enumerate_primes(r))
                        if (!p.contains(f)) c.expect(stalk_eq(stalk_at(back, p), stalk_at(s, p)), "stalk " + tag);
                }
            }
            if (fractions < 500) {
                ++fractions;
                const SigmaFraction u{g.elem(r, 4), g.sigma(f)};
                const GlueOutcome out = glue(psi(u));
                const auto* gl = std::get_if<Glued>(&out);
                c.expect(gl != nullptr && sigma_eq(gl->value, u), "glue(psi(u)) " + tag);
            }
        }
    }
    // top up to the stated counts with fresh rings
    while (pairs < 500 || sections < 500 || fractions < 500) {
        const Ring r = g.real_ring(8);
        const RingElem f = g.elem(r, 4);
        if (f.is_zero()) continue;
        if (pairs < 500) {
            ++pairs;
            const SigmaFraction u{g.elem(r, 4), g.sigma(f)}, v{g.elem(r, 4), g.sigma(f)};
            c.expect(sigma_eq(u, v) == pointwise_equal(u, v), "sigma_eq top-up");
            c.expect(sigma_eq(u, v) == section_eq(psi(u), psi(v)), "psi top-up");
        }
        if (sections < 500) {
            ++sections;
            const Section s = gen::real_section(g, f);
            const GlueOutcome out = glue(s);
            const auto* gl = std::get_if<Glued>(&out);
            c.expect(gl != nullptr && section_eq(psi(gl->value), s), "glue top-up");
        }
        if (fractions < 500) {
            ++fractions;
            const SigmaFraction u{g.elem(r, 4), g.sigma(f)};
            const GlueOutcome out = glue(psi(u));
            const auto* gl = std::get_if<Glued>(&out);
            c.expect(gl != nullptr && sigma_eq(gl->value, u), "glue(psi) top-up");
        }
    }
    std::printf("  pairs=%zu sections=%zu fractions=%zu checks=%zu\n", pairs, sections, fractions, c.cases);
    if (c.failures) std::printf("  first failure: %s\n", c.first.c_str());
    return c.failures == 0;
}

bool ac5() {
    const Ring r = Ring::quotient(parse_poly("x^2 - x"));
    const RingElem x(r, parse_poly("x")), one(r, Poly(1));
    const Section s(one, {{x, x}, {x - one, RingElem(r, Poly{})}});
    const GlueOutcome out = glue(s);
    const auto* gl = std::get_if<Glued>(&out);
    if (!gl) return false;
    const auto& bs = gl->certificate.bs;
    return gl->value.a == x && gl->value.den.value() == one && bs.size() == 2 && bs[0] == one && bs[1] == -one &&
           verify_glued(s, *gl);
}

bool ac6() {
    const Ring r = Ring::quotient(parse_poly("x^2 + 1"));
    bool ok = enumerate_primes(r).empty();
    const CertificateOutcome out = find_certificate(Ideal::zero(r), RingElem(r, Poly(1)));
    const auto* cert = std::get_if<RealRadicalCertificate>(&out);
    ok = ok && cert && verify_certificate(*cert) && (pow(cert->a, 2 * cert->m) + cert->sos.value()).is_zero();

    // ... so every fraction over Sigma_1 is zero
    gen::Gen g(1006);
    const RingElem one(r, Poly(1));
    for (int i = 0; i < 50 && ok; ++i)
        ok = sigma_eq(SigmaFraction{g.elem(r, 3), g.sigma(one)}, SigmaFraction{RingElem(r, Poly{}), SigmaDenominator(one, 0)});

    const Ring n = Ring::quotient(parse_poly("x^2"));
    const RingElem x(n, parse_poly("x"));
    ok = ok && BasicOpen(x).is_empty();
    // every fraction over Sigma_x is zero: the localization is the zero ring
    for (int i = 0; i < 50 && ok; ++i) {
        const SigmaFraction u{g.elem(n, 3), g.sigma(x)};
        ok = sigma_eq(u, SigmaFraction{RingElem(n, Poly{}), SigmaDenominator(x, 0)});
    }
    return ok;
}

bool ac7() {
    Check c;
    gen::Gen g(1007);
    for (int i = 0; i < 1000; ++i) {
        const Poly p = g.squarefree(10);
        c.expect(count_real_roots(p) == oracle::count_real_roots(p), "total " + to_string(p));
        Rational a = g.rational(4, 3), b = g.rational(4, 3);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        // (a, b]: open-interval roots plus a root at b
        const std::size_t expected =
            oracle::roots_in_unit_interval(oracle::compose_linear(p, a, b - a)) + (p(b) == 0 ? 1 : 0);
        c.expect(count_real_roots_in(p, a, b) == expected, "interval " + to_string(p));
    }
    if (c.failures) std::printf("  first failure: %s\n", c.first.c_str());
    return c.failures == 0;
}

std::string cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::istringstream in;
    run_command(args, out, err, in);
    return out.str();
}

bool ac8() {
    ExploreConfig cfg;
    cfg.rings = 50;
    cfg.seed = 20261016;
    const ExplorationReport a = explore_question(cfg), b = explore_question(cfg);
    const RingTally t = a.totals();
    std::printf("  rings=%zu glued=%u exhausted=%u blocked=%u errors=%u\n", a.rings.size(), t.glued, t.exhausted,
                t.blocked, t.errors);
    bool ok = a.rings.size() >= 50 && to_text(a) == to_text(b) && to_json(a).dump() == to_json(b).dump();
    ok = ok && t.errors == 0 && a.errors.empty() && t.reverify_failures == 0;
    ok = ok && to_text(a).find("counterexample") == std::string::npos;
    const std::vector<std::string> args{"--seed", "20261016", "explore-question", "--rings", "50"};
    std::vector<std::string> json_args = args;
    json_args.insert(json_args.begin(), "--json");
    ok = ok && cli(args) == cli(args) && cli(args) == to_text(a) && cli(json_args) == cli(json_args);
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_seconds;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC1", 60, ac1}, {"AC2", 30, ac2}, {"AC3", 60, ac3}, {"AC4", 120, ac4},
        {"AC5", 5, ac5},  {"AC6", 5, ac6},  {"AC7", 30, ac7}, {"AC8", 60, ac8},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %s (%.2fs, limit %.0fs)%s%s\n", c.name, pass ? "PASS" : "FAIL", secs, c.limit_seconds,
                    in_time ? "" : " over time", error.empty() ? "" : (" error: " + error).c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
