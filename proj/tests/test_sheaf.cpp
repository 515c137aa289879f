#include <gtest/gtest.h>

#include <variant>

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace realspec;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Ring Q(const char* m) { return Ring::quotient(P(m)); }
RingElem E(const Ring& r, const char* s) { return {r, P(s)}; }

const Ring B = Ring::base();

SigmaFraction frac(const Ring& r, const char* a, const char* f, unsigned m, std::vector<const char*> sos = {}) {
    std::vector<RingElem> ts;
    for (const char* t : sos) ts.push_back(E(r, t));
    return {E(r, a), SigmaDenominator(E(r, f), m, SumOfSquares(r, ts))};
}

Section worked() {
    const Ring r = Q("x^2 - x");
    return Section(E(r, "1"), {{E(r, "x"), E(r, "x")}, {E(r, "x - 1"), E(r, "0")}});
}

}  // namespace

TEST(SigmaEq, Examples) {
    EXPECT_TRUE(sigma_eq(frac(B, "x", "x", 1), frac(B, "x^3", "x", 2)));
    const Ring r = Q("x^2");
    EXPECT_FALSE(sigma_eq(frac(r, "x", "1", 0), frac(r, "0", "1", 0)));
    // D(x) is empty in Q[x]/(x^2): the localization is the zero ring
    EXPECT_TRUE(sigma_eq(frac(r, "x", "x", 1), frac(r, "0", "x", 1)));
    EXPECT_THROW(sigma_eq(frac(B, "1", "x", 1), frac(B, "1", "x + 1", 1)), std::domain_error);
}

TEST(Psi, Examples) {
    const Ring r = Q("x^2 - x");
    Section s = psi(frac(r, "x", "1", 0));
    ASSERT_EQ(s.patches().size(), 1U);
    EXPECT_EQ(s.patches()[0].g, E(r, "1"));
    EXPECT_EQ(s.patches()[0].a, E(r, "x"));

    s = psi(frac(B, "1", "x", 1));
    EXPECT_EQ(s.patches()[0].g, E(B, "x^2"));
    EXPECT_EQ(s.patches()[0].a, E(B, "1"));
    EXPECT_TRUE(section_validate(s).valid());

    s = psi(frac(B, "1", "x", 1, {"x^2"}));
    EXPECT_EQ(s.patches()[0].g, E(B, "x^2 + x^4"));
    EXPECT_EQ(v_of(Ideal(s.patches()[0].g)), v_of(Ideal(E(B, "x"))));
    EXPECT_TRUE(section_validate(s).valid());
}

TEST(Validate, Examples) {
    EXPECT_TRUE(section_validate(worked()).valid());

    const Section bad(E(B, "1"), {{E(B, "1"), E(B, "x")}, {E(B, "1"), E(B, "x + 1")}});
    const auto rep = section_validate(bad);
    EXPECT_TRUE(rep.covers);
    ASSERT_EQ(rep.incompatible.size(), 1U);
    EXPECT_EQ(rep.incompatible[0], (std::pair<std::size_t, std::size_t>{0, 1}));

    EXPECT_TRUE(section_validate(Section(E(B, "x"), {{E(B, "x^2"), E(B, "1")}})).valid());

    const Section short_cover(E(B, "x^2 - 1"), {{E(B, "x + 2"), E(B, "1")}});
    EXPECT_FALSE(section_validate(short_cover).covers);
}

TEST(NormalizeBasic, Examples) {
    auto out = normalize_basic(E(B, "x"), {{E(B, "x"), E(B, "1"), E(B, "x^2")}});
    auto* s = std::get_if<Section>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->patches()[0].g, E(B, "x^4"));
    EXPECT_EQ(s->patches()[0].a, E(B, "x^2"));
    EXPECT_TRUE(section_validate(*s).valid());

    // the single patch (x, x, x) does not cover D(1) in Q[x]/(x^2 - x); the
    // point (x) needs its own patch
    const Ring r = Q("x^2 - x");
    out = normalize_basic(E(r, "1"), {{E(r, "x"), E(r, "x"), E(r, "x")}, {E(r, "x - 1"), E(r, "0"), E(r, "x - 1")}});
    s = std::get_if<Section>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->patches()[0].g, E(r, "x"));  // x^4 = x
    EXPECT_EQ(s->patches()[0].a, E(r, "x"));  // x * x * x^2 = x
    EXPECT_TRUE(section_validate(*s).valid());
    // a/g agrees with b/f_i = x/x on D(x)
    EXPECT_TRUE(fractions_agree(s->patches()[0].a, s->patches()[0].g, E(r, "x"), E(r, "x")));

    out = normalize_basic(E(B, "x"), {{E(B, "x"), E(B, "1"), E(B, "x^2 + 1")}});
    s = std::get_if<Section>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(v_of(Ideal(s->patches()[0].g)), v_of(Ideal(E(B, "x"))));
    // b/f_i = 1/(x^2 + 1) and a/g agree on D(x)
    EXPECT_TRUE(fractions_agree(s->patches()[0].a, s->patches()[0].g, E(B, "1"), E(B, "x^2 + 1")));
}

TEST(NormalizeBasic, Preconditions) {
    try {
        normalize_basic(E(B, "x"), {{E(B, "x + 1"), E(B, "1"), E(B, "x")}});
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.violation(), Violation::NotLocallyFractional);
    }
    try {
        normalize_basic(E(B, "x"), {{E(B, "x*(x - 1)"), E(B, "1"), E(B, "x")}});
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.violation(), Violation::NotLocallyFractional);
    }
}

TEST(Equalize, Examples) {
    const Section s = worked();
    const auto e = try_equalize(s);
    ASSERT_TRUE(e.has_value());
    const auto& ps = e->section.patches();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) EXPECT_EQ(ps[i].g * ps[j].a, ps[j].g * ps[i].a);

    const Section one = psi(frac(B, "x + 1", "x", 1));
    EXPECT_EQ(try_equalize(one)->exponent, 0U);

    // cross term x^2 - x is nonzero, but x(x - 1) kills it: m = 1
    const Ring r = Q("x^2*(x - 1)");
    const Section s2(E(r, "1"), {{E(r, "x"), E(r, "x")}, {E(r, "x - 1"), E(r, "0")}});
    ASSERT_TRUE(section_validate(s2).valid());
    const auto e2 = try_equalize(s2);
    ASSERT_TRUE(e2.has_value());
    EXPECT_EQ(e2->exponent, 1U);
    const auto& q = e2->section.patches();
    EXPECT_EQ(q[0].g * q[1].a, q[1].g * q[0].a);
    EXPECT_TRUE(section_eq(s2, e2->section));

    const Section bad(E(B, "1"), {{E(B, "1"), E(B, "x")}, {E(B, "1"), E(B, "x + 1")}});
    try {
        equalize(bad);
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.violation(), Violation::NotASection);
    }
}

TEST(Glue, WorkedExample) {
    const Section s = worked();
    const GlueOutcome out = glue(s);
    const auto* g = std::get_if<Glued>(&out);
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->value.a, E(s.ring(), "x"));
    EXPECT_EQ(g->value.den.value(), E(s.ring(), "1"));
    ASSERT_EQ(g->certificate.bs.size(), 2U);
    EXPECT_EQ(g->certificate.bs[0], E(s.ring(), "1"));
    EXPECT_EQ(g->certificate.bs[1], E(s.ring(), "-1"));
    EXPECT_TRUE(g->certificate.sos.empty());
    EXPECT_FALSE(g->experimental);
    EXPECT_TRUE(verify_glued(s, *g));
}

TEST(Glue, PsiImageRoundTrip) {
    const SigmaFraction u = frac(B, "x + 3", "x", 1, {"x^2 - 1"});
    const GlueOutcome out = glue(psi(u));
    const auto* g = std::get_if<Glued>(&out);
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->value.a, u.a);
    EXPECT_EQ(g->value.den.value(), u.den.value());
    EXPECT_EQ(g->certificate.bs, (std::vector<RingElem>{E(B, "1")}));
}

TEST(Glue, RejectsNonSections) {
    const Section s(E(B, "x^2 - 1"), {{E(B, "x - 1"), E(B, "1")}, {E(B, "x + 1"), E(B, "1")}});
    try {
        glue(s);
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.violation(), Violation::NotASection);
    }
}

TEST(Glue, BaseRingTwoPatches) {
    // 1/(x-1) = (x+1)/(x^2-1) on D(x^2 - 1), given on D(x-1) and D(x+1)
    const Section s(E(B, "x^2 - 1"), {{E(B, "x^2 - 1"), E(B, "x + 1")}, {E(B, "(x - 1)^2*(x + 1)"), E(B, "x^2 - 1")}});
    ASSERT_TRUE(section_validate(s).valid());
    const GlueOutcome out = glue(s);
    const auto* g = std::get_if<Glued>(&out);
    ASSERT_NE(g, nullptr);
    EXPECT_TRUE(verify_glued(s, *g));
    EXPECT_TRUE(sigma_eq(g->value, frac(B, "(x + 1)*(x^2 - 1)", "x^2 - 1", 1)));
}

TEST(Glue, NonRealRingsAreExperimental) {
    const Ring r = Q("x^2");
    const Section s(E(r, "1"), {{E(r, "1"), E(r, "x")}});
    const GlueOutcome out = glue(s);
    const auto* g = std::get_if<Glued>(&out);
    ASSERT_NE(g, nullptr);
    EXPECT_TRUE(g->experimental);
    EXPECT_EQ(g->value.a, E(r, "x"));
    EXPECT_EQ(g->value.den.value(), E(r, "1"));
}

TEST(Glue, BlockedOutsideRealRings) {
    // overlap D(x(x-1)) is empty, but no power of x(x-1) kills the cross term
    // modulo x^2 + 1
    const Ring r = Q("x*(x - 1)*(x^2 + 1)");
    const Section s(E(r, "1"), {{E(r, "x - 1"), E(r, "x - 1")}, {E(r, "x"), E(r, "0")}});
    ASSERT_TRUE(section_validate(s).valid());
    EXPECT_TRUE(std::holds_alternative<GlueBlocked>(glue(s)));
    EXPECT_THROW(equalize(s), precondition_error);
}

TEST(Stalks, WorkedExample) {
    const Section s = worked();
    const Ring& r = s.ring();
    const SigmaFraction xbar = std::get<Glued>(glue(s)).value;

    const RealPrime p1 = RealPrime::principal(r, P("x - 1"));
    const StalkElement at1 = stalk_at(s, p1);
    EXPECT_EQ(at1.a, E(r, "x"));
    EXPECT_EQ(at1.s, E(r, "x"));
    EXPECT_TRUE(stalk_eq(at1, stalk_at(psi(xbar), p1)));
    EXPECT_TRUE(stalk_eq(at1, StalkElement{p1, E(r, "1"), E(r, "1")}));  // value 1 = x(1)

    const RealPrime p0 = RealPrime::principal(r, P("x"));
    const StalkElement at0 = stalk_at(s, p0);
    EXPECT_EQ(at0.a, E(r, "0"));
    EXPECT_EQ(at0.s, E(r, "x - 1"));
    EXPECT_TRUE(stalk_eq(at0, StalkElement{p0, E(r, "0"), E(r, "1")}));
    EXPECT_FALSE(stalk_eq(at0, StalkElement{p0, E(r, "1"), E(r, "1")}));
}

TEST(Stalks, OutOfDomain) {
    const Section s(E(B, "x"), {{E(B, "x^2"), E(B, "1")}});
    try {
        stalk_at(s, RealPrime::principal(B, P("x")));
        FAIL();
    } catch (const precondition_error& e) {
        EXPECT_EQ(e.violation(), Violation::OutOfDomain);
    }
    const StalkElement z = stalk_at(s, RealPrime::zero(B));
    EXPECT_EQ(z.s, E(B, "x^2"));
}

TEST(SectionEq, Examples) {
    const Section s = worked();
    EXPECT_TRUE(section_eq(s, psi(std::get<Glued>(glue(s)).value)));
    const Section a(E(B, "1"), {{E(B, "1"), E(B, "x")}});
    const Section b(E(B, "1"), {{E(B, "1"), E(B, "x + 1")}});
    EXPECT_FALSE(section_eq(a, b));
    EXPECT_TRUE(section_eq(a, a));
    const Section c(E(B, "x"), {{E(B, "x"), E(B, "1")}});
    EXPECT_THROW(section_eq(a, c), std::domain_error);
}

TEST(ZeroRing, EmptyOpen) {
    const Ring r = Q("x^2");
    const RingElem f = E(r, "x");
    EXPECT_TRUE(BasicOpen(f).is_empty());
    gen::Gen g(41);
    for (int i = 0; i < 20; ++i) {
        const SigmaFraction u{g.elem(r, 1), g.sigma(f)}, v{g.elem(r, 1), g.sigma(f)};
        EXPECT_TRUE(sigma_eq(u, v));
    }
    const Section s(f, {{f, E(r, "1")}});
    const GlueOutcome out = glue(s);
    const auto* glued = std::get_if<Glued>(&out);
    ASSERT_NE(glued, nullptr);
    EXPECT_TRUE(verify_glued(s, *glued));
    EXPECT_TRUE(sigma_eq(glued->value, frac(r, "0", "x", 1)));
}

// --- properties ---------------------------------------------------------------

TEST(SheafProperties, PsiIsWellDefined) {
    gen::Gen g(42);
    for (int i = 0; i < 200; ++i) {
        const Ring r = g.chance(3) ? Ring::base() : g.quotient(8);
        const RingElem f(r, g.nonzero_poly(3));
        if (f.is_zero()) continue;
        const SigmaDenominator d = g.sigma(f);
        // D(f) sits inside D(d), usually strictly
        EXPECT_TRUE(closed_subset(v_of(Ideal(d.value())), v_of(Ideal(f)))) << to_string(r) << " f=" << to_string(f);
        if (r.is_quotient())
            for (const auto& p : enumerate_primes(r))
                if (!p.contains(f)) EXPECT_FALSE(p.contains(d.value()));
    }
}

TEST(SheafProperties, InjectivityMatchesPointwise) {
    gen::Gen g(43);
    for (int i = 0; i < 200; ++i) {
        const Ring r = g.real_ring(8);
        const RingElem f(r, g.nonzero_poly(2));
        if (f.is_zero()) continue;
        const SigmaFraction u{g.elem(r, 3), g.sigma(f)};
        SigmaFraction v{g.elem(r, 3), g.sigma(f)};
        if (g.chance(2)) {
            const SigmaDenominator w = g.sigma(f);
            v = {u.a * w.value(), u.den * w};
        }
        const bool eq = sigma_eq(u, v);
        EXPECT_EQ(eq, section_eq(psi(u), psi(v)));
        bool pointwise = true;
        for (const auto& p : enumerate_primes(r))
            if (!p.contains(f)) pointwise = pointwise && oracle::vanishes_at(p.gen(), u.a * v.den.value() - v.a * u.den.value());
        EXPECT_EQ(eq, pointwise);
    }
}

TEST(SheafProperties, EqualizePreservesStalks) {
    gen::Gen g(44);
    for (int i = 0; i < 100; ++i) {
        const Ring r = g.real_ring(8);
        const RingElem f(r, g.nonzero_poly(2));
        if (f.is_zero()) continue;
        const Section s = gen::real_section(g, f);
        ASSERT_TRUE(section_validate(s).valid());
        const Section e = equalize(s);
        for (const auto& p : enumerate_primes(r)) {
            if (p.contains(f)) continue;
            EXPECT_TRUE(stalk_eq(stalk_at(s, p), stalk_at(e, p)));
        }
    }
}

TEST(SheafProperties, GlueRoundTripsInRealRings) {
    gen::Gen g(45);
    for (int i = 0; i < 100; ++i) {
        const Ring r = g.real_ring(8);
        const RingElem f(r, g.nonzero_poly(2));
        if (f.is_zero()) continue;
        const Section s = gen::real_section(g, f);
        const GlueOutcome out = glue(s);
        const auto* glued = std::get_if<Glued>(&out);
        ASSERT_NE(glued, nullptr) << to_string(r);
        EXPECT_TRUE(verify_glued(s, *glued));
        for (const auto& p : enumerate_primes(r))
            if (!p.contains(f)) EXPECT_TRUE(stalk_eq(stalk_at(s, p), stalk_at(psi(glued->value), p)));

        const SigmaFraction u{g.elem(r, 3), g.sigma(f)};
        const GlueOutcome back = glue(psi(u));
        ASSERT_TRUE(std::holds_alternative<Glued>(back));
        EXPECT_TRUE(sigma_eq(std::get<Glued>(back).value, u));
    }
}
