#pragma once

// Sections of the structure sheaf over a basic open D(f), the localization
// Sigma_f^-1 A, and the maps between them.
//
// A section is stored by a finite cover D(f) = D(g_1) u ... u D(g_n) with
// local fractions a_i / g_i. Two local fractions agree on D(g_i g_j) iff
// g_i g_j lies in the real radical of Ann(a_i g_j - a_j g_i); every equality
// test in this file reduces to that criterion.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "realspec/certificate.hpp"
#include "realspec/errors.hpp"
#include "realspec/ring.hpp"
#include "realspec/spectrum.hpp"

namespace realspec {

/// a / g on D(g). A patch built from a Sigma_f fraction keeps its witness so
/// that gluing can hand the original denominator back.
struct LocalFraction {
    RingElem g;
    RingElem a;
    std::optional<SigmaDenominator> witness = std::nullopt;
};

class Section {
   public:
    Section(RingElem f, std::vector<LocalFraction> patches) : f_(std::move(f)), patches_(std::move(patches)) {
        if (patches_.empty()) throw std::domain_error("a section needs at least one patch");
        if (f_.is_zero()) throw std::domain_error("a section needs a nonzero f");
        for (const auto& p : patches_) {
            require_same_ring(f_.ring(), p.g.ring());
            require_same_ring(f_.ring(), p.a.ring());
        }
    }

    [[nodiscard]] const Ring& ring() const noexcept { return f_.ring(); }
    [[nodiscard]] const RingElem& f() const noexcept { return f_; }
    [[nodiscard]] const std::vector<LocalFraction>& patches() const noexcept { return patches_; }

   private:
    RingElem f_;
    std::vector<LocalFraction> patches_;
};

/// a / den in Sigma_f^-1 A.
struct SigmaFraction {
    RingElem a;
    SigmaDenominator den;
};

/// sum b_i g_i = f^(2k) + sum x^2 for the (equalized) patch denominators g_i.
struct GlueCertificate {
    std::vector<RingElem> bs;
    unsigned k;
    SumOfSquares sos;
};

struct StalkElement {
    RealPrime prime;
    RingElem a;
    RingElem s;
};

struct ValidationReport {
    bool covers = false;
    std::vector<std::pair<std::size_t, std::size_t>> incompatible;
    [[nodiscard]] bool valid() const { return covers && incompatible.empty(); }
};

/// a1/g1 and a2/g2 agree on D(g1 g2).
inline bool fractions_agree(const RingElem& a1, const RingElem& g1, const RingElem& a2, const RingElem& g2) {
    const RingElem cross = a1 * g2 - a2 * g1;
    return real_radical_member(annihilator(cross), g1 * g2);
}

inline ValidationReport section_validate(const Section& s) {
    ValidationReport r;
    std::vector<RingElem> gs;
    for (const auto& p : s.patches()) gs.push_back(p.g);
    r.covers = cover_check(s.f(), gs);
    const auto& ps = s.patches();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (!fractions_agree(ps[i].a, ps[i].g, ps[j].a, ps[j].g)) r.incompatible.emplace_back(i, j);
    return r;
}

/// Equality in Sigma_f^-1 A: some element of Sigma_f kills the cross
/// difference, i.e. f lies in the real radical of its annihilator.
inline bool sigma_eq(const SigmaFraction& u, const SigmaFraction& v) {
    require_same_ring(u.a.ring(), v.a.ring());
    if (!(u.den.f() == v.den.f())) throw std::domain_error("Sigma_f fractions over different f");
    const RingElem cross = u.a * v.den.value() - v.a * u.den.value();
    return real_radical_member(annihilator(cross), u.den.f());
}

/// The canonical map Sigma_f^-1 A -> O(D(f)): one patch a / den on D(den) = D(f).
inline Section psi(const SigmaFraction& u) {
    return Section(u.den.f(), {LocalFraction{u.den.value(), u.a, u.den}});
}

inline bool section_eq(const Section& s1, const Section& s2) {
    require_same_ring(s1.ring(), s2.ring());
    if (!(v_of(Ideal(s1.f())) == v_of(Ideal(s2.f())))) throw std::domain_error("sections over different opens");
    for (const auto& p : s1.patches())
        for (const auto& q : s2.patches())
            if (!fractions_agree(p.a, p.g, q.a, q.g)) return false;
    return true;
}

// --- Normalizing patches -----------------------------------------------------

/// s = b / f_i on D(h), with D(h) inside D(f_i).
struct RawPatch {
    RingElem h;
    RingElem b;
    RingElem fi;
};

struct CertificateExhausted {
    std::string detail;
};

using NormalizeOutcome = std::variant<Section, CertificateExhausted>;

/// Rewrites locally fractional data b_i / f_i on D(h_i) as a_i / g_i on
/// D(g_i) = D(h_i): from h^(2n) + S = u f_i take g = h^2 (h^(2n) + S) and
/// a = u b h^2.
inline NormalizeOutcome normalize_basic(const RingElem& f, const std::vector<RawPatch>& raw,
                                        const SearchBounds& bounds = {}) {
    bounds.validate();
    const Ring& r = f.ring();
    std::vector<RingElem> hs;
    for (const auto& p : raw) {
        require_same_ring(r, p.h.ring());
        require_same_ring(r, p.b.ring());
        require_same_ring(r, p.fi.ring());
        if (!real_radical_member(Ideal(p.fi), p.h))
            throw precondition_error(Violation::NotLocallyFractional, "D(h) is not inside D(f_i)");
        if (!real_radical_member(Ideal(f), p.h))
            throw precondition_error(Violation::NotLocallyFractional, "D(h) is not inside D(f)");
        hs.push_back(p.h);
    }
    if (raw.empty() || !cover_check(f, hs))
        throw precondition_error(Violation::NotLocallyFractional, "the D(h_i) do not cover D(f)");

    std::vector<LocalFraction> patches;
    for (const auto& p : raw) {
        const Ideal fi_ideal(p.fi);
        const CertificateOutcome out = find_certificate(fi_ideal, p.h, bounds);
        const auto* cert = std::get_if<RealRadicalCertificate>(&out);
        if (!cert) return CertificateExhausted{"no certificate for h in the real radical of (f_i)"};
        // cofactor * gen(f_i ideal) with gen = c * f_i (+ multiple of the modulus)
        std::vector<Poly> polys{p.fi.lift()};
        if (r.is_quotient()) polys.push_back(r.modulus());
        const Bezout bz = bezout_many(polys);
        const RingElem u = cert->cofactor * RingElem(r, bz.coeffs[0]);
        const RingElem h2 = p.h * p.h;
        const RingElem sigma = pow(p.h, 2 * static_cast<std::size_t>(cert->m)) + cert->sos.value();
        LocalFraction lf{h2 * sigma, u * p.b * h2};
        if (!(v_of(Ideal(lf.g)) == v_of(Ideal(p.h)))) throw std::logic_error("normalize_basic: D(g) != D(h)");
        patches.push_back(std::move(lf));
    }
    return Section(f, std::move(patches));
}

// --- Equalize and glue -----------------------------------------------------

struct Equalized {
    Section section;
    unsigned exponent;
};

namespace detail {

inline unsigned equalize_bound(const Ring& r) { return r.is_quotient() ? static_cast<unsigned>(*r.modulus().degree()) : 1U; }

}  // namespace detail

/// Least m with (g_i g_j)^m (a_i g_j - a_j g_i) = 0 for all pairs, searched
/// directly up to deg(modulus) (1 in Q[x]); then g_i -> g_i^(m+1) and
/// a_i -> g_i^m a_i. Nullopt when no such m exists within the bound, which
/// can only happen outside real rings.
inline std::optional<Equalized> try_equalize(const Section& s) {
    if (!section_validate(s).valid()) throw precondition_error(Violation::NotASection, "invalid section");
    const auto& ps = s.patches();
    const unsigned bound = detail::equalize_bound(s.ring());
    for (unsigned m = 0; m <= bound; ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < ps.size() && ok; ++i)
            for (std::size_t j = i + 1; j < ps.size() && ok; ++j) {
                const RingElem cross = ps[i].a * ps[j].g - ps[j].a * ps[i].g;
                ok = (pow(ps[i].g * ps[j].g, m) * cross).is_zero();
            }
        if (!ok) continue;
        if (m == 0) return Equalized{s, 0};
        std::vector<LocalFraction> out;
        for (const auto& p : ps) out.push_back({pow(p.g, m + 1), pow(p.g, m) * p.a});
        return Equalized{Section(s.f(), std::move(out)), m};
    }
    return std::nullopt;
}

inline Section equalize(const Section& s) {
    auto e = try_equalize(s);
    if (!e) throw precondition_error(Violation::Unsupported, "no equalizing exponent; the ring is not real");
    return std::move(e->section);
}

struct Glued {
    SigmaFraction value;
    GlueCertificate certificate;
    Section equalized;
    unsigned equalize_exponent = 0;
    bool experimental = false;  // ring is semi-real but not real
};

/// The equalize step found no exponent (outside real rings only).
struct GlueBlocked {
    std::string detail;
};

using GlueOutcome = std::variant<Glued, CertificateExhausted, GlueBlocked>;

inline bool verify_glue_certificate(const Section& equalized, const GlueCertificate& c) {
    const auto& ps = equalized.patches();
    if (c.bs.size() != ps.size()) return false;
    const Ring& r = equalized.ring();
    RingElem lhs(r, 0);
    for (std::size_t i = 0; i < ps.size(); ++i) lhs += c.bs[i] * ps[i].g;
    return (lhs - (pow(equalized.f(), 2 * static_cast<std::size_t>(c.k)) + c.sos.value())).is_zero();
}

/// g_j a = den a_j for every patch j.
inline bool closing_identities_hold(const Section& equalized, const SigmaFraction& value) {
    const RingElem den = value.den.value();
    for (const auto& p : equalized.patches())
        if (!(p.g * value.a - den * p.a).is_zero()) return false;
    return true;
}

/// Full re-check of a glue result against the section it came from.
inline bool verify_glued(const Section& s, const Glued& g) {
    return verify_glue_certificate(g.equalized, g.certificate) && closing_identities_hold(g.equalized, g.value) &&
           section_eq(psi(g.value), s);
}

/// Builds a / (f^(2k) + sum x^2) in Sigma_f^-1 A restricting to s: equalize,
/// find b_i with sum b_i g_i = f^(2k) + sum x^2, and take a = sum a_i b_i.
inline GlueOutcome glue(const Section& s, const SearchBounds& bounds = {}) {
    bounds.validate();
    const Ring& r = s.ring();
    const bool experimental = !r.is_real();
    auto eq = try_equalize(s);
    if (!eq) return GlueBlocked{"no m with (g_i g_j)^m (a_i g_j - a_j g_i) = 0 within deg(modulus)"};
    const Section& e = eq->section;
    const auto& ps = e.patches();

    // A patch that came from Sigma_f already is a global element.
    if (eq->exponent == 0) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (!ps[j].witness || !(ps[j].witness->f() == s.f())) continue;
            std::vector<RingElem> bs(ps.size(), RingElem(r, 0));
            bs[j] = RingElem(r, 1);
            Glued out{SigmaFraction{ps[j].a, *ps[j].witness},
                      GlueCertificate{std::move(bs), ps[j].witness->m(), ps[j].witness->tail()}, e, 0, experimental};
            return out;
        }
    }

    std::vector<Poly> polys;
    for (const auto& p : ps) polys.push_back(p.g.lift());
    if (r.is_quotient()) polys.push_back(r.modulus());
    const Bezout bz = bezout_many(polys);
    const CertificateOutcome cert_out = find_certificate(Ideal(r, bz.g), s.f(), bounds);
    if (std::holds_alternative<NotMember>(cert_out)) throw std::logic_error("glue: cover lost after equalize");
    const auto* cert = std::get_if<RealRadicalCertificate>(&cert_out);
    if (!cert) return CertificateExhausted{"no certificate for f in the real radical of (g_1, ..., g_n)"};

    std::vector<RingElem> bs;
    RingElem a(r, 0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        bs.push_back(cert->cofactor * RingElem(r, bz.coeffs[i]));
        a += ps[i].a * bs.back();
    }
    Glued out{SigmaFraction{a, SigmaDenominator(s.f(), cert->m, cert->sos)},
              GlueCertificate{std::move(bs), cert->m, cert->sos}, e, eq->exponent, experimental};
    if (!verify_glue_certificate(out.equalized, out.certificate) || !closing_identities_hold(out.equalized, out.value))
        throw std::logic_error("glue: constructed identities do not hold");
    return out;
}

// --- Stalks ----------------------------------------------------------------

/// The germ of s at p, as a / g for the first patch with g outside p.
inline StalkElement stalk_at(const Section& s, const RealPrime& p) {
    require_same_ring(s.ring(), p.ring());
    if (p.contains(s.f())) throw precondition_error(Violation::OutOfDomain, "the prime is not in D(f)");
    for (const auto& patch : s.patches())
        if (!p.contains(patch.g)) return {p, patch.a, patch.g};
    throw precondition_error(Violation::NotASection, "no patch contains the prime");
}

/// a/s = a'/s' in A_p iff some h outside p kills a s' - a' s, i.e. the real
/// radical of the annihilator is not inside p.
inline bool stalk_eq(const StalkElement& x, const StalkElement& y) {
    if (!(x.prime == y.prime)) throw std::domain_error("germs at different primes");
    const RingElem cross = x.a * y.s - y.a * x.s;
    const Ideal rad = real_radical(annihilator(cross));
    return !x.prime.contains(RingElem(x.prime.ring(), rad.gen()));
}

}  // namespace realspec
