#pragma once

// The real Zariski topology on the real primes of Q[x] or Q[x]/(m).
//
// A closed set V(I) is stored by the generator of the real radical of I:
// 0 for the whole space of Q[x], 1 for the empty set, otherwise a monic
// squarefree product of real-rooted irreducibles (dividing real_part(m) in a
// quotient ring). Set equality is generator equality.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "realspec/certificate.hpp"
#include "realspec/errors.hpp"
#include "realspec/ring.hpp"

namespace realspec {

class RealPrime {
   public:
    enum class Kind { Zero, Principal };

    /// The zero ideal of Q[x].
    static RealPrime zero(const Ring& r) {
        if (r.is_quotient()) throw std::domain_error("(0) is not prime in a quotient of Q[x]");
        return RealPrime(r, Kind::Zero, Poly{});
    }

    static RealPrime principal(const Ring& r, const Poly& gen) {
        Poly g = gen.monic();
        if (g.is_constant()) throw std::domain_error("a prime generator must be nonconstant");
        if (factor(g).factors.size() != 1 || factor(g).factors[0].mult != 1)
            throw std::domain_error("a prime generator must be irreducible");
        if (count_real_roots(g) == 0) throw std::domain_error("a real prime generator needs a real root");
        if (r.is_quotient() && !divides(g, r.modulus()))
            throw std::domain_error("the prime does not contain the modulus");
        return RealPrime(r, Kind::Principal, std::move(g));
    }

    [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const Poly& gen() const noexcept { return gen_; }

    [[nodiscard]] bool contains(const RingElem& e) const {
        require_same_ring(ring_, e.ring());
        if (kind_ == Kind::Zero) return e.is_zero();
        return divides(gen_, e.lift());
    }

    friend bool operator==(const RealPrime& a, const RealPrime& b) {
        return a.ring_ == b.ring_ && a.kind_ == b.kind_ && a.gen_ == b.gen_;
    }

   private:
    RealPrime(Ring r, Kind k, Poly g) : ring_(std::move(r)), kind_(k), gen_(std::move(g)) {}

    Ring ring_;
    Kind kind_;
    Poly gen_;
};

class ClosedSet {
   public:
    static ClosedSet whole(const Ring& r) { return {r, r.is_quotient() ? real_part(r.modulus()) : Poly{}}; }
    static ClosedSet empty(const Ring& r) { return {r, Poly(1)}; }

    [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
    [[nodiscard]] const Poly& gen() const noexcept { return gen_; }
    [[nodiscard]] bool is_empty() const { return gen_.is_one(); }
    [[nodiscard]] bool is_whole() const { return *this == whole(ring_); }

    friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.ring_ == b.ring_ && a.gen_ == b.gen_; }

   private:
    friend ClosedSet v_of(const Ideal& I);
    friend ClosedSet closed_from_generator(const Ring& r, const Poly& g);
    ClosedSet(Ring r, Poly g) : ring_(std::move(r)), gen_(std::move(g)) {}

    Ring ring_;
    Poly gen_;
};

/// V(I): the real primes containing I.
inline ClosedSet v_of(const Ideal& I) { return {I.ring(), real_radical(I).gen()}; }

/// V((g)) for a polynomial g read in ring r.
inline ClosedSet closed_from_generator(const Ring& r, const Poly& g) { return v_of(Ideal(r, g)); }

inline void require_same_ring(const ClosedSet& a, const ClosedSet& b) { require_same_ring(a.ring(), b.ring()); }

/// V(IJ) = V(I) u V(J)
inline ClosedSet closed_union(const ClosedSet& a, const ClosedSet& b) {
    require_same_ring(a, b);
    return closed_from_generator(a.ring(), a.gen() * b.gen());
}

/// V(sum I_i) = intersection of the V(I_i)
inline ClosedSet closed_intersect(const std::vector<ClosedSet>& sets) {
    if (sets.empty()) throw std::domain_error("closed_intersect needs at least one set");
    Poly g = sets.front().gen();
    for (std::size_t i = 1; i < sets.size(); ++i) {
        require_same_ring(sets.front(), sets[i]);
        if (sets[i].gen().is_zero()) continue;
        g = g.is_zero() ? sets[i].gen() : gcd(g, sets[i].gen());
    }
    return closed_from_generator(sets.front().ring(), g);
}

/// V1 is contained in V2 iff the real radical of V1's ideal contains that of
/// V2, i.e. gen(V1) divides gen(V2).
inline bool closed_subset(const ClosedSet& a, const ClosedSet& b) {
    require_same_ring(a, b);
    return divides(a.gen(), b.gen());
}

inline bool prime_in(const RealPrime& p, const ClosedSet& v) {
    require_same_ring(p.ring(), v.ring());
    if (p.kind() == RealPrime::Kind::Zero) return v.gen().is_zero();
    return divides(p.gen(), v.gen());
}

/// D(f), the complement of V((f)).
class BasicOpen {
   public:
    explicit BasicOpen(RingElem f) : f_(std::move(f)) {}
    [[nodiscard]] const RingElem& f() const noexcept { return f_; }
    [[nodiscard]] const Ring& ring() const noexcept { return f_.ring(); }
    [[nodiscard]] ClosedSet complement() const { return v_of(Ideal(f_)); }
    [[nodiscard]] bool contains(const RealPrime& p) const { return !prime_in(p, complement()); }
    [[nodiscard]] bool is_empty() const { return complement().is_whole(); }

   private:
    RingElem f_;
};

/// The complement of a closed set is a single basic open: D(gen).
inline BasicOpen open_complement(const ClosedSet& v) { return BasicOpen(RingElem(v.ring(), v.gen())); }

/// The finitely many real primes of Q[x]/(m), in canonical factor order.
inline std::vector<RealPrime> enumerate_primes(const Ring& r) {
    if (!r.is_quotient()) throw precondition_error(Violation::Unsupported, "the spectrum of Q[x] is infinite");
    std::vector<RealPrime> out;
    for (const auto& f : factor(r.modulus()).factors)
        if (count_real_roots(f.poly) > 0) out.push_back(RealPrime::principal(r, f.poly));
    return out;
}

namespace detail {

inline Poly lifted_gcd(const Ring& r, const std::vector<RingElem>& fs) {
    Poly g = r.is_quotient() ? r.modulus() : Poly{};
    for (const auto& f : fs) {
        require_same_ring(r, f.ring());
        if (f.is_zero()) continue;
        g = g.is_zero() ? f.lift().monic() : gcd(g, f.lift());
    }
    return g;
}

}  // namespace detail

/// D(f) is covered by the D(f_i) iff V(sum (f_i)) is inside V((f)).
inline bool cover_check(const RingElem& f, const std::vector<RingElem>& fs) {
    if (f.is_zero()) throw std::domain_error("cover_check needs a nonzero f");
    const Ring& r = f.ring();
    return closed_subset(closed_from_generator(r, detail::lifted_gcd(r, fs)), v_of(Ideal(f)));
}

/// sum a_j f_(i_j) = f^(2m) + sum x^2, proving D(f) is inside the union of the
/// chosen D(f_(i_j)).
struct SubcoverCertificate {
    RingElem f;
    std::vector<RingElem> generators;  // the chosen f_(i_j)
    std::vector<RingElem> coeffs;      // a_j
    unsigned m;
    SumOfSquares sos;
};

struct SubcoverNoCertificate {};

using SubcoverOutcome = std::variant<SubcoverCertificate, SubcoverNoCertificate>;

struct Subcover {
    std::vector<std::size_t> indices;
    SubcoverOutcome outcome;
};

inline bool verify_subcover(const SubcoverCertificate& c) {
    if (c.generators.size() != c.coeffs.size() || c.m == 0) return false;
    const Ring& r = c.f.ring();
    RingElem lhs(r, 0);
    for (std::size_t j = 0; j < c.generators.size(); ++j) lhs += c.coeffs[j] * c.generators[j];
    RingElem rhs = pow(c.f, 2 * static_cast<std::size_t>(c.m)) + c.sos.value();
    return (lhs - rhs).is_zero();
}

/// Finite subcover of D(f) with a certificate. Indices are dropped greedily,
/// last index first, whenever the remaining generators cut out the same
/// closed set as the full list.
inline Subcover finite_subcover(const RingElem& f, const std::vector<RingElem>& fs, const SearchBounds& bounds = {}) {
    bounds.validate();
    if (!cover_check(f, fs)) throw precondition_error(Violation::NotACover, "the given opens do not cover D(f)");
    const Ring& r = f.ring();
    auto closed_of = [&](const std::vector<std::size_t>& idx) {
        std::vector<RingElem> sub;
        for (std::size_t i : idx) sub.push_back(fs[i]);
        return closed_from_generator(r, detail::lifted_gcd(r, sub));
    };
    std::vector<std::size_t> keep(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) keep[i] = i;
    const ClosedSet target = closed_of(keep);
    for (std::size_t i = fs.size(); i-- > 0;) {
        std::vector<std::size_t> trial;
        for (std::size_t k : keep)
            if (k != i) trial.push_back(k);
        if (closed_of(trial) == target) keep = std::move(trial);
    }

    // Bezout on the chosen generators (plus the modulus), then a certificate
    // for f in the real radical of their gcd; multiply through.
    std::vector<Poly> polys;
    for (std::size_t i : keep) polys.push_back(fs[i].lift());
    if (r.is_quotient()) polys.push_back(r.modulus());
    if (std::all_of(polys.begin(), polys.end(), [](const Poly& p) { return p.is_zero(); }))
        return {keep, SubcoverNoCertificate{}};
    const Bezout bz = bezout_many(polys);
    const CertificateOutcome cert = find_certificate(Ideal(r, bz.g), f, bounds);
    const auto* found = std::get_if<RealRadicalCertificate>(&cert);
    if (!found) return {keep, SubcoverNoCertificate{}};
    // f^(2m) + S = u * gen(I) where gen(I) = gcd(bz.g, m) = bz.g here.
    SubcoverCertificate out{f, {}, {}, found->m, found->sos};
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.generators.push_back(fs[keep[j]]);
        out.coeffs.push_back(found->cofactor * RingElem(r, bz.coeffs[j]));
    }
    if (!verify_subcover(out)) return {keep, SubcoverNoCertificate{}};
    return {keep, std::move(out)};
}

}  // namespace realspec
