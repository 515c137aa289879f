#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

#include "realspec/factor.hpp"
#include "realspec/poly.hpp"
#include "realspec/sturm.hpp"

namespace realspec {

enum class RingKind { Base, Quotient };

struct Classification {
    bool is_real = false;
    bool is_semireal = false;
};

/// Q[x] or Q[x]/(m) for a monic nonconstant m. Cheap to copy; the modulus and
/// its classification are shared.
class Ring {
   public:
    static Ring base() { return Ring(std::make_shared<const Data>(Data{RingKind::Base, Poly{}, {true, true}})); }

    static Ring quotient(const Poly& modulus) {
        if (modulus.is_zero() || modulus.is_constant())
            throw std::domain_error("quotient modulus must be nonconstant");
        if (modulus.lc() != 1) throw std::domain_error("quotient modulus must be monic");
        return Ring(std::make_shared<const Data>(Data{RingKind::Quotient, modulus, classify_modulus(modulus)}));
    }

    [[nodiscard]] RingKind kind() const noexcept { return d_->kind; }
    [[nodiscard]] bool is_quotient() const noexcept { return d_->kind == RingKind::Quotient; }
    /// Zero polynomial for the base ring.
    [[nodiscard]] const Poly& modulus() const noexcept { return d_->modulus; }
    [[nodiscard]] Classification classification() const noexcept { return d_->cls; }
    [[nodiscard]] bool is_real() const noexcept { return d_->cls.is_real; }
    [[nodiscard]] bool is_semireal() const noexcept { return d_->cls.is_semireal; }

    /// Canonical representative of a polynomial in this ring.
    [[nodiscard]] Poly reduce(const Poly& p) const { return is_quotient() ? p % d_->modulus : p; }

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.d_ == b.d_ || (a.d_->kind == b.d_->kind && a.d_->modulus == b.d_->modulus);
    }

   private:
    struct Data {
        RingKind kind;
        Poly modulus;
        Classification cls;
    };

    // Q[x]/(m) is real iff m is squarefree with only real-rooted irreducible
    // factors; semi-real iff some irreducible factor has a real root.
    static Classification classify_modulus(const Poly& m) {
        const Poly rp = real_part(m);
        const bool semireal = !rp.is_constant();
        const bool real = rp == m.monic();
        return {real, semireal};
    }

    explicit Ring(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

inline Ring make_ring(RingKind kind, const std::optional<Poly>& modulus = std::nullopt) {
    if (kind == RingKind::Base) {
        if (modulus) throw std::domain_error("the base ring takes no modulus");
        return Ring::base();
    }
    if (!modulus) throw std::domain_error("a quotient ring needs a modulus");
    return Ring::quotient(*modulus);
}

inline Classification classify(const Ring& r) { return r.classification(); }

inline void require_same_ring(const Ring& a, const Ring& b) {
    if (!(a == b)) throw std::domain_error("operands belong to different rings");
}

/// Element of a ring, held by its canonical representative (reduced modulo the
/// modulus in a quotient ring).
class RingElem {
   public:
    RingElem(Ring ring, const Poly& p) : ring_(std::move(ring)), rep_(ring_.reduce(p)) {}

    [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
    [[nodiscard]] const Poly& rep() const noexcept { return rep_; }
    /// Same as rep(); named for the places that treat it as a polynomial in Q[x].
    [[nodiscard]] const Poly& lift() const noexcept { return rep_; }
    [[nodiscard]] bool is_zero() const noexcept { return rep_.is_zero(); }

    RingElem operator-() const { return {ring_, -rep_}; }
    friend RingElem operator+(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return {a.ring_, a.rep_ + b.rep_};
    }
    friend RingElem operator-(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return {a.ring_, a.rep_ - b.rep_};
    }
    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return {a.ring_, a.rep_ * b.rep_};
    }
    RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

    friend bool operator==(const RingElem& a, const RingElem& b) { return a.ring_ == b.ring_ && a.rep_ == b.rep_; }

   private:
    Ring ring_;
    Poly rep_;
};

inline RingElem pow(const RingElem& base, std::size_t e) {
    RingElem acc(base.ring(), 1);
    RingElem b = base;
    while (e > 0) {
        if (e & 1U) acc *= b;
        e >>= 1U;
        if (e > 0) b *= b;
    }
    return acc;
}

/// Principal ideal with canonical generator: 0 or monic; in a quotient ring a
/// monic divisor of the modulus (the zero ideal is generated by the modulus).
class Ideal {
   public:
    Ideal(Ring ring, const Poly& generator) : ring_(std::move(ring)), gen_(canonical(ring_, generator)) {}
    explicit Ideal(const RingElem& e) : Ideal(e.ring(), e.lift()) {}

    static Ideal zero(const Ring& r) { return {r, Poly{}}; }
    static Ideal unit(const Ring& r) { return {r, Poly(1)}; }

    [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
    [[nodiscard]] const Poly& gen() const noexcept { return gen_; }
    [[nodiscard]] bool is_unit() const { return gen_.is_one(); }
    [[nodiscard]] bool is_zero_ideal() const {
        return ring_.is_quotient() ? gen_ == ring_.modulus() : gen_.is_zero();
    }

    /// In a quotient ring the generator divides the modulus, so divisibility
    /// does not depend on the representative chosen for p.
    [[nodiscard]] bool contains(const Poly& p) const { return divides(gen_, p); }
    [[nodiscard]] bool contains(const RingElem& e) const {
        require_same_ring(ring_, e.ring());
        return contains(e.lift());
    }

    friend bool operator==(const Ideal& a, const Ideal& b) { return a.ring_ == b.ring_ && a.gen_ == b.gen_; }

   private:
    static Poly canonical(const Ring& r, const Poly& g) {
        if (r.is_quotient()) return gcd(g, r.modulus());
        return g.monic();
    }

    Ring ring_;
    Poly gen_;
};

/// I + J, generated by the gcd of the generators.
inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring(), b.ring());
    if (a.gen().is_zero()) return b;
    if (b.gen().is_zero()) return a;
    return {a.ring(), gcd(a.gen(), b.gen())};
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring(), b.ring());
    return {a.ring(), a.gen() * b.gen()};
}

/// Ann(z). In Q[x]: (0) for z != 0 and (1) for z = 0. In Q[x]/(m): generated
/// by m / gcd(m, lift z).
inline Ideal annihilator(const RingElem& z) {
    const Ring& A = z.ring();
    if (!A.is_quotient()) return z.is_zero() ? Ideal::unit(A) : Ideal::zero(A);
    const Poly& m = A.modulus();
    return {A, exact_div(m, gcd(m, z.lift()))};
}

/// Smallest real ideal containing I: the real part of the (pulled back)
/// generator, or (1) when no real prime contains I.
inline Ideal real_radical(const Ideal& I) {
    const Ring& A = I.ring();
    if (I.gen().is_zero()) return I;  // (0) in Q[x] is already real
    return {A, real_part(I.gen())};
}

inline bool real_radical_member(const Ideal& I, const RingElem& a) {
    require_same_ring(I.ring(), a.ring());
    return real_radical(I).contains(a);
}

}  // namespace realspec
