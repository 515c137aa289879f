#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "realspec/rational.hpp"

namespace realspec {

/// Degree of a polynomial. std::nullopt is the -infinity degree of the zero
/// polynomial; std::optional ordering puts it below every finite degree.
using Degree = std::optional<std::size_t>;

/// Dense univariate polynomial over Q. Coefficient i multiplies x^i; there is
/// never a trailing zero, so the zero polynomial has no coefficients.
class Poly {
   public:
    Poly() = default;
    Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(const Rational& c) {            // NOLINT(google-explicit-constructor)
        if (c != 0) c_.push_back(c);
    }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return monomial(1, 1); }
    static Poly monomial(const Rational& c, std::size_t k) {
        if (c == 0) return {};
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] Degree degree() const noexcept {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    [[nodiscard]] bool is_constant() const noexcept { return c_.size() <= 1; }
    [[nodiscard]] bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return c_; }
    [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    [[nodiscard]] const Rational& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    [[nodiscard]] Poly monic() const {
        if (c_.empty()) return {};
        Poly r = *this;
        const Rational l = c_.back();
        for (auto& c : r.c_) c /= l;
        return r;
    }

    [[nodiscard]] Rational operator()(const Rational& at) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Total order used for canonical output: degree first, then coefficients
/// compared from the leading term down to the constant term.
inline bool canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (std::size_t i = ca.size(); i-- > 0;) {
        if (ca[i] != cb[i]) return ca[i] < cb[i];
    }
    return false;
}

struct DivRem {
    Poly quot;
    Poly rem;
};

inline DivRem divrem(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("polynomial division by zero");
    const std::size_t dq = *q.degree();
    if (p.degree() < q.degree()) return {Poly{}, p};
    std::vector<Rational> r = p.coeffs();
    std::vector<Rational> quot(r.size() - dq);
    const Rational inv = 1 / q.lc();
    const auto& qc = q.coeffs();
    for (std::size_t k = r.size(); k-- > dq;) {
        if (r[k] == 0) continue;
        Rational t = r[k] * inv;
        quot[k - dq] = t;
        for (std::size_t j = 0; j <= dq; ++j) r[k - dq + j] -= t * qc[j];
    }
    r.resize(dq);
    return {Poly(std::move(quot)), Poly(std::move(r))};
}

inline Poly operator%(const Poly& p, const Poly& q) { return divrem(p, q).rem; }

/// Exact quotient; throws when q does not divide p.
inline Poly exact_div(const Poly& p, const Poly& q) {
    auto [quot, rem] = divrem(p, q);
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return quot;
}

/// True iff d divides p in Q[x]. Zero divides only zero.
inline bool divides(const Poly& d, const Poly& p) {
    if (d.is_zero()) return p.is_zero();
    return (p % d).is_zero();
}

inline Poly derivative(const Poly& p) {
    if (p.is_constant()) return {};
    std::vector<Rational> r(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) r[i - 1] = p.coeffs()[i] * static_cast<unsigned long>(i);
    return Poly(std::move(r));
}

inline Poly pow(Poly base, std::size_t e) {
    Poly acc = 1;
    while (e > 0) {
        if (e & 1U) acc *= base;
        e >>= 1U;
        if (e > 0) base *= base;
    }
    return acc;
}

/// Monic gcd; gcd(p, 0) = monic(p). Both zero is a domain error.
inline Poly gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Poly r = (a % b).monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return exact_div(a * b, gcd(a, b)).monic();
}

struct ExtGcd {
    Poly g;
    Poly s;
    Poly t;
};

/// s*a + t*b = g with g monic. Not both zero.
inline ExtGcd ext_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    if (b.is_zero()) {
        const Rational l = a.lc();
        return {a.monic(), Poly(1 / l), Poly{}};
    }
    if (!a.is_zero() && divides(a, b)) {
        const Rational l = a.lc();
        return {a.monic(), Poly(1 / l), Poly{}};
    }
    Poly r0 = a, r1 = b;
    Poly s0 = 1, s1 = 0;
    Poly t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Rational inv = 1 / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

struct Bezout {
    Poly g;
    std::vector<Poly> coeffs;
};

/// Monic gcd of all inputs together with cofactors c_i, sum c_i f_i = g.
inline Bezout bezout_many(const std::vector<Poly>& fs) {
    if (fs.empty()) throw std::domain_error("bezout_many needs at least one polynomial");
    if (std::all_of(fs.begin(), fs.end(), [](const Poly& p) { return p.is_zero(); }))
        throw std::domain_error("bezout_many of all-zero input");
    Bezout out;
    out.coeffs.assign(fs.size(), Poly{});
    std::size_t start = 0;
    while (fs[start].is_zero()) ++start;
    out.g = fs[start].monic();
    out.coeffs[start] = Poly(1 / fs[start].lc());
    for (std::size_t i = start + 1; i < fs.size(); ++i) {
        if (fs[i].is_zero() || divides(out.g, fs[i])) continue;
        ExtGcd e = ext_gcd(out.g, fs[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (!out.coeffs[j].is_zero()) out.coeffs[j] = out.coeffs[j] * e.s;
        out.coeffs[i] = e.t;
        out.g = e.g;
    }
    return out;
}

/// Monic product of the distinct irreducible factors: monic(p / gcd(p, p')).
inline Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
    if (p.is_constant()) return 1;
    return exact_div(p, gcd(p, derivative(p))).monic();
}

/// Yun's algorithm: monic p = prod parts[i]^(i+1), each part squarefree and
/// pairwise coprime (parts may be 1).
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree decomposition of the zero polynomial");
    std::vector<Poly> parts;
    Poly f = p.monic();
    if (f.is_constant()) return parts;
    Poly fp = derivative(f);
    Poly a = gcd(f, fp);
    Poly b = exact_div(f, a);
    Poly c = exact_div(fp, a);
    Poly d = c - derivative(b);
    while (!b.is_constant()) {
        Poly g = gcd(b, d);
        parts.push_back(g);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - derivative(b);
    }
    return parts;
}

}  // namespace realspec
