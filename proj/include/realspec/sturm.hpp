#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "realspec/factor.hpp"
#include "realspec/poly.hpp"

namespace realspec {

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k). Members are
/// scaled by positive constants (|lc| normalised to 1), which leaves every
/// sign pattern unchanged.
inline std::vector<Poly> sturm_chain(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
    auto normalise = [](const Poly& q) { return q * (1 / abs(q.lc())); };
    std::vector<Poly> chain{normalise(p)};
    Poly d = derivative(p);
    if (d.is_zero()) return chain;
    chain.push_back(normalise(d));
    while (true) {
        Poly r = -(chain[chain.size() - 2] % chain.back());
        if (r.is_zero()) break;
        chain.push_back(normalise(r));
    }
    return chain;
}

namespace detail {

inline std::size_t sign_variations(const std::vector<int>& signs) {
    std::size_t v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline int sign_at_pos_inf(const Poly& q) { return sgn(q.lc()); }
inline int sign_at_neg_inf(const Poly& q) { return (*q.degree() % 2 == 0) ? sgn(q.lc()) : -sgn(q.lc()); }

}  // namespace detail

/// Number of distinct real roots, by Sturm's theorem on the squarefree part
/// over the whole real line. Signs at +-infinity come from the leading terms.
inline std::size_t count_real_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
    const std::vector<Poly> chain = sturm_chain(squarefree_part(p));
    std::vector<int> lo, hi;
    for (const auto& q : chain) {
        lo.push_back(detail::sign_at_neg_inf(q));
        hi.push_back(detail::sign_at_pos_inf(q));
    }
    return detail::sign_variations(lo) - detail::sign_variations(hi);
}

/// Distinct real roots in the half-open interval (a, b].
inline std::size_t count_real_roots_in(const Poly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
    if (!(a < b)) throw std::domain_error("empty interval");
    const std::vector<Poly> chain = sturm_chain(squarefree_part(p));
    std::vector<int> lo, hi;
    for (const auto& q : chain) {
        lo.push_back(sgn(q(a)));
        hi.push_back(sgn(q(b)));
    }
    return detail::sign_variations(lo) - detail::sign_variations(hi);
}

/// Monic product of the distinct irreducible factors of p that have a real
/// root; 1 when there are none. Generates the real radical of (p) in Q[x].
inline Poly real_part(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("real part of the zero polynomial");
    Poly s = squarefree_part(p);
    if (s.is_constant()) return 1;
    const std::size_t roots = count_real_roots(s);
    if (roots == 0) return 1;
    if (*s.degree() == 1 || roots == *s.degree()) return s;
    Poly acc = 1;
    for (const auto& f : factor(s).factors)
        if (count_real_roots(f.poly) > 0) acc *= f.poly;
    return acc;
}

}  // namespace realspec
