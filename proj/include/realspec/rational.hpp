#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace realspec {

/// Exact rational number. GMP keeps numerator and denominator coprime with a
/// positive denominator, and zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Exact square root of a rational square, if any.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const Integer& n = q.get_num();
    const Integer& d = q.get_den();
    if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
    Rational r(isqrt(n), isqrt(d));
    r.canonicalize();
    return r;
}

namespace detail {

inline std::optional<std::pair<Integer, Integer>> two_squares(const Integer& n, std::uint64_t& budget) {
    if (n < 0) return std::nullopt;
    Integer c = isqrt(n);
    for (; 2 * c * c >= n; --c) {
        if (budget == 0) return std::nullopt;
        --budget;
        Integer rest = n - c * c;
        if (is_perfect_square(rest)) return std::make_pair(c, isqrt(rest));
        if (c == 0) break;
    }
    return std::nullopt;
}

}  // namespace detail

/// Lagrange four-square decomposition of a nonnegative integer, nonzero parts
/// only. Bounded search; nullopt when the iteration budget runs out.
inline std::optional<std::vector<Integer>> four_squares(const Integer& n, std::uint64_t budget = 200000) {
    if (n < 0) return std::nullopt;
    if (n == 0) return std::vector<Integer>{};
    for (Integer a = isqrt(n); 4 * a * a >= n; --a) {
        Integer r1 = n - a * a;
        for (Integer b = isqrt(r1); 3 * b * b >= r1; --b) {
            Integer r2 = r1 - b * b;
            if (auto cd = detail::two_squares(r2, budget)) {
                std::vector<Integer> parts;
                for (const Integer& v : {a, b, cd->first, cd->second})
                    if (v != 0) parts.push_back(v);
                return parts;
            }
            if (budget == 0) return std::nullopt;
            if (b == 0) break;
        }
        if (a == 0) break;
    }
    return std::nullopt;
}

/// Writes a positive rational w as a sum of squares of rationals r_i (at most
/// four), so that w * s^2 = sum (r_i s)^2 for any s.
inline std::optional<std::vector<Rational>> rational_square_roots_summing_to(const Rational& w) {
    if (w < 0) return std::nullopt;
    if (w == 0) return std::vector<Rational>{};
    if (auto r = rational_sqrt(w)) return std::vector<Rational>{*r};
    // w = u/v = (u v) / v^2
    Integer n = w.get_num() * w.get_den();
    auto parts = four_squares(n);
    if (!parts) return std::nullopt;
    std::vector<Rational> out;
    for (const Integer& k : *parts) {
        Rational r(k, w.get_den());
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

}  // namespace realspec
