#pragma once

// Real radical certificates: witnessed identities a^(2m) + sum b_i^2 = c * g
// proving a lies in the real radical of (g).
//
// Membership itself is always decided exactly (real_radical_member). The
// explicit identity is searched for in three stages, cheapest first:
//   1. no squares at all: the least m with g | a^(2m);
//   2. a single monomial square class: sum (r_i x^j)^2 = -a^(2m) mod g;
//   3. factor g = R * N into real-rooted and non-real parts, take m with
//      R | a^(2m), and build 1 + S = 0 mod N from sum-of-squares
//      decompositions of the positive definite irreducible factors of N.
// Stage 3 is a bounded search (grid of rational coefficients, node budget);
// failure is reported as MemberNoCertificate, never as non-membership.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "realspec/factor.hpp"
#include "realspec/ring.hpp"
#include "realspec/sturm.hpp"

namespace realspec {

struct SearchBounds {
    unsigned m_max = 6;
    /// Highest monomial degree tried for square terms; nullopt means deg(g).
    std::optional<unsigned> sos_degree;
    /// Numerators and denominators of grid coefficients are at most this.
    unsigned coeff_bound = 8;
    std::size_t node_budget = 4000;
    std::size_t max_terms = 256;

    void validate() const {
        if (m_max == 0) throw std::domain_error("search bound m_max must be positive");
        if (coeff_bound == 0) throw std::domain_error("search bound coeff_bound must be positive");
        if (node_budget == 0) throw std::domain_error("search bound node_budget must be positive");
        if (max_terms == 0) throw std::domain_error("search bound max_terms must be positive");
    }
};

class SumOfSquares {
   public:
    explicit SumOfSquares(Ring ring, std::vector<RingElem> terms = {}) : ring_(std::move(ring)), terms_(std::move(terms)) {
        for (const auto& t : terms_) require_same_ring(ring_, t.ring());
    }

    [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
    [[nodiscard]] const std::vector<RingElem>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    [[nodiscard]] RingElem value() const {
        RingElem acc(ring_, 0);
        for (const auto& t : terms_) acc += t * t;
        return acc;
    }

    /// (sum a_i^2)(sum b_j^2) = sum (a_i b_j)^2
    friend SumOfSquares operator*(const SumOfSquares& a, const SumOfSquares& b) {
        require_same_ring(a.ring_, b.ring_);
        std::vector<RingElem> out;
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) out.push_back(x * y);
        return SumOfSquares(a.ring_, std::move(out));
    }
    friend SumOfSquares operator+(const SumOfSquares& a, const SumOfSquares& b) {
        require_same_ring(a.ring_, b.ring_);
        std::vector<RingElem> out = a.terms_;
        out.insert(out.end(), b.terms_.begin(), b.terms_.end());
        return SumOfSquares(a.ring_, std::move(out));
    }
    /// h^2 * sum t_i^2 = sum (h t_i)^2
    [[nodiscard]] SumOfSquares scaled_by_square_of(const RingElem& h) const {
        std::vector<RingElem> out;
        for (const auto& t : terms_) out.push_back(h * t);
        return SumOfSquares(ring_, std::move(out));
    }

   private:
    Ring ring_;
    std::vector<RingElem> terms_;
};

/// A witnessed element f^(2m) + sum x_i^2 of Sigma_f. Membership is by
/// construction; nothing ever decides it for an arbitrary element.
class SigmaDenominator {
   public:
    SigmaDenominator(RingElem f, unsigned m, SumOfSquares tail) : f_(std::move(f)), m_(m), tail_(std::move(tail)) {
        require_same_ring(f_.ring(), tail_.ring());
        if (f_.is_zero()) throw std::domain_error("Sigma_f needs a nonzero f");
    }
    /// f^(2m) with an empty tail.
    SigmaDenominator(RingElem f, unsigned m) : SigmaDenominator(f, m, SumOfSquares(f.ring())) {}

    [[nodiscard]] const RingElem& f() const noexcept { return f_; }
    [[nodiscard]] unsigned m() const noexcept { return m_; }
    [[nodiscard]] const SumOfSquares& tail() const noexcept { return tail_; }
    [[nodiscard]] RingElem value() const { return pow(f_, 2 * static_cast<std::size_t>(m_)) + tail_.value(); }

    /// Sigma_f is multiplicatively closed:
    /// (f^2m + S)(f^2n + T) = f^2(m+n) + sum (f^m t)^2 + sum (f^n s)^2 + S T.
    friend SigmaDenominator operator*(const SigmaDenominator& a, const SigmaDenominator& b) {
        if (!(a.f_ == b.f_)) throw std::domain_error("Sigma_f denominators for different f");
        SumOfSquares tail = b.tail_.scaled_by_square_of(pow(a.f_, a.m_)) +
                            a.tail_.scaled_by_square_of(pow(a.f_, b.m_)) + a.tail_ * b.tail_;
        return {a.f_, a.m_ + b.m_, std::move(tail)};
    }

   private:
    RingElem f_;
    unsigned m_;
    SumOfSquares tail_;
};

struct RealRadicalCertificate {
    RingElem a;
    unsigned m;
    SumOfSquares sos;
    RingElem cofactor;
    Ideal ideal;
};

struct MemberNoCertificate {};
struct NotMember {};

using CertificateOutcome = std::variant<RealRadicalCertificate, MemberNoCertificate, NotMember>;

/// Re-expands a^(2m) + sum b_i^2 - cofactor * gen in the ring.
inline bool verify_certificate(const RealRadicalCertificate& c) {
    const Ring& A = c.ideal.ring();
    require_same_ring(A, c.a.ring());
    require_same_ring(A, c.sos.ring());
    require_same_ring(A, c.cofactor.ring());
    if (c.m == 0) return false;
    RingElem lhs = pow(c.a, 2 * static_cast<std::size_t>(c.m)) + c.sos.value();
    RingElem rhs = c.cofactor * RingElem(A, c.ideal.gen());
    return (lhs - rhs).is_zero();
}

namespace detail {

/// 0 and the rationals +-n/d with n, d <= bound, ordered by height
/// max(n, d), then by absolute value, positive first.
inline std::vector<Rational> coefficient_grid(unsigned bound) {
    std::vector<Rational> out{Rational(0)};
    for (unsigned h = 1; h <= bound; ++h) {
        std::vector<Rational> level;
        for (unsigned n = 1; n <= h; ++n)
            for (unsigned d = 1; d <= h; ++d) {
                if (std::max(n, d) != h || std::gcd(n, d) != 1) continue;
                level.emplace_back(n, d);
            }
        std::sort(level.begin(), level.end());
        for (const auto& q : level) {
            out.push_back(q);
            out.push_back(-q);
        }
    }
    return out;
}

using WeightedSquares = std::vector<std::pair<Rational, Poly>>;

struct SosSearch {
    const std::vector<Rational>& grid;
    std::size_t budget;
};

/// Monic s of degree deg(q)/2 agreeing with sqrt(q) in the top half of the
/// coefficients, so deg(q - s^2) < deg(q)/2.
inline Poly square_root_head(const Poly& q) {
    const std::size_t n = *q.degree();
    const std::size_t k = n / 2;
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        Rational acc = q.coeff(n - j);
        for (std::size_t i = 1; i < j; ++i) acc -= c[k - i] * c[k - j + i];
        c[k - j] = acc / 2;
    }
    return Poly(std::move(c));
}

inline std::optional<WeightedSquares> sos_decompose(const Poly& q, SosSearch& search);

inline std::optional<WeightedSquares> sos_decompose_monic(const Poly& q, SosSearch& search) {
    const std::size_t n = *q.degree();
    if (n == 2) {
        const Rational half = q.coeff(1) / 2;
        const Rational d = q.coeff(0) - half * half;
        if (d < 0) return std::nullopt;
        WeightedSquares out{{Rational(1), Poly(std::vector<Rational>{half, 1})}};
        if (d > 0) out.emplace_back(d, Poly(1));
        return out;
    }
    const std::size_t k = n / 2;
    const Poly head = square_root_head(q);
    if (k < 2) return std::nullopt;
    // Free coefficients: x^0 .. x^(k-2); x^(k-1) is pinned to kill x^(2k-1).
    const std::size_t free = k - 1;
    const std::size_t g = search.grid.size();
    std::vector<std::size_t> idx(free, 0);
    for (std::size_t level = 0; level < g; ++level) {
        // all index tuples with max entry == level
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            if (*std::max_element(idx.begin(), idx.end()) == level) {
                if (search.budget == 0) return std::nullopt;
                --search.budget;
                std::vector<Rational> c = head.coeffs();
                for (std::size_t i = 0; i < free; ++i) c[i] += search.grid[idx[i]];
                Poly s(std::move(c));
                Poly r = q - s * s;
                if (r.is_zero()) return WeightedSquares{{Rational(1), s}};
                if (*r.degree() % 2 == 0 && r.lc() > 0) {
                    if (auto rest = sos_decompose(r, search)) {
                        rest->emplace_back(Rational(1), s);
                        return rest;
                    }
                }
            }
            std::size_t i = 0;
            while (i < free && idx[i] == level) idx[i++] = 0;
            if (i == free) break;
            ++idx[i];
        }
    }
    return std::nullopt;
}

/// Weighted sum-of-squares decomposition q = sum w_i s_i^2 (w_i > 0) of a
/// nonnegative polynomial, by bounded square completion.
inline std::optional<WeightedSquares> sos_decompose(const Poly& q, SosSearch& search) {
    if (q.is_zero()) return WeightedSquares{};
    if (*q.degree() % 2 != 0 || q.lc() < 0) return std::nullopt;
    if (q.is_constant()) return WeightedSquares{{q.lc(), Poly(1)}};
    const Rational lc = q.lc();
    auto out = sos_decompose_monic(q.monic(), search);
    if (!out) return std::nullopt;
    for (auto& [w, s] : *out) w *= lc;
    return out;
}

inline std::optional<std::vector<Poly>> expand_weights(const WeightedSquares& ws) {
    std::vector<Poly> out;
    for (const auto& [w, s] : ws) {
        auto roots = rational_square_roots_summing_to(w);
        if (!roots) return std::nullopt;
        for (const auto& r : *roots) out.push_back(s * r);
    }
    return out;
}

inline Poly sum_of_squares_value(const std::vector<Poly>& terms) {
    Poly acc;
    for (const auto& t : terms) acc += t * t;
    return acc;
}

/// Terms t_i with 1 + sum t_i^2 = 0 mod q, for q monic irreducible without
/// real roots.
inline std::optional<std::vector<Poly>> minus_one_as_sos(const Poly& q, const SearchBounds& bounds, SosSearch& search) {
    auto decomposition = sos_decompose(q, search);
    if (!decomposition || decomposition->size() < 2) return std::nullopt;
    // Pick the lowest-degree square as the one to invert modulo q.
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < decomposition->size(); ++i)
        if ((*decomposition)[i].second.degree() < (*decomposition)[pivot].second.degree()) pivot = i;
    const auto& [w0, s0] = (*decomposition)[pivot];
    const ExtGcd e = ext_gcd(s0, q);
    if (!e.g.is_one()) return std::nullopt;
    const Poly inv = e.s % q;
    WeightedSquares rest;
    for (std::size_t i = 0; i < decomposition->size(); ++i) {
        if (i == pivot) continue;
        const auto& [w, s] = (*decomposition)[i];
        rest.emplace_back(w / w0, (s * inv) % q);
    }
    auto terms = expand_weights(rest);
    if (!terms || terms->size() > bounds.max_terms) return std::nullopt;
    if (!((Poly(1) + sum_of_squares_value(*terms)) % q).is_zero()) return std::nullopt;
    return terms;
}

/// (1 + A)(1 + B) = 1 + A + B + AB, reducing the terms modulo n.
inline std::vector<Poly> combine_unit_plus_sos(const std::vector<Poly>& a, const std::vector<Poly>& b, const Poly& n) {
    std::vector<Poly> out = a;
    out.insert(out.end(), b.begin(), b.end());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back((x * y) % n);
    return out;
}

struct Identity {
    unsigned m;
    std::vector<Poly> sos;  // over Q[x]
    Poly cofactor;          // lift(a)^(2m) + sum sos^2 = cofactor * gen
};

inline std::optional<Identity> fast_path(const Poly& a, const Poly& gen, unsigned m_max) {
    const Poly a_mod = a % gen;
    Poly sq = (a_mod * a_mod) % gen;
    Poly acc = sq;
    for (unsigned m = 1; m <= m_max; ++m) {
        if (acc.is_zero()) return Identity{m, {}, exact_div(pow(a, 2 * m), gen)};
        acc = (acc * sq) % gen;
    }
    return std::nullopt;
}

inline std::optional<Identity> single_monomial(const Poly& a, const Poly& gen, const SearchBounds& bounds) {
    const unsigned max_j = bounds.sos_degree.value_or(static_cast<unsigned>(*gen.degree()));
    for (unsigned m = 1; m <= bounds.m_max; ++m) {
        const Poly a2m = pow(a, 2 * m);
        const Poly target = -(a2m % gen);
        if (target.is_zero()) continue;
        for (unsigned j = 0; j <= max_j; ++j) {
            const Poly pj = Poly::monomial(1, 2 * j) % gen;
            if (pj.is_zero() || pj.degree() != target.degree()) continue;
            const Rational lambda = target.lc() / pj.lc();
            if (lambda <= 0 || !(pj * lambda == target)) continue;
            auto roots = rational_square_roots_summing_to(lambda);
            if (!roots) continue;
            std::vector<Poly> terms;
            for (const auto& r : *roots) terms.push_back(Poly::monomial(r, j));
            const Poly total = a2m + sum_of_squares_value(terms);
            return Identity{m, std::move(terms), exact_div(total, gen)};
        }
    }
    return std::nullopt;
}

inline std::optional<Identity> structured(const Poly& a, const Poly& gen, const SearchBounds& bounds) {
    const Factorization fz = factor(gen);
    Poly real_powers = 1, nonreal_powers = 1;
    unsigned m = 1;
    std::vector<Factor> nonreal;
    for (const auto& f : fz.factors) {
        const Poly pe = pow(f.poly, f.mult);
        if (count_real_roots(f.poly) > 0) {
            real_powers *= pe;
            unsigned v = 0;
            Poly rest = a;
            while (!rest.is_zero() && divides(f.poly, rest)) {
                rest = exact_div(rest, f.poly);
                ++v;
            }
            if (v == 0) return std::nullopt;  // a is not in the real radical
            m = std::max(m, (f.mult + 2 * v - 1) / (2 * v));
        } else {
            nonreal_powers *= pe;
            nonreal.push_back(f);
        }
    }
    if (m > bounds.m_max) return std::nullopt;

    const std::vector<Rational> grid = coefficient_grid(bounds.coeff_bound);
    SosSearch search{grid, bounds.node_budget};
    std::vector<Poly> s_total;
    bool first = true;
    for (const auto& f : nonreal) {
        auto base = minus_one_as_sos(f.poly, bounds, search);
        if (!base) return std::nullopt;
        std::vector<Poly> s_power = *base;
        for (unsigned e = 1; e < f.mult; ++e) s_power = combine_unit_plus_sos(s_power, *base, nonreal_powers);
        s_total = first ? s_power : combine_unit_plus_sos(s_total, s_power, nonreal_powers);
        first = false;
        if (s_total.size() > bounds.max_terms) return std::nullopt;
    }
    const Poly am = pow(a, m);
    std::vector<Poly> terms;
    for (const auto& t : s_total) terms.push_back(am * t);
    const Poly total = am * am + sum_of_squares_value(terms);
    auto [cof, rem] = divrem(total, gen);
    if (!rem.is_zero()) return std::nullopt;
    return Identity{m, std::move(terms), std::move(cof)};
}

}  // namespace detail

/// Searches for an explicit identity proving a in the real radical of I.
inline CertificateOutcome find_certificate(const Ideal& I, const RingElem& a, const SearchBounds& bounds = {}) {
    bounds.validate();
    require_same_ring(I.ring(), a.ring());
    if (!real_radical_member(I, a)) return NotMember{};
    const Ring& A = I.ring();
    const Poly& gen = I.gen();

    auto make = [&](detail::Identity id) -> CertificateOutcome {
        std::vector<RingElem> terms;
        for (auto& t : id.sos) terms.emplace_back(A, t);
        RealRadicalCertificate c{a, id.m, SumOfSquares(A, std::move(terms)), RingElem(A, id.cofactor), I};
        if (!verify_certificate(c)) return MemberNoCertificate{};
        return c;
    };

    if (gen.is_zero()) return make({1, {}, Poly{}});  // a = 0 here
    if (auto id = detail::fast_path(a.lift(), gen, bounds.m_max)) return make(std::move(*id));
    if (auto id = detail::single_monomial(a.lift(), gen, bounds)) return make(std::move(*id));
    if (auto id = detail::structured(a.lift(), gen, bounds)) return make(std::move(*id));
    return MemberNoCertificate{};
}

}  // namespace realspec
