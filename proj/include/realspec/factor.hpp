#pragma once

// Factorization over Q: squarefree split (Yun), then Zassenhaus on each
// squarefree part. Modular factors come from Cantor-Zassenhaus over a
// word-size prime, are lifted p-adically (linear multifactor Hensel), and are
// recombined by trial division against a Mignotte-type coefficient bound.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "realspec/poly.hpp"

namespace realspec {

struct Factor {
    Poly poly;  // monic, irreducible over Q
    unsigned mult = 1;
};

struct Factorization {
    Rational unit;
    std::vector<Factor> factors;

    [[nodiscard]] Poly expand() const {
        Poly acc = unit;
        for (const auto& f : factors) acc *= pow(f.poly, f.mult);
        return acc;
    }
};

namespace detail {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31. Coefficients in [0, p), no trailing zeros.

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Fp {
    u64 p;

    [[nodiscard]] u64 add(u64 a, u64 b) const { return (a + b) % p; }
    [[nodiscard]] u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    [[nodiscard]] u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    [[nodiscard]] u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }
    [[nodiscard]] u64 inv(u64 a) const { return pow(a, p - 2); }
};

inline void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mp_sub(const Fp& F, ModPoly a, const ModPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline ModPoly mp_mul(const Fp& F, const ModPoly& a, const ModPoly& b) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
    }
    trim(r);
    return r;
}

inline std::pair<ModPoly, ModPoly> mp_divrem(const Fp& F, ModPoly a, const ModPoly& b) {
    if (b.empty()) throw std::domain_error("division by zero in F_p[x]");
    if (a.size() < b.size()) return {{}, a};
    const std::size_t db = b.size() - 1;
    const u64 inv = F.inv(b.back());
    ModPoly q(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        if (!a[k]) continue;
        u64 t = F.mul(a[k], inv);
        q[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j) a[k - db + j] = F.sub(a[k - db + j], F.mul(t, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

inline ModPoly mp_rem(const Fp& F, const ModPoly& a, const ModPoly& b) { return mp_divrem(F, a, b).second; }

inline ModPoly mp_monic(const Fp& F, ModPoly a) {
    if (a.empty()) return a;
    const u64 inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
    return a;
}

inline ModPoly mp_gcd(const Fp& F, ModPoly a, ModPoly b) {
    while (!b.empty()) {
        ModPoly r = mp_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(F, a);
}

/// s with s*a = 1 mod m (a, m coprime).
inline ModPoly mp_inverse_mod(const Fp& F, const ModPoly& a, const ModPoly& m) {
    ModPoly r0 = m, r1 = mp_rem(F, a, m);
    ModPoly t0, t1{1};
    while (!r1.empty()) {
        auto [q, r] = mp_divrem(F, r0, r1);
        ModPoly t2 = mp_sub(F, t0, mp_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::domain_error("not invertible in F_p[x]/(m)");
    const u64 inv = F.inv(r0[0]);
    for (auto& c : t0) c = F.mul(c, inv);
    return mp_rem(F, t0, m);
}

inline ModPoly mp_powmod(const Fp& F, ModPoly base, u64 e, const ModPoly& m) {
    ModPoly r{1};
    r = mp_rem(F, r, m);
    base = mp_rem(F, base, m);
    while (e) {
        if (e & 1U) r = mp_rem(F, mp_mul(F, r, base), m);
        e >>= 1U;
        if (e) base = mp_rem(F, mp_mul(F, base, base), m);
    }
    return r;
}

inline ModPoly mp_derivative(const Fp& F, const ModPoly& a) {
    if (a.size() <= 1) return {};
    ModPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

/// Distinct-degree factorization of a monic squarefree f: pairs (product of
/// all irreducible factors of degree d, d).
inline std::vector<std::pair<ModPoly, std::size_t>> distinct_degree(const Fp& F, ModPoly f) {
    std::vector<std::pair<ModPoly, std::size_t>> out;
    const ModPoly x{0, 1};
    ModPoly h = mp_rem(F, x, f);
    for (std::size_t d = 1; 2 * d <= f.size() - 1; ++d) {
        h = mp_powmod(F, h, F.p, f);
        ModPoly g = mp_gcd(F, mp_sub(F, h, x), f);
        if (g.size() > 1) {
            out.emplace_back(g, d);
            f = mp_divrem(F, f, g).first;
            h = mp_rem(F, h, f);
        }
    }
    if (f.size() > 1) out.emplace_back(f, f.size() - 1);
    return out;
}

/// Cantor-Zassenhaus equal-degree splitting (p odd).
inline void equal_degree(const Fp& F, const ModPoly& g, std::size_t d, std::mt19937_64& rng,
                         std::vector<ModPoly>& out) {
    const std::size_t n = g.size() - 1;
    if (n == d) {
        out.push_back(g);
        return;
    }
    // (p^d - 1)/2 as repeated exponentiation: a^((p^d-1)/2) = (a^(1+p+...+p^(d-1)))^((p-1)/2)
    while (true) {
        ModPoly a(n);
        for (auto& c : a) c = rng() % F.p;
        trim(a);
        if (a.size() <= 1) continue;
        ModPoly norm = a, frob = a;
        for (std::size_t i = 1; i < d; ++i) {
            frob = mp_powmod(F, frob, F.p, g);
            norm = mp_rem(F, mp_mul(F, norm, frob), g);
        }
        ModPoly b = mp_powmod(F, norm, (F.p - 1) / 2, g);
        b = mp_sub(F, b, ModPoly{1});
        ModPoly s = mp_gcd(F, b, g);
        if (s.size() > 1 && s.size() < g.size()) {
            equal_degree(F, s, d, rng, out);
            equal_degree(F, mp_divrem(F, g, s).first, d, rng, out);
            return;
        }
    }
}

inline std::vector<ModPoly> factor_mod_p(const Fp& F, const ModPoly& f_monic) {
    std::mt19937_64 rng(0x5eedULL ^ F.p);
    std::vector<ModPoly> out;
    for (auto& [g, d] : distinct_degree(F, f_monic)) equal_degree(F, g, d, rng, out);
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials.

using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Primitive integer polynomial with positive leading coefficient, associated
/// to the nonzero rational polynomial p.
inline ZPoly primitive_integer(const Poly& p) {
    Integer den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    for (const auto& c : p.coeffs()) z.push_back(Integer(c.get_num() * (den / c.get_den())));
    Integer content = 0;
    for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    for (auto& c : z) c /= content;
    if (z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline Poly to_poly(const ZPoly& z) {
    std::vector<Rational> c;
    for (const auto& v : z) c.emplace_back(v);
    return Poly(std::move(c));
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ModPoly reduce_mod_p(const ZPoly& z, u64 p) {
    ModPoly r;
    for (const auto& c : z) r.push_back(mod_floor(c, Integer(static_cast<unsigned long>(p))).get_ui());
    trim(r);
    return r;
}

inline ZPoly lift_mod_poly(const ModPoly& a) {
    ZPoly r;
    for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

inline ZPoly z_mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& c : r) c = mod_floor(c, m);
    trim(r);
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Linear multifactor Hensel lifting. f is monic modulo p^k (lc inverted in),
/// us are the monic modular factors of f mod p. Returns factors mod p^k.
inline std::vector<ZPoly> hensel_lift(const ZPoly& f_monic_mod, const std::vector<ModPoly>& us, u64 p,
                                      unsigned k, const Integer& pk) {
    const Fp F{p};
    const std::size_t r = us.size();
    // Partial fraction cofactors: sum_i s_i * prod_{j != i} u_j = 1 mod p.
    ModPoly total{1};
    for (const auto& u : us) total = mp_mul(F, total, u);
    std::vector<ModPoly> s(r), cof(r);
    for (std::size_t i = 0; i < r; ++i) {
        cof[i] = mp_divrem(F, total, us[i]).first;
        s[i] = mp_inverse_mod(F, cof[i], us[i]);
    }
    std::vector<ZPoly> lifted;
    for (const auto& u : us) lifted.push_back(lift_mod_poly(u));
    Integer pj = Integer(static_cast<unsigned long>(p));
    const Integer P = pj;
    for (unsigned step = 1; step < k; ++step) {
        const Integer next = pj * P;
        ZPoly prod{1};
        for (const auto& u : lifted) prod = z_mul_mod(prod, u, next);
        ZPoly diff = f_monic_mod;
        if (prod.size() > diff.size()) diff.resize(prod.size(), 0);
        for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
        ModPoly e;
        for (auto c : diff) {
            c = mod_floor(c, next);
            e.push_back(Integer(c / pj).get_ui() % p);
        }
        trim(e);
        if (!e.empty()) {
            for (std::size_t i = 0; i < r; ++i) {
                ModPoly delta = mp_rem(F, mp_mul(F, e, s[i]), us[i]);
                ZPoly& u = lifted[i];
                for (std::size_t c = 0; c < delta.size(); ++c) u[c] += pj * Integer(static_cast<unsigned long>(delta[c]));
            }
        }
        pj = next;
    }
    (void)pk;
    return lifted;
}

inline ZPoly symmetric(const ZPoly& a, const Integer& m) {
    ZPoly r;
    const Integer half = m / 2;
    for (const auto& c : a) {
        Integer v = mod_floor(c, m);
        if (v > half) v -= m;
        r.push_back(v);
    }
    trim(r);
    return r;
}

inline ZPoly primitive_part(ZPoly a) {
    Integer content = 0;
    for (const auto& c : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content == 0) return a;
    for (auto& c : a) c /= content;
    if (a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

/// Monic irreducible factors of a monic squarefree rational polynomial.
inline std::vector<Poly> factor_squarefree(const Poly& q) {
    if (*q.degree() <= 1) return {q};
    ZPoly F = primitive_integer(q);
    const std::size_t n = F.size() - 1;

    // Pick the prime with the fewest modular factors among a handful, and
    // intersect the possible factor degrees; a lone {0, n} proves irreducible.
    std::vector<bool> possible(n + 1, true);
    u64 best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (u64 cand = 1000003; tried < 5; cand += 2) {
        if (!is_prime_u64(cand)) continue;
        const Fp Fq{cand};
        ModPoly fm = reduce_mod_p(F, cand);
        if (fm.size() != F.size()) continue;  // p divides the leading coefficient
        if (mp_gcd(Fq, fm, mp_derivative(Fq, fm)).size() != 1) continue;
        ++tried;
        std::vector<ModPoly> fac = factor_mod_p(Fq, mp_monic(Fq, fm));
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (const auto& g : fac) {
            const std::size_t d = g.size() - 1;
            for (std::size_t s = n; s >= d && s != static_cast<std::size_t>(-1); --s)
                if (sums[s - d]) sums[s] = true;
        }
        for (std::size_t s = 0; s <= n; ++s) possible[s] = possible[s] && sums[s];
        if (best.empty() || fac.size() < best.size()) {
            best = std::move(fac);
            best_p = cand;
        }
        bool irreducible = true;
        for (std::size_t s = 1; s < n; ++s) irreducible = irreducible && !possible[s];
        if (irreducible || best.size() == 1) return {q};
    }

    // Coefficient bound for lc(F) * g, g any integer factor of F.
    Integer norm2 = 0;
    for (const auto& c : F) norm2 += c * c;
    Integer bound = (isqrt(norm2) + 1) * abs(F.back());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
    bound = 2 * bound + 1;
    unsigned k = 1;
    Integer pk = Integer(static_cast<unsigned long>(best_p));
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(best_p);
        ++k;
    }

    // Monic image of F modulo p^k.
    Integer lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), F.back().get_mpz_t(), pk.get_mpz_t());
    ZPoly f_monic;
    for (const auto& c : F) f_monic.push_back(mod_floor(c * lc_inv, pk));
    std::vector<ZPoly> lifted = hensel_lift(f_monic, best, best_p, k, pk);

    std::vector<Poly> result;
    ZPoly cur = F;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly cand{cur.back()};
            for (std::size_t i : idx) cand = z_mul_mod(cand, pool[i], pk);
            cand = primitive_part(symmetric(cand, pk));
            Poly cp = to_poly(cand);
            Poly cur_p = to_poly(cur);
            auto [quot, rem] = divrem(cur_p, cp);
            if (!cand.empty() && cand.size() > 1 && rem.is_zero()) {
                result.push_back(cp.monic());
                cur = primitive_integer(quot);
                std::vector<ZPoly> rest;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(pool[i]);
                pool = std::move(rest);
                found = true;
                break;
            }
            // next combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (cur.size() > 1) result.push_back(to_poly(cur).monic());
    return result;
}

}  // namespace detail

/// Complete factorization over Q into monic irreducibles, sorted by degree
/// then by coefficients from the leading term down.
inline Factorization factor(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    Factorization out;
    out.unit = p.lc();
    const std::vector<Poly> parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].is_constant()) continue;
        for (auto& f : detail::factor_squarefree(parts[i]))
            out.factors.push_back({std::move(f), static_cast<unsigned>(i + 1)});
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
    return out;
}

}  // namespace realspec
