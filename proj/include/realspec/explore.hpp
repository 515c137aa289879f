#pragma once

// Randomized probe of Sigma_f^-1 A -> O(D(f)) on quotient rings that are
// semi-real but not real. Glue is run in experimental mode and the outcomes
// are only tallied: a failed bounded search is an unresolved instance, never
// evidence that no preimage exists.

#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "realspec/factor.hpp"
#include "realspec/parse.hpp"
#include "realspec/sheaf.hpp"
#include "realspec/spectrum.hpp"

namespace realspec {

struct ExploreConfig {
    unsigned rings = 50;
    unsigned trials = 4;  // sections per ring
    unsigned min_degree = 2;
    unsigned max_degree = 6;
    std::uint64_t seed = 1;
    SearchBounds bounds;
};

struct UnresolvedInstance {
    std::string ring;
    std::string f;
    std::vector<std::pair<std::string, std::string>> patches;  // (g, a)
    std::uint64_t seed = 0;
    std::string outcome;  // "certificate-exhausted" or "structurally-blocked"
};

struct RingTally {
    std::string ring;
    unsigned glued = 0;
    unsigned exhausted = 0;
    unsigned blocked = 0;
    unsigned reverify_failures = 0;
    unsigned errors = 0;
};

struct ExplorationReport {
    ExploreConfig config;
    std::vector<RingTally> rings;
    std::vector<UnresolvedInstance> unresolved;
    std::vector<std::string> errors;

    [[nodiscard]] RingTally totals() const {
        RingTally t{"total"};
        for (const auto& r : rings) {
            t.glued += r.glued;
            t.exhausted += r.exhausted;
            t.blocked += r.blocked;
            t.reverify_failures += r.reverify_failures;
            t.errors += r.errors;
        }
        return t;
    }
};

namespace detail {

// Modulo mapping keeps the streams identical across standard libraries.
class Draw {
   public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t raw() { return rng_(); }
    long range(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (rng_() & 1U) != 0; }

   private:
    std::mt19937_64 rng_;
};

inline Poly random_real_piece(Draw& d) {
    if (d.range(0, 3) == 0) {
        static constexpr long kNonSquares[] = {2, 3, 5, 6, 7};
        return Poly::x() * Poly::x() - Poly(kNonSquares[d.range(0, 4)]);
    }
    Rational r(Integer(d.range(-3, 3)), Integer(d.range(1, 2)));
    r.canonicalize();
    return Poly::x() - Poly(r);
}

inline Poly random_nonreal_piece(Draw& d) {
    if (d.coin()) return Poly::x() * Poly::x() + Poly(d.range(1, 5));
    return Poly::x() * Poly::x() + Poly::x() + Poly(d.range(1, 4));
}

inline Poly random_poly(Draw& d, long max_deg, long bound) {
    std::vector<Rational> c;
    const long deg = d.range(0, max_deg);
    for (long i = 0; i <= deg; ++i) c.emplace_back(d.range(-bound, bound));
    return Poly(std::move(c));
}

/// A monic modulus with a real-rooted factor and either a repeated factor or
/// a factor without real roots.
inline Ring sample_ring(Draw& d, unsigned min_degree, unsigned max_degree) {
    for (;;) {
        std::vector<Poly> pieces;
        const long n_real = d.range(1, 2);
        for (long i = 0; i < n_real; ++i) pieces.push_back(random_real_piece(d));
        if (d.coin()) {
            pieces.push_back(pieces[static_cast<std::size_t>(d.range(0, n_real - 1))]);
        } else {
            pieces.push_back(random_nonreal_piece(d));
            if (d.range(0, 3) == 0) pieces.push_back(pieces.back());
        }
        Poly m(1);
        for (const auto& p : pieces) m = m * p;
        const std::size_t deg = *m.degree();
        if (deg < min_degree || deg > max_degree) continue;
        Ring r = Ring::quotient(m);
        if (r.is_semireal() && !r.is_real()) return r;
    }
}

inline Poly nonreal_part(const Poly& m) {
    Poly n(1);
    for (const auto& f : factor(m).factors)
        if (count_real_roots(f.poly) == 0) n = n * f.poly;
    return n;
}

/// f kills a random subset of the real points; each remaining point k gets
/// g_k = f * (product of the other real primes) * unit, so D(g_k) = {p_k}.
inline Section sample_section(const Ring& r, Draw& d) {
    const auto primes = enumerate_primes(r);
    const Poly nonreal = nonreal_part(r.modulus());
    Poly f(d.range(1, 3));
    if (d.range(0, 2) != 0)
        for (const auto& p : primes)
            if (d.coin()) f = f * p.gen();
    if (d.range(0, 3) == 0) f = f * nonreal;
    if (RingElem(r, f).is_zero()) f = Poly(1);

    const long adeg = static_cast<long>(*r.modulus().degree()) - 1;
    std::vector<LocalFraction> patches;
    for (std::size_t k = 0; k < primes.size(); ++k) {
        if (divides(primes[k].gen(), f)) continue;
        Poly g = f * Poly(d.range(1, 3));
        for (std::size_t l = 0; l < primes.size(); ++l)
            if (l != k) g = g * primes[l].gen();
        if (d.coin()) g = g * nonreal;
        patches.push_back({RingElem(r, g), RingElem(r, random_poly(d, adeg, 3))});
    }
    if (patches.empty()) patches.push_back({RingElem(r, f), RingElem(r, random_poly(d, adeg, 3))});
    return Section(RingElem(r, f), std::move(patches));
}

inline UnresolvedInstance describe(const Section& s, std::uint64_t seed, std::string outcome) {
    UnresolvedInstance u{to_string(s.ring()), to_string(s.f()), {}, seed, std::move(outcome)};
    for (const auto& p : s.patches()) u.patches.emplace_back(to_string(p.g), to_string(p.a));
    return u;
}

}  // namespace detail

inline ExplorationReport explore_question(const ExploreConfig& cfg) {
    if (cfg.min_degree < 2 || cfg.max_degree < cfg.min_degree)
        throw std::domain_error("explore: need 2 <= min_degree <= max_degree");
    cfg.bounds.validate();
    ExplorationReport rep{cfg, {}, {}, {}};
    if (cfg.trials == 0) return rep;
    detail::Draw master(cfg.seed);
    for (unsigned i = 0; i < cfg.rings; ++i) {
        detail::Draw ring_draw(master.raw());
        const Ring r = detail::sample_ring(ring_draw, cfg.min_degree, cfg.max_degree);
        RingTally tally{to_string(r)};
        for (unsigned t = 0; t < cfg.trials; ++t) {
            const std::uint64_t trial_seed = ring_draw.raw();
            detail::Draw d(trial_seed);
            try {
                const Section s = detail::sample_section(r, d);
                const GlueOutcome out = glue(s, cfg.bounds);
                if (const auto* g = std::get_if<Glued>(&out)) {
                    ++tally.glued;
                    if (!verify_glued(s, *g)) ++tally.reverify_failures;
                } else if (std::holds_alternative<CertificateExhausted>(out)) {
                    ++tally.exhausted;
                    rep.unresolved.push_back(detail::describe(s, trial_seed, "certificate-exhausted"));
                } else {
                    ++tally.blocked;
                    rep.unresolved.push_back(detail::describe(s, trial_seed, "structurally-blocked"));
                }
            } catch (const std::exception& e) {
                ++tally.errors;
                rep.errors.push_back(tally.ring + " seed " + std::to_string(trial_seed) + ": " + e.what());
            }
        }
        rep.rings.push_back(std::move(tally));
    }
    return rep;
}

inline std::string to_text(const ExplorationReport& rep) {
    std::ostringstream out;
    const auto& c = rep.config;
    out << "explore-question seed=" << c.seed << " rings=" << c.rings << " trials=" << c.trials
        << " degree=" << c.min_degree << ".." << c.max_degree << " (experimental)\n";
    auto line = [&](const RingTally& t) {
        out << t.ring << ": glued " << t.glued << ", certificate-exhausted " << t.exhausted
            << ", structurally-blocked " << t.blocked << ", reverify-failures " << t.reverify_failures << ", errors "
            << t.errors << '\n';
    };
    for (const auto& t : rep.rings) line(t);
    line(rep.totals());
    for (const auto& u : rep.unresolved) {
        out << "unresolved instance: ring " << u.ring << " f " << u.f << " patches [";
        for (std::size_t i = 0; i < u.patches.size(); ++i)
            out << (i ? ", " : "") << u.patches[i].first << ':' << u.patches[i].second;
        out << "] seed " << u.seed << " outcome " << u.outcome << '\n';
    }
    for (const auto& e : rep.errors) out << "error: " << e << '\n';
    out << "bounded search only: unresolved instances settle nothing about the question\n";
    return out.str();
}

inline nlohmann::json to_json(const ExplorationReport& rep) {
    using nlohmann::json;
    auto tally = [](const RingTally& t) {
        return json{{"ring", t.ring},
                    {"glued", t.glued},
                    {"certificate_exhausted", t.exhausted},
                    {"structurally_blocked", t.blocked},
                    {"reverify_failures", t.reverify_failures},
                    {"errors", t.errors}};
    };
    json rings = json::array();
    for (const auto& t : rep.rings) rings.push_back(tally(t));
    json unresolved = json::array();
    for (const auto& u : rep.unresolved) {
        json patches = json::array();
        for (const auto& [g, a] : u.patches) patches.push_back(g + ":" + a);
        unresolved.push_back({{"ring", u.ring}, {"f", u.f}, {"patches", patches}, {"seed", u.seed}, {"outcome", u.outcome}});
    }
    const auto& c = rep.config;
    return {{"seed", c.seed},
            {"rings_requested", c.rings},
            {"trials", c.trials},
            {"min_degree", c.min_degree},
            {"max_degree", c.max_degree},
            {"experimental", true},
            {"rings", rings},
            {"totals", tally(rep.totals())},
            {"unresolved", unresolved},
            {"errors", rep.errors}};
}

}  // namespace realspec
