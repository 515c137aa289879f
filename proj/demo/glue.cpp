// Glues the two local fractions x/x on D(x) and 0/(x-1) on D(x-1) over
// Q[x]/(x^2 - x) into one global element, then checks it stalk by stalk.

#include <iostream>
#include <variant>

#include "realspec.hpp"

using namespace realspec;

int main() {
    const Ring A = parse_ring("Q[x]/(x^2 - x)");
    auto el = [&](const char* s) { return RingElem(A, parse_poly(s)); };

    const Section s(el("1"), {{el("x"), el("x")}, {el("x - 1"), el("0")}});
    std::cout << "section valid: " << std::boolalpha << section_validate(s).valid() << '\n';

    const GlueOutcome out = glue(s);
    const auto& g = std::get<Glued>(out);
    std::cout << "glued: " << to_string(g.value.a) << " / " << to_string(g.value.den.value()) << '\n';
    std::cout << "b =";
    for (const auto& b : g.certificate.bs) std::cout << ' ' << to_string(b);
    std::cout << ", k = " << g.certificate.k << '\n';

    for (const auto& p : enumerate_primes(A)) {
        const StalkElement germ = stalk_at(s, p);
        const StalkElement glued = stalk_at(psi(g.value), p);
        std::cout << "at (" << to_string(p.gen()) << "): " << to_string(germ.a) << " / " << to_string(germ.s)
                  << (stalk_eq(germ, glued) ? " agrees" : " differs") << '\n';
    }
}
