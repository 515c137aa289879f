#pragma once

// JSON form of the three certificate kinds. Polynomials are canonical
// expression strings, so a certificate file can be re-checked on its own.
//
//   {"kind": "real-radical", "ring", "element", "ideal", "m", "sos", "cofactor"}
//   {"kind": "subcover", "ring", "element", "generators", "indices", "m", "sos", "coeffs"}
//   {"kind": "glue", "ring", "element", "generators", "numerators", "k", "sos",
//    "coeffs", "numerator"}
//
// "element" is a for real-radical and f for the other two.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "realspec/certificate.hpp"
#include "realspec/parse.hpp"
#include "realspec/sheaf.hpp"
#include "realspec/spectrum.hpp"

namespace realspec {

using Json = nlohmann::json;

namespace detail {

inline Json poly_list(const std::vector<RingElem>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

inline std::vector<RingElem> read_elems(const Ring& r, const Json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("expected an array of polynomials");
    std::vector<RingElem> out;
    for (const auto& s : arr) out.emplace_back(r, parse_poly(s.get<std::string>()));
    return out;
}

inline RingElem read_elem(const Ring& r, const Json& j, const char* key) {
    return {r, parse_poly(j.at(key).get<std::string>())};
}

}  // namespace detail

inline Json to_json(const RealRadicalCertificate& c) {
    return {{"kind", "real-radical"},
            {"ring", to_string(c.ideal.ring())},
            {"element", to_string(c.a)},
            {"ideal", to_string(c.ideal.gen())},
            {"m", c.m},
            {"sos", detail::poly_list(c.sos.terms())},
            {"cofactor", to_string(c.cofactor)}};
}

inline Json to_json(const SubcoverCertificate& c, const std::vector<std::size_t>& indices) {
    return {{"kind", "subcover"},
            {"ring", to_string(c.f.ring())},
            {"element", to_string(c.f)},
            {"generators", detail::poly_list(c.generators)},
            {"indices", indices},
            {"m", c.m},
            {"sos", detail::poly_list(c.sos.terms())},
            {"coeffs", detail::poly_list(c.coeffs)}};
}

inline Json to_json(const Glued& g) {
    std::vector<RingElem> gs;
    std::vector<RingElem> as;
    for (const auto& p : g.equalized.patches()) {
        gs.push_back(p.g);
        as.push_back(p.a);
    }
    return {{"kind", "glue"},
            {"ring", to_string(g.equalized.ring())},
            {"element", to_string(g.equalized.f())},
            {"generators", detail::poly_list(gs)},
            {"numerators", detail::poly_list(as)},
            {"k", g.certificate.k},
            {"sos", detail::poly_list(g.certificate.sos.terms())},
            {"coeffs", detail::poly_list(g.certificate.bs)},
            {"numerator", to_string(g.value.a)}};
}

/// Re-checks a certificate document by expansion. Malformed documents throw
/// (json or parse errors); well-formed but wrong ones return false.
inline bool verify_certificate_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const Ring r = parse_ring(j.at("ring").get<std::string>());
    const RingElem element = detail::read_elem(r, j, "element");
    const SumOfSquares sos(r, detail::read_elems(r, j.at("sos")));

    if (kind == "real-radical") {
        const Ideal ideal(r, parse_poly(j.at("ideal").get<std::string>()));
        RealRadicalCertificate c{element, j.at("m").get<unsigned>(), sos, detail::read_elem(r, j, "cofactor"), ideal};
        return verify_certificate(c);
    }
    if (kind == "subcover") {
        SubcoverCertificate c{element, detail::read_elems(r, j.at("generators")),
                              detail::read_elems(r, j.at("coeffs")), j.at("m").get<unsigned>(), sos};
        return verify_subcover(c);
    }
    if (kind == "glue") {
        const auto gs = detail::read_elems(r, j.at("generators"));
        const auto as = detail::read_elems(r, j.at("numerators"));
        const auto bs = detail::read_elems(r, j.at("coeffs"));
        const unsigned k = j.at("k").get<unsigned>();
        const RingElem a = detail::read_elem(r, j, "numerator");
        if (gs.empty() || gs.size() != as.size() || gs.size() != bs.size() || element.is_zero()) return false;
        std::vector<LocalFraction> patches;
        for (std::size_t i = 0; i < gs.size(); ++i) patches.push_back({gs[i], as[i]});
        const Section eq(element, std::move(patches));
        const SigmaFraction value{a, SigmaDenominator(element, k, sos)};
        return verify_glue_certificate(eq, GlueCertificate{bs, k, sos}) && closing_identities_hold(eq, value);
    }
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
}

}  // namespace realspec
