#pragma once

// Text syntax for polynomials and rings.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)*
//   atom   := integer ('/' integer)? | 'x' | '(' expr ')'
//
//   ring   := 'Q[x]' | 'Q[x]/(' expr ')'
//
// Columns in error messages are 1-based.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "realspec/poly.hpp"
#include "realspec/rational.hpp"
#include "realspec/ring.hpp"

namespace realspec {

class parse_error : public std::runtime_error {
   public:
    parse_error(std::size_t column, const std::string& expected)
        : std::runtime_error("column " + std::to_string(column) + ": expected " + expected),
          column_(column),
          expected_(expected) {}
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string& expected() const noexcept { return expected_; }

   private:
    std::size_t column_;
    std::string expected_;
};

inline constexpr unsigned long kMaxExponent = 1UL << 16U;

namespace detail {

class PolyParser {
   public:
    explicit PolyParser(std::string_view text, std::size_t offset = 0) : s_(text), offset_(offset) {}

    Poly parse_all() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("operator or end of input");
        return p;
    }

    // Used by the ring parser, which owns the surrounding text.
    Poly parse_prefix() { return expr(); }
    [[nodiscard]] std::size_t pos() const { return pos_; }

   private:
    [[noreturn]] void fail(const std::string& expected) const { throw parse_error(offset_ + pos_ + 1, expected); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    Integer integer(const char* what) {
        if (!at_digit()) fail(what);
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    Poly expr() {
        Poly acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Poly term() {
        Poly acc = unary();
        while (eat('*')) acc = acc * unary();
        return acc;
    }

    Poly unary() {
        if (eat('-')) return -unary();
        return power();
    }

    Poly power() {
        Poly base = atom();
        while (eat('^')) {
            skip_ws();
            const std::size_t at = pos_;
            Integer e = integer("integer exponent");
            if (e > kMaxExponent) throw parse_error(offset_ + at + 1, "exponent at most 65536");
            base = pow(base, e.get_ui());
        }
        return base;
    }

    Poly atom() {
        if (eat('(')) {
            Poly p = expr();
            if (!eat(')')) fail("')'");
            return p;
        }
        if (eat('x')) return Poly::x();
        if (at_digit()) {
            Integer num = integer("integer");
            Integer den = 1;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::size_t at = pos_;
                den = integer("denominator");
                if (den == 0) throw parse_error(offset_ + at + 1, "nonzero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            return Poly(q);
        }
        fail("number, 'x' or '('");
    }

    std::string_view s_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text) { return detail::PolyParser(text).parse_all(); }

/// "Q[x]" or "Q[x]/(<poly>)"; the modulus must be monic and nonconstant.
inline Ring parse_ring(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](std::string_view lit) {
        skip();
        if (text.substr(i, lit.size()) != lit) throw parse_error(i + 1, "'" + std::string(lit) + "'");
        i += lit.size();
    };
    expect("Q[x]");
    skip();
    if (i == text.size()) return Ring::base();
    expect("/");
    expect("(");
    detail::PolyParser p(text.substr(i), i);
    const std::size_t mod_col = i;
    Poly m = p.parse_prefix();
    i += p.pos();
    expect(")");
    skip();
    if (i != text.size()) throw parse_error(i + 1, "end of input");
    if (m.is_constant()) throw parse_error(mod_col + 1, "nonconstant modulus");
    if (m.lc() != 1) throw parse_error(mod_col + 1, "monic modulus");
    return Ring::quotient(m);
}

/// Canonical text: terms from the leading one down, e.g. "1/2*x^2 - 3".
/// parse_poly(to_string(p)) == p.
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        const bool neg = c[k] < 0;
        const Rational mag = neg ? Rational(-c[k]) : c[k];
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out;
}

inline std::string to_string(const Ring& r) {
    if (!r.is_quotient()) return "Q[x]";
    return "Q[x]/(" + to_string(r.modulus()) + ")";
}

inline std::string to_string(const RingElem& e) { return to_string(e.rep()); }

}  // namespace realspec
