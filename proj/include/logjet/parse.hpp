#pragma once

// Recursive-descent parser for the polynomial expression grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational | ident | '(' expr ')'
// rational := uint ('/' uint)?     ident := [a-zA-Z][a-zA-Z0-9_]*
// Whitespace is insignificant. The printer in poly.hpp emits this grammar.

#include "logjet/poly.hpp"

#include <cctype>
#include <string>

namespace logjet {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

namespace detail {

class ExprParser {
  public:
    ExprParser(const std::string& text, VarsPtr vars) : s_(text), vars_(std::move(vars)) {}

    Poly parse() {
        skip_ws();
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input at offset " + std::to_string(pos_));
        return p;
    }

  private:
    Poly expr() {
        Poly acc = signed_term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            Poly t = signed_term();
            acc = (c == '+') ? acc + t : acc - t;
        }
        return acc;
    }

    Poly signed_term() {
        bool neg = false;
        skip_ws();
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        Poly t = term();
        return neg ? -t : t;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            get();
            acc = acc * factor();
        }
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            unsigned long e = uint_lit();
            base = base.pow(e);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Poly p = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'");
            get();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = int_lit();
            skip_ws();
            if (peek() == '/') {
                get();
                skip_ws();
                BigInt den = int_lit();
                if (den == 0) throw ParseError("zero denominator in rational literal");
                return Poly(vars_, Rat(num, den));
            }
            return Poly(vars_, Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = ident();
            auto v = vars_->find(name);
            if (!v) throw ParseError("unknown variable '" + name + "'");
            return Poly::var(vars_, *v);
        }
        if (c == '\0') throw ParseError("unexpected end of input");
        throw ParseError(std::string("unexpected character '") + c + "'");
    }

    BigInt int_lit() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        if (digits.empty()) throw ParseError("expected integer");
        return BigInt(digits);
    }

    unsigned long uint_lit() {
        BigInt v = int_lit();
        if (!v.fits_ulong_p()) throw ParseError("exponent too large");
        return v.get_ui();
    }

    std::string ident() {
        std::string name;
        name += get();
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += get();
        return name;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    VarsPtr vars_;
    std::size_t pos_ = 0;
};

inline void collect_idents(const std::string& text, std::vector<std::string>& out) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string name = text.substr(i, j - i);
            bool seen = false;
            for (auto& n : out) seen = seen || n == name;
            if (!seen) out.push_back(name);
            i = j;
        } else {
            ++i;
        }
    }
}

}  // namespace detail

inline Poly parse_poly(const std::string& text, const VarsPtr& vars) {
    return detail::ExprParser(text, vars).parse();
}

// Builds a universe from the identifiers of several expressions (sorted by
// name so the universe does not depend on mention order), then parses each.
inline std::pair<VarsPtr, std::vector<Poly>> parse_polys_auto(
    const std::vector<std::string>& exprs) {
    std::vector<std::string> names;
    for (auto& e : exprs) detail::collect_idents(e, names);
    std::sort(names.begin(), names.end());
    VarsPtr vars = make_vars(names);
    std::vector<Poly> out;
    out.reserve(exprs.size());
    for (auto& e : exprs) out.push_back(parse_poly(e, vars));
    return {vars, out};
}

}  // namespace logjet
