#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "residuum/polynomial.hpp"

namespace residuum {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Grammar: expr := [sign] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := atom ['^' uint]
//          atom := number | 'i' | name | '(' expr ')'
//          number := uint ['/' uint] ['i']     (trailing i makes it imaginary)
// Whitespace is ignored; names must come from the supplied variable list.
class PolynomialParser {
  public:
    PolynomialParser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

  private:
    std::size_t n() const { return vars_.size(); }

    Polynomial expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        Polynomial acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Polynomial t = term();
                if (c == '+')
                    acc += t;
                else
                    acc -= t;
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                get();
                acc *= factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            std::size_t at = pos_;
            if (!std::isdigit(peek())) throw ParseError("expected exponent", at);
            unsigned long e = read_uint();
            base = base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Polynomial p = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            get();
            return p;
        }
        if (std::isdigit(c)) return number();
        if (std::isalpha(c) || c == '_') return name();
        throw ParseError("expected term", pos_);
    }

    Polynomial number() {
        mpz_class num = read_mpz();
        mpq_class q(num);
        skip_ws();
        if (peek() == '/') {
            get();
            skip_ws();
            if (!std::isdigit(peek())) throw ParseError("expected denominator", pos_);
            mpz_class den = read_mpz();
            if (den == 0) throw ParseError("zero denominator", pos_);
            q = mpq_class(num) / mpq_class(den);
        }
        if (peek() == 'i' && !is_name_char(peek_at(1))) {
            get();
            return Polynomial::constant(n(), GaussianRational(mpq_class(0), q));
        }
        return Polynomial::constant(n(), GaussianRational(q));
    }

    Polynomial name() {
        std::size_t at = pos_;
        std::string id;
        while (is_name_char(peek())) id += get();
        if (id == "i") return Polynomial::constant(n(), GaussianRational::i());
        for (std::size_t k = 0; k < vars_.size(); ++k)
            if (vars_[k] == id) return Polynomial::variable(n(), k);
        throw ParseError("unknown variable '" + id + "'", at);
    }

    static bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    mpz_class read_mpz() {
        std::string digits;
        while (std::isdigit(peek())) digits += get();
        return mpz_class(digits);
    }
    unsigned long read_uint() { return read_mpz().get_ui(); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char peek_at(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
    return PolynomialParser(text, vars).parse();
}

/// Canonical text form; parse(to_string(p)) == p.
inline std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
    if (vars.size() != p.nvars()) throw std::invalid_argument("variable name count mismatch");
    if (p.is_zero()) return "0";

    // highest total degree first, lexicographically largest exponent next
    std::vector<const std::pair<const Exponents, GaussianRational>*> terms;
    for (const auto& t : p.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
        auto da = total_degree(a->first), db = total_degree(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    std::string out;
    for (const auto* t : terms) {
        const auto& [e, c] = *t;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs;
        bool negjoin = false;
        if (c.is_real() || c.re() == 0) {
            GaussianRational a = c;
            std::string s = a.str();
            if (!s.empty() && s[0] == '-') {
                negjoin = true;
                s.erase(0, 1);
            }
            if (mono.empty())
                cs = s;
            else if (s == "1")
                cs = mono;
            else
                cs = s + "*" + mono;
        } else {
            cs = "(" + c.str() + ")";
            if (!mono.empty()) cs += "*" + mono;
        }
        if (out.empty())
            out = (negjoin ? "-" : "") + cs;
        else
            out += (negjoin ? " - " : " + ") + cs;
    }
    return out;
}

} // namespace residuum
