#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "flatcert/algebra/polynomial.hpp"

namespace flatcert {

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := atom ['^' digits]
// atom   := digits ['/' digits] | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, VariableTablePtr vars, CoefficientDomain domain)
        : s_(text), vars_(std::move(vars)), domain_(domain)
    {
    }

    Polynomial parse()
    {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail_unexpected();
        return p;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail_unexpected()
    {
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
            throw ParseError("implicit multiplication is not allowed", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Polynomial expr()
    {
        Polynomial acc(vars_, domain_);
        bool first = true;
        while (true) {
            skip();
            bool negate = false;
            if (eat('-')) negate = true;
            else if (!eat('+') && !first) break;
            Polynomial t = term();
            acc = negate ? acc - t : acc + t;
            first = false;
        }
        return acc;
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor()
    {
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent", start);
            if (digits.size() > 3 || std::stoul(digits) > Monomial::kMaxExponent)
                throw ParseError("exponent too large", start);
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Polynomial atom()
    {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            std::string den = "1";
            std::size_t slash = pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                den = read_digits();
                if (den.empty()) throw ParseError("expected denominator", pos_);
            }
            Integer d(den);
            if (d == 0) throw ParseError("zero denominator", slash);
            Rational q(Integer(num), d);
            q.canonicalize();
            return Polynomial::constant(vars_, domain_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = vars_->lookup(name);
            if (!idx) throw ParseError("unknown variable '" + name + "'", start);
            return Polynomial::variable(vars_, domain_, *idx);
        }
        fail_unexpected();
    }

    std::string read_digits()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    VariableTablePtr vars_;
    CoefficientDomain domain_;
};

}  // namespace detail

inline Polynomial parse_poly(std::string_view text, const VariableTablePtr& vars,
                             CoefficientDomain domain = CoefficientDomain::rationals())
{
    return detail::PolyParser(text, vars, domain).parse();
}

inline std::string format_monomial(const Monomial& m, const VariableTable& vars, bool aliases = false)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!out.empty()) out += '*';
        auto alias = aliases ? vars.alias(i) : std::nullopt;
        out += alias ? *alias : vars.name(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

/// Canonical text form, e.g. "x11^2 - 1/2*x12*x13 + 3".
inline std::string format_poly(const Polynomial& f, bool aliases = false)
{
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coefficient;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        if (t.monomial.is_one()) {
            out += to_string(c);
        } else {
            if (c != 1) out += to_string(c) + "*";
            out += format_monomial(t.monomial, *f.vars(), aliases);
        }
    }
    return out;
}

}  // namespace flatcert
