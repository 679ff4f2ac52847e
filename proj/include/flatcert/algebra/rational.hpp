#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "flatcert/error.hpp"

namespace flatcert {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(std::string_view text)
{
    auto valid = [](std::string_view s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
    Integer d(std::string(den[0] == '+' ? den.substr(1) : den));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::size_t bit_size(const Integer& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

inline std::size_t bit_size(const Rational& q) { return bit_size(q.get_num()) + bit_size(q.get_den()); }

}  // namespace flatcert
