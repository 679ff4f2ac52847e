#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "flatcert/algebra/rational.hpp"
#include "flatcert/error.hpp"

namespace flatcert {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Coefficient field: the rationals or a prime field F_p with p < 2^31.
class CoefficientDomain {
public:
    static CoefficientDomain rationals() { return CoefficientDomain(0); }

    static CoefficientDomain prime_field(std::uint32_t p)
    {
        if (p >= (1u << 31) || !is_prime(p))
            throw PreconditionViolation("characteristic " + std::to_string(p) + " is not a supported prime");
        return CoefficientDomain(p);
    }

    /// Accepts "Q" or "Fp:<p>".
    static CoefficientDomain parse(std::string_view text)
    {
        if (text == "Q" || text == "QQ") return rationals();
        if (text.substr(0, 3) == "Fp:") {
            std::string digits(text.substr(3));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
                throw ParseError("bad field '" + std::string(text) + "'", 3);
            return prime_field(static_cast<std::uint32_t>(std::stoull(digits)));
        }
        throw ParseError("unknown field '" + std::string(text) + "'", 0);
    }

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }

    std::string to_string() const { return is_rational() ? "Q" : "Fp:" + std::to_string(p_); }

    /// Brings a rational into canonical form for this domain (residue in [0, p) for F_p).
    Rational canonical(const Rational& q) const
    {
        if (is_rational()) return q;
        Integer p(p_);
        Integer den = q.get_den();
        Integer den_mod = den % p;
        if (den_mod == 0) throw DenominatorDivisibleByP("denominator " + den.get_str() + " vanishes mod " + p.get_str());
        Integer inv;
        mpz_invert(inv.get_mpz_t(), den_mod.get_mpz_t(), p.get_mpz_t());
        Integer r = (q.get_num() * inv) % p;
        if (r < 0) r += p;
        return Rational(r);
    }

    Rational inverse(const Rational& q) const
    {
        if (q == 0) throw PreconditionViolation("division by zero");
        if (is_rational()) return 1 / q;
        return canonical(Rational(Integer(1), q.get_num()));
    }

    friend bool operator==(const CoefficientDomain&, const CoefficientDomain&) = default;

private:
    explicit CoefficientDomain(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

}  // namespace flatcert
